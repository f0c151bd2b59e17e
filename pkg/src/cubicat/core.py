"""Finite single-set cubical n-categories.

A structure is a finite carrier of cells (integer ordinals ``0..N-1`` with
string labels) together with extensional tables:

* ``face[(i, sign)]``  -- total map, the face in direction ``i``;
* ``comp[i]``          -- partial map ``(x, y) -> z``, composition in direction ``i``;
* ``sym[i]``, ``inv_sym[i]`` -- total maps, symmetries and reverse symmetries;
* ``conn[(i, sign)]``  -- optional total maps, connections.

Directions run over ``1..dim`` for faces and compositions and over
``1..dim-1`` for symmetries and connections.  Nothing here assumes the
axioms hold; use :mod:`cubicat.laws` to check them.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

MINUS, PLUS = "-", "+"
SIGNS = (MINUS, PLUS)

CellId = int


class StructureError(ValueError):
    """A table is malformed, or an index is out of range."""


def neg(sign: str) -> str:
    return PLUS if sign == MINUS else MINUS


def check_sign(sign: str) -> str:
    if sign not in SIGNS:
        raise StructureError(f"sign must be '-' or '+', got {sign!r}")
    return sign


class Generator(NamedTuple):
    """A structural map of a single-set structure.

    ``kind`` is one of ``face``, ``sym``, ``inv_sym``, ``conn``.
    """

    kind: str
    index: int
    sign: Optional[str] = None

    def __str__(self):
        tag = {"face": "d", "sym": "s", "inv_sym": "s~", "conn": "g"}[self.kind]
        return f"{tag}{self.index}{self.sign or ''}"

    @classmethod
    def parse(cls, token: str) -> "Generator":
        """Parse ``d1-``, ``s2``, ``s~1``, ``g1+``."""
        tok = token.strip()
        for prefix, kind, signed in (("s~", "inv_sym", False), ("d", "face", True),
                                     ("s", "sym", False), ("g", "conn", True)):
            if tok.startswith(prefix):
                body = tok[len(prefix):]
                sign = None
                if signed:
                    if not body or body[-1] not in SIGNS:
                        raise StructureError(f"generator {token!r} needs a trailing sign")
                    body, sign = body[:-1], body[-1]
                if not body.isdigit():
                    raise StructureError(f"bad generator index in {token!r}")
                return cls(kind, int(body), sign)
        raise StructureError(f"unknown generator {token!r}")


@dataclass(frozen=True, eq=False)
class SingleSetStructure:
    labels: tuple
    dim: int
    face: Mapping
    comp: Mapping
    sym: Mapping
    inv_sym: Mapping
    conn: Optional[Mapping] = None
    validated: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        n, size = self.dim, len(self.labels)
        if n < 0:
            raise StructureError("dim must be >= 0")
        if len(set(self.labels)) != size:
            raise StructureError("cell labels must be unique")
        object.__setattr__(self, "labels", tuple(self.labels))

        def total(table, name, key):
            if key not in table:
                raise StructureError(f"missing {name} table for {key}")
            row = tuple(table[key])
            if len(row) != size:
                raise StructureError(f"{name}{key} has {len(row)} entries, expected {size}")
            for v in row:
                if not (isinstance(v, int) and 0 <= v < size):
                    raise StructureError(f"{name}{key} references unknown cell {v!r}")
            return row

        face = {(i, a): total(self.face, "face", (i, a)) for i in range(1, n + 1) for a in SIGNS}
        sym = {i: total(self.sym, "sym", i) for i in range(1, n)}
        inv_sym = {i: total(self.inv_sym, "inv_sym", i) for i in range(1, n)}
        comp = {}
        for i in range(1, n + 1):
            table = dict(self.comp.get(i, {}))
            for (x, y), z in table.items():
                for v in (x, y, z):
                    if not (isinstance(v, int) and 0 <= v < size):
                        raise StructureError(f"comp[{i}] references unknown cell {v!r}")
            comp[i] = table
        conn = None
        if self.conn is not None:
            conn = {(i, a): total(self.conn, "conn", (i, a)) for i in range(1, n) for a in SIGNS}
        object.__setattr__(self, "face", face)
        object.__setattr__(self, "sym", sym)
        object.__setattr__(self, "inv_sym", inv_sym)
        object.__setattr__(self, "comp", comp)
        object.__setattr__(self, "conn", conn)

    # -- basic accessors (hot paths in the law checkers; no range checks) --

    @property
    def cells(self) -> range:
        return range(len(self.labels))

    def __len__(self):
        return len(self.labels)

    @property
    def has_connections(self) -> bool:
        return self.conn is not None

    def d(self, i: int, sign: str, x: CellId) -> CellId:
        return self.face[(i, sign)][x]

    def c(self, i: int, x, y):
        """Composite ``x o_i y`` or ``None``; propagates ``None`` arguments."""
        if x is None or y is None:
            return None
        return self.comp[i].get((x, y))

    def s(self, i: int, x: CellId) -> CellId:
        return self.sym[i][x]

    def t(self, i: int, x: CellId) -> CellId:
        return self.inv_sym[i][x]

    def g(self, i: int, sign: str, x: CellId) -> CellId:
        return self.conn[(i, sign)][x]

    def fixed(self, i: int, x: CellId) -> bool:
        return self.face[(i, MINUS)][x] == x

    def index(self, label) -> CellId:
        """Ordinal of a cell given its label (a tuple label is comma-joined)."""
        if isinstance(label, (tuple, list)):
            label = ",".join(str(v) for v in label)
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown cell {label!r}") from None

    def label(self, x: CellId) -> str:
        return self.labels[x]

    @cached_property
    def _label_index(self):
        return {lab: k for k, lab in enumerate(self.labels)}

    @cached_property
    def right_partners(self):
        """``right_partners[i][x]``: the y with ``x o_i y`` defined, ascending."""
        out = {}
        for i, table in self.comp.items():
            rows = [[] for _ in self.cells]
            for (x, y) in table:
                rows[x].append(y)
            out[i] = [sorted(r) for r in rows]
        return out

    @cached_property
    def left_partners(self):
        out = {}
        for i, table in self.comp.items():
            rows = [[] for _ in self.cells]
            for (x, y) in table:
                rows[y].append(x)
            out[i] = [sorted(r) for r in rows]
        return out

    def __repr__(self):
        return (f"SingleSetStructure(cells={len(self)}, dim={self.dim}, "
                f"connections={self.has_connections}, validated={self.validated})")


def same_tables(a: SingleSetStructure, b: SingleSetStructure) -> bool:
    """Equality of carriers and every table, ignoring ``validated`` and ``meta``."""
    return (a.labels == b.labels and a.dim == b.dim and a.face == b.face
            and a.comp == b.comp and a.sym == b.sym and a.inv_sym == b.inv_sym
            and a.conn == b.conn)


def _check_direction(S: SingleSetStructure, i: int, upper: int, what: str):
    if not (isinstance(i, int) and 1 <= i <= upper):
        raise StructureError(f"{what} index {i} out of range 1..{upper} (dim={S.dim})")


def _check_cell(S: SingleSetStructure, x) -> None:
    if not (isinstance(x, int) and 0 <= x < len(S)):
        raise StructureError(f"unknown cell ordinal {x!r}")


def apply_generator(S: SingleSetStructure, g, x: CellId) -> CellId:
    """Apply one structural map (face, symmetry, reverse symmetry, connection)."""
    if isinstance(g, str):
        g = Generator.parse(g)
    _check_cell(S, x)
    if g.kind == "face":
        _check_direction(S, g.index, S.dim, "face")
        return S.d(g.index, check_sign(g.sign), x)
    if g.kind in ("sym", "inv_sym"):
        _check_direction(S, g.index, S.dim - 1, g.kind)
        return S.s(g.index, x) if g.kind == "sym" else S.t(g.index, x)
    if g.kind == "conn":
        if not S.has_connections:
            raise StructureError("structure has no connections")
        _check_direction(S, g.index, S.dim - 1, "conn")
        return S.g(g.index, check_sign(g.sign), x)
    raise StructureError(f"unknown generator kind {g.kind!r}")


def apply_word(S: SingleSetStructure, word: Sequence, x: CellId) -> CellId:
    """Apply generators rightmost first, as in ``s_2 s_1 d_1^- x``."""
    for g in reversed(list(word)):
        x = apply_generator(S, g, x)
    return x


def composable(S: SingleSetStructure, i: int, x: CellId, y: CellId) -> bool:
    _check_direction(S, i, S.dim, "composition")
    return S.d(i, PLUS, x) == S.d(i, MINUS, y)


def comp(S: SingleSetStructure, i: int, x: CellId, y: CellId) -> Optional[CellId]:
    """``x o_i y`` when the pair is composable, else ``None``."""
    if not composable(S, i, x, y):
        return None
    return S.comp[i].get((x, y))


def is_fixed(S: SingleSetStructure, i: int, x: CellId) -> bool:
    _check_direction(S, i, S.dim, "face")
    return S.fixed(i, x)


def _directions(S: SingleSetStructure, I: Iterable[int]) -> frozenset:
    I = frozenset(I)
    for i in I:
        _check_direction(S, i, S.dim, "direction set")
    return I


def fixed_set(S: SingleSetStructure, I: Iterable[int] = ()) -> frozenset:
    """Cells fixed by the faces in every direction of ``I``."""
    I = _directions(S, I)
    return frozenset(x for x in S.cells if all(S.fixed(i, x) for i in I))


def upper_fixed(S: SingleSetStructure, k: int) -> list:
    """Cells of level at most ``k``: fixed in directions ``k+1..dim``, ascending."""
    return [x for x in S.cells if all(S.fixed(i, x) for i in range(k + 1, S.dim + 1))]


def dimension(S: SingleSetStructure, x: CellId) -> int:
    """Number of directions in which ``x`` is not fixed."""
    _check_cell(S, x)
    return sum(1 for i in range(1, S.dim + 1) if not S.fixed(i, x))


def level(S: SingleSetStructure, x: CellId) -> int:
    """Least ``k`` with ``x`` fixed in every direction above ``k``."""
    for k in range(S.dim, 0, -1):
        if not S.fixed(k, x):
            return k
    return 0


def fixed_point_lattice(S: SingleSetStructure):
    """All ``S^I`` for ``I`` a subset of ``1..dim``.

    Returns ``(nodes, edges)`` where ``nodes`` maps each direction set (a sorted
    tuple) to its fixed set and ``edges`` lists covering inclusions
    ``(I + {j}, I)`` meaning ``S^(I+{j})`` is contained in ``S^I``.
    """
    dirs = range(1, S.dim + 1)
    nodes = {}
    for r in range(S.dim + 1):
        for I in combinations(dirs, r):
            nodes[I] = fixed_set(S, I)
    edges = []
    for I in nodes:
        for j in dirs:
            if j not in I:
                edges.append((tuple(sorted(I + (j,))), I))
    edges.sort(key=lambda e: (len(e[1]), e[1], e[0]))
    return nodes, edges


def inverse_witnesses(S: SingleSetStructure, i: int, x: CellId, candidates=None) -> list:
    """Every ``y`` that is a two-sided inverse of ``x`` for ``o_i``."""
    lo, hi = S.d(i, MINUS, x), S.d(i, PLUS, x)
    table = S.comp[i]
    found = []
    for y in (S.cells if candidates is None else candidates):
        if table.get((x, y)) == lo and table.get((y, x)) == hi:
            found.append(y)
    return found


def truncate(S: SingleSetStructure, m: int) -> SingleSetStructure:
    """Forget the structure above dimension ``m``."""
    if not (0 <= m <= S.dim):
        raise StructureError(f"truncation level {m} out of range 0..{S.dim}")
    keep = upper_fixed(S, m)
    new = {x: k for k, x in enumerate(keep)}

    def remap(row, name):
        out = []
        for x in keep:
            if row[x] not in new:
                raise StructureError(f"{name} leaves the truncated carrier at {S.label(x)}")
            out.append(new[row[x]])
        return out

    face = {(i, a): remap(S.face[(i, a)], f"face{(i, a)}") for i in range(1, m + 1) for a in SIGNS}
    sym = {i: remap(S.sym[i], f"sym{i}") for i in range(1, m)}
    inv_sym = {i: remap(S.inv_sym[i], f"inv_sym{i}") for i in range(1, m)}
    conn = None
    if S.has_connections:
        conn = {(i, a): remap(S.conn[(i, a)], f"conn{(i, a)}") for i in range(1, m) for a in SIGNS}
    comp_ = {}
    for i in range(1, m + 1):
        table = {}
        for (x, y), z in S.comp[i].items():
            if x in new and y in new:
                if z not in new:
                    raise StructureError(f"comp[{i}] leaves the truncated carrier")
                table[(new[x], new[y])] = new[z]
        comp_[i] = table
    return SingleSetStructure(
        labels=tuple(S.labels[x] for x in keep), dim=m, face=face, comp=comp_,
        sym=sym, inv_sym=inv_sym, conn=conn, validated=S.validated,
        meta={**S.meta, "truncated_to": m},
    )


def replace_tables(S: SingleSetStructure, **changes) -> SingleSetStructure:
    """Copy with some tables replaced; the copy is never marked validated."""
    changes.setdefault("validated", False)
    return dataclasses.replace(S, **changes)
