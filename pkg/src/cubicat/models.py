"""Concrete finite models: cubical nerves of thin categories.

A cell of the ``n``-dimensional nerve of a preorder is a labeling of the
vertices of ``{0,1}^n`` by objects, monotone along every edge.  Vertices are
numbered in binary with ``t_1`` as the most significant bit, so for ``n = 2``
the order is ``00, 01, 10, 11``.  All structural maps are one-line formulas
on labelings, which makes these models usable as test oracles.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from string import ascii_lowercase

from .core import MINUS, PLUS, SIGNS, SingleSetStructure, StructureError, replace_tables
from .laws import validate

DEFAULT_CELL_BUDGET = 100_000
KINDS = ("pair_groupoid", "chain_poset", "discrete", "cyclic_group_thin")


class CellBudgetError(StructureError):
    pass


def cell_budget() -> int:
    return int(os.environ.get("CUBICAT_CELL_BUDGET", DEFAULT_CELL_BUDGET))


@dataclass(frozen=True)
class FiniteThinCategory:
    """A preorder: objects plus a reflexive, transitive arrow relation."""

    name: str
    objects: tuple
    arrows: frozenset

    def __post_init__(self):
        objs = set(self.objects)
        for a in self.objects:
            if (a, a) not in self.arrows:
                raise StructureError(f"arrow relation is not reflexive at {a!r}")
        for (a, b) in self.arrows:
            if a not in objs or b not in objs:
                raise StructureError(f"arrow {a!r}->{b!r} leaves the object set")
            for (c, d) in self.arrows:
                if b == c and (a, d) not in self.arrows:
                    raise StructureError(f"arrow relation is not transitive at {a!r}->{b!r}->{d!r}")

    @property
    def is_groupoid(self) -> bool:
        return all((b, a) in self.arrows for (a, b) in self.arrows)

    def arrow(self, a, b) -> bool:
        return (a, b) in self.arrows


def _letters(m):
    if m > len(ascii_lowercase):
        return tuple(f"o{k}" for k in range(m))
    return tuple(ascii_lowercase[:m])


def base_category(kind: str, m: int = 1) -> FiniteThinCategory:
    if kind not in KINDS:
        raise StructureError(f"unknown base kind {kind!r}; expected one of {', '.join(KINDS)}")
    if m < 1:
        raise StructureError("a base category needs at least one object")
    if kind == "pair_groupoid":
        objs = _letters(m)
        arrows = {(a, b) for a in objs for b in objs}
    elif kind == "chain_poset":
        objs = tuple(str(k) for k in range(m))
        arrows = {(objs[a], objs[b]) for a in range(m) for b in range(a, m)}
    elif kind == "discrete":
        objs = _letters(m)
        arrows = {(a, a) for a in objs}
    else:
        # only the one-object thin groupoid; m is ignored
        objs = ("*",)
        arrows = {("*", "*")}
    return FiniteThinCategory(f"{kind}({m})", objs, frozenset(arrows))


def parse_base(spec: str) -> FiniteThinCategory:
    """``pair_groupoid:2`` and friends."""
    kind, _, m = spec.partition(":")
    try:
        return base_category(kind, int(m) if m else 1)
    except ValueError as exc:
        raise StructureError(f"bad base specification {spec!r}: {exc}") from None


# -- vertex arithmetic ------------------------------------------------------

def vertex_bits(v: int, n: int) -> tuple:
    """Coordinates ``(t_1, ..., t_n)`` of vertex number ``v``."""
    return tuple((v >> (n - k)) & 1 for k in range(1, n + 1))


def vertex_index(bits) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | b
    return v


def _set_coord(bits, i, value):
    return bits[:i - 1] + (value,) + bits[i:]


def _reindex(n, f):
    """Precompute vertex ``v -> vertex_index(f(bits(v)))``."""
    return tuple(vertex_index(f(vertex_bits(v, n))) for v in range(2 ** n))


def nerve_face(n, i, sign):
    a = 0 if sign == MINUS else 1
    return _reindex(n, lambda t: _set_coord(t, i, a))


def nerve_swap(n, i):
    return _reindex(n, lambda t: t[:i - 1] + (t[i], t[i - 1]) + t[i + 1:])


def nerve_connection(n, i, sign):
    pick = min if sign == PLUS else max
    return _reindex(n, lambda t: _set_coord(t, i + 1, pick(t[i - 1], t[i])))


def pull(labeling, reindex):
    return tuple(labeling[r] for r in reindex)


def paste(n, i, x, y):
    """Labeling equal to ``x`` where ``t_i = 0`` and to ``y`` where ``t_i = 1``."""
    return tuple(x[v] if vertex_bits(v, n)[i - 1] == 0 else y[v] for v in range(2 ** n))


def monotone_labelings(B: FiniteThinCategory, n: int) -> list:
    verts = [vertex_bits(v, n) for v in range(2 ** n)]
    edges = [(v, vertex_index(_set_coord(t, k, 1)))
             for v, t in enumerate(verts) for k in range(1, n + 1) if t[k - 1] == 0]
    return [lab for lab in product(B.objects, repeat=2 ** n)
            if all(B.arrow(lab[u], lab[w]) for u, w in edges)]


# -- nerve ------------------------------------------------------------------

@lru_cache(maxsize=None)
def cube_nerve(B: FiniteThinCategory, n: int, with_connections: bool = True) -> SingleSetStructure:
    """The ``n``-cubical nerve of ``B``, validated against every law suite."""
    if n < 1:
        raise StructureError("nerve dimension must be >= 1")
    candidates = len(B.objects) ** (2 ** n)
    budget = cell_budget()
    if candidates > budget:
        raise CellBudgetError(f"{B.name} at n={n} has {candidates} candidate labelings, budget {budget}")
    cells = monotone_labelings(B, n)
    index = {lab: k for k, lab in enumerate(cells)}

    def table(reindex):
        return [index[pull(lab, reindex)] for lab in cells]

    face = {(i, a): table(nerve_face(n, i, a)) for i in range(1, n + 1) for a in SIGNS}
    sym = {i: table(nerve_swap(n, i)) for i in range(1, n)}
    conn = None
    if with_connections:
        conn = {(i, a): table(nerve_connection(n, i, a)) for i in range(1, n) for a in SIGNS}
    comp = {}
    for i in range(1, n + 1):
        by_lower = {}
        for y in range(len(cells)):
            by_lower.setdefault(face[(i, MINUS)][y], []).append(y)
        entries = {}
        for x, lab in enumerate(cells):
            for y in by_lower.get(face[(i, PLUS)][x], ()):
                entries[(x, y)] = index[paste(n, i, lab, cells[y])]
        comp[i] = entries

    S = SingleSetStructure(
        labels=tuple(",".join(lab) for lab in cells), dim=n, face=face, comp=comp,
        sym=sym, inv_sym=dict(sym), conn=conn,
        meta={"model": "nerve", "base": B.name, "dim": n, "connections": with_connections},
    )
    return validate(S)


def terminal(n: int, with_connections: bool = True) -> SingleSetStructure:
    """One cell ``*`` with every map the identity."""
    face = {(i, a): [0] for i in range(1, n + 1) for a in SIGNS}
    sym = {i: [0] for i in range(1, n)}
    conn = {(i, a): [0] for i in range(1, n) for a in SIGNS} if with_connections else None
    S = SingleSetStructure(
        labels=("*",), dim=n, face=face, comp={i: {(0, 0): 0} for i in range(1, n + 1)},
        sym=sym, inv_sym=dict(sym), conn=conn, meta={"model": "terminal", "dim": n},
    )
    return validate(S)


def standard_fixtures() -> dict:
    """The model suite used across tests and demos."""
    return {
        "pair_groupoid(2) n=2": cube_nerve(base_category("pair_groupoid", 2), 2),
        "pair_groupoid(2) n=3": cube_nerve(base_category("pair_groupoid", 2), 3),
        "discrete(2) n=2": cube_nerve(base_category("discrete", 2), 2),
        "chain_poset(2) n=2": cube_nerve(base_category("chain_poset", 2), 2),
        "terminal n=2": terminal(2),
    }


# -- mutation ---------------------------------------------------------------

def table_locations(S: SingleSetStructure) -> list:
    """Every addressable table entry, in a canonical order.

    A location is ``(table, key, slot)``: ``("face", (i, sign), x)``,
    ``("comp", i, (x, y))``, ``("sym", i, x)``, ``("inv_sym", i, x)`` or
    ``("conn", (i, sign), x)``.
    """
    locs = []
    for key in sorted(S.face):
        locs += [("face", key, x) for x in S.cells]
    for i in sorted(S.comp):
        locs += [("comp", i, pair) for pair in sorted(S.comp[i])]
    for name in ("sym", "inv_sym"):
        for i in sorted(getattr(S, name)):
            locs += [(name, i, x) for x in S.cells]
    if S.has_connections:
        for key in sorted(S.conn):
            locs += [("conn", key, x) for x in S.cells]
    return locs


def read_location(S: SingleSetStructure, location):
    table, key, slot = location
    tables = getattr(S, table, None)
    if tables is None or key not in tables:
        raise StructureError(f"no table {table}[{key!r}]")
    row = tables[key]
    if table == "comp":
        if slot not in row:
            raise StructureError(f"comp[{key}] has no entry at {slot!r}")
    elif not (isinstance(slot, int) and 0 <= slot < len(S)):
        raise StructureError(f"{table}[{key!r}] has no slot {slot!r}")
    return row[slot]


def mutate(S: SingleSetStructure, location, value: int) -> SingleSetStructure:
    """Unvalidated copy of ``S`` differing at most in one table entry."""
    read_location(S, location)
    if not (isinstance(value, int) and 0 <= value < len(S)):
        raise StructureError(f"mutation value {value!r} is not a cell")
    table, key, slot = location
    tables = {k: (dict(v) if table == "comp" else list(v)) for k, v in getattr(S, table).items()}
    tables[key][slot] = value
    return replace_tables(S, **{table: tables})


def typed_locations(S: SingleSetStructure) -> list:
    """Locations the axioms constrain.

    Symmetries and connections are only typed on part of the carrier:
    ``sym[i]`` and ``conn[i, *]`` on cells fixed in direction ``i``,
    ``inv_sym[i]`` on cells fixed in direction ``i + 1``.  Entries elsewhere
    are free, so changing them cannot be detected.
    """
    def typed(loc):
        table, key, x = loc
        if table in ("sym", "conn"):
            i = key if table == "sym" else key[0]
            return S.fixed(i, x)
        if table == "inv_sym":
            return S.fixed(key + 1, x)
        return True
    return [loc for loc in table_locations(S) if typed(loc)]


def random_mutation(S: SingleSetStructure, rng: random.Random):
    """A typed location and a value different from the current entry there."""
    if len(S) < 2:
        raise StructureError("a structure with one cell has no mutations")
    locs = typed_locations(S)
    while True:
        loc = rng.choice(locs)
        current = read_location(S, loc)
        choices = [c for c in S.cells if c != current]
        if choices:
            return loc, rng.choice(choices)
