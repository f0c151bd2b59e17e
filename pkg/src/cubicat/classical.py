"""Classical (graded) cubical n-categories with connections.

Cells live in levels ``C_0 .. C_N``; within a level they are integer
ordinals, and across the public API a cell is a ``GCell(level, index)`` so
that a level-k index can never be mistaken for a level-(k-1) one.

Tables (keys are tuples, rows are lists indexed by cell ordinal):

* ``cface[(k, i, sign)]``: C_k -> C_{k-1}, for 1 <= i <= k
* ``deg[(k, i)]``:         C_{k-1} -> C_k, for 1 <= i <= k
* ``ccomp[(k, i)]``:       partial C_k x C_k -> C_k, as a dict
* ``cconn[(k, i, sign)]``: C_{k-1} -> C_k, for 1 <= i < k (optional)
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

from .core import MINUS, PLUS, SIGNS, StructureError
from .laws import AXIOM, CheckReport, Law, run_laws


class GCell(NamedTuple):
    level: int
    index: int


@dataclass(frozen=True, eq=False)
class ClassicalStructure:
    cells: tuple  # cells[k] = labels of C_k
    cface: dict
    deg: dict
    ccomp: dict
    cconn: Optional[dict] = None
    validated: bool = False
    meta: dict = field(default_factory=dict)
    raw: bool = False

    def __post_init__(self):
        cells = tuple(tuple(level) for level in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise StructureError("a classical structure needs at least level 0")
        N = len(cells) - 1

        def row(table, name, key, src, dst):
            if key not in table:
                raise StructureError(f"missing {name} table for {key}")
            r = list(table[key])
            if len(r) != len(cells[src]):
                raise StructureError(f"{name}{key} has {len(r)} entries, expected {len(cells[src])}")
            for v in r:
                if not (isinstance(v, int) and 0 <= v < len(cells[dst])):
                    raise StructureError(f"{name}{key} references unknown level-{dst} cell {v!r}")
            return r

        cface = {(k, i, a): row(self.cface, "cface", (k, i, a), k, k - 1)
                 for k in range(1, N + 1) for i in range(1, k + 1) for a in SIGNS}
        deg = {(k, i): row(self.deg, "deg", (k, i), k - 1, k)
               for k in range(1, N + 1) for i in range(1, k + 1)}
        ccomp = {}
        for k in range(1, N + 1):
            for i in range(1, k + 1):
                table = dict(self.ccomp.get((k, i), {}))
                for key, v in table.items():
                    for w in (*key, v):
                        if not (isinstance(w, int) and 0 <= w < len(cells[k])):
                            raise StructureError(f"ccomp{(k, i)} references unknown cell {w!r}")
                ccomp[(k, i)] = table
        cconn = None
        if self.cconn is not None:
            cconn = {(k, i, a): row(self.cconn, "cconn", (k, i, a), k - 1, k)
                     for k in range(2, N + 1) for i in range(1, k) for a in SIGNS}
        for name, value in (("cface", cface), ("deg", deg), ("ccomp", ccomp), ("cconn", cconn)):
            object.__setattr__(self, name, value)
        if not self.raw:
            for key, r in deg.items():
                if len(set(r)) != len(r):
                    raise StructureError(f"degeneracy deg{key} is not injective")

    @property
    def top(self) -> int:
        return len(self.cells) - 1

    @property
    def has_connections(self) -> bool:
        return self.cconn is not None

    def size(self, k: int) -> int:
        return len(self.cells[k])

    def level_cells(self, k: int) -> range:
        return range(len(self.cells[k]))

    def label(self, c: GCell) -> str:
        return f"{c.level}:{self.cells[c.level][c.index]}"

    def index(self, k: int, label: str) -> int:
        try:
            return self._label_index[k][label]
        except KeyError:
            raise KeyError(f"unknown level-{k} cell {label!r}") from None

    @cached_property
    def _label_index(self):
        return [{lab: n for n, lab in enumerate(level)} for level in self.cells]

    @cached_property
    def right_partners(self):
        out = {}
        for key, table in self.ccomp.items():
            rows = [[] for _ in self.cells[key[0]]]
            for (a, b) in table:
                rows[a].append(b)
            out[key] = [sorted(r) for r in rows]
        return out

    @cached_property
    def left_partners(self):
        out = {}
        for key, table in self.ccomp.items():
            rows = [[] for _ in self.cells[key[0]]]
            for (a, b) in table:
                rows[b].append(a)
            out[key] = [sorted(r) for r in rows]
        return out

    # short accessors used by the law predicates
    def f(self, k, i, a, x):
        return self.cface[(k, i, a)][x]

    def e(self, k, i, x):
        return self.deg[(k, i)][x]

    def m(self, k, i, x, y):
        if x is None or y is None:
            return None
        return self.ccomp[(k, i)].get((x, y))

    def G(self, k, i, a, x):
        return self.cconn[(k, i, a)][x]

    def __repr__(self):
        sizes = [len(level) for level in self.cells]
        return (f"ClassicalStructure(levels={sizes}, connections={self.has_connections}, "
                f"validated={self.validated})")


def same_classical_tables(a: ClassicalStructure, b: ClassicalStructure) -> bool:
    return (a.cells == b.cells and a.cface == b.cface and a.deg == b.deg
            and a.ccomp == b.ccomp and a.cconn == b.cconn)


# -- laws ---------------------------------------------------------------------

CLASSICAL_LAWS: dict = {}


def claw(id, instances, needs_connections=False):
    """Register a law whose instances carry GCells and whose predicate takes ordinals."""

    def register(pred):
        def holds(C, *cells, **params):
            return pred(C, *(c.index for c in cells), **params)

        CLASSICAL_LAWS[id] = Law(id, "classical", instances, holds, AXIOM, needs_connections)
        return pred

    return register


def _levels(C, lo=1, hi_offset=0):
    return range(lo, C.top + 1 - hi_offset)


def _g(k, xs):
    return tuple(GCell(k, x) for x in xs)


def _assoc(C):
    for k in _levels(C):
        for i in range(1, k + 1):
            key = (k, i)
            table, right, left = C.ccomp[key], C.right_partners[key], C.left_partners[key]
            seen = set()
            for (a, b), ab in table.items():
                seen.update((a, b, c) for c in right[ab])
            for (b, c), bc in table.items():
                seen.update((a, b, c) for a in left[bc])
            for t in sorted(seen):
                yield _g(k, t), {"n": k, "i": i}


@claw("CC.i-assoc", _assoc)
def _(C, a, b, c, n, i):
    return C.m(n, i, C.m(n, i, a, b), c) == C.m(n, i, a, C.m(n, i, b, c))


def _each_cell(C, extra=lambda k: [{}]):
    for k in _levels(C):
        for i in range(1, k + 1):
            for params in extra(k):
                for a in C.level_cells(k):
                    yield (GCell(k, a),), {"n": k, "i": i, **params}


@claw("CC.ii-unit", lambda C: _each_cell(C))
def _(C, a, n, i):
    right = C.m(n, i, a, C.e(n, i, C.f(n, i, PLUS, a)))
    left = C.m(n, i, C.e(n, i, C.f(n, i, MINUS, a)), a)
    return right == a and left == a


def _locality(C):
    for k in _levels(C):
        for i in range(1, k + 1):
            by_lower = {}
            for b in C.level_cells(k):
                by_lower.setdefault(C.f(k, i, MINUS, b), []).append(b)
            pairs = set(C.ccomp[(k, i)])
            for a in C.level_cells(k):
                pairs.update((a, b) for b in by_lower.get(C.f(k, i, PLUS, a), ()))
            for p in sorted(pairs):
                yield _g(k, p), {"n": k, "i": i}


@claw("CC.locality", _locality)
def _(C, a, b, n, i):
    return ((a, b) in C.ccomp[(n, i)]) == (C.f(n, i, PLUS, a) == C.f(n, i, MINUS, b))


@claw("CC.iii-face-face", lambda C: (((GCell(n, a),), {"n": n, "i": i, "j": j, "a": al, "b": be})
                                     for n in _levels(C, 2) for j in range(1, n + 1) for i in range(1, j)
                                     for al in SIGNS for be in SIGNS for a in C.level_cells(n)))
def _(C, x, n, i, j, a, b):
    return C.f(n - 1, i, a, C.f(n, j, b, x)) == C.f(n - 1, j - 1, b, C.f(n, i, a, x))


def _comp_pairs(C, n, j):
    return [_g(n, p) for p in sorted(C.ccomp[(n, j)])]


@claw("CC.iv-face-comp", lambda C: ((p, {"n": n, "i": i, "j": j, "a": al})
                                    for n in _levels(C) for j in range(1, n + 1) for i in range(1, n + 1)
                                    for al in SIGNS for p in _comp_pairs(C, n, j)))
def _(C, x, y, n, i, j, a):
    lhs = C.f(n, i, a, C.m(n, j, x, y))
    if i < j:
        return lhs == C.m(n - 1, j - 1, C.f(n, i, a, x), C.f(n, i, a, y))
    if i > j:
        return lhs == C.m(n - 1, j, C.f(n, i, a, x), C.f(n, i, a, y))
    return lhs == (C.f(n, i, MINUS, x) if a == MINUS else C.f(n, i, PLUS, y))


def _interchange(C):
    for n in _levels(C):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                ri, rj = C.right_partners[(n, i)], C.right_partners[(n, j)]
                for a in C.level_cells(n):
                    for b in ri[a]:
                        bs = set(rj[b])
                        for c in rj[a]:
                            for d in ri[c]:
                                if d in bs:
                                    yield _g(n, (a, b, c, d)), {"n": n, "i": i, "j": j}


@claw("CC.v-interchange", _interchange)
def _(C, a, b, c, d, n, i, j):
    lhs = C.m(n, j, C.m(n, i, a, b), C.m(n, i, c, d))
    return lhs is not None and lhs == C.m(n, i, C.m(n, j, a, c), C.m(n, j, b, d))


@claw("CC.vi-face-deg", lambda C: (((GCell(n - 1, x),), {"n": n, "i": i, "j": j, "a": al})
                                   for n in _levels(C) for i in range(1, n + 1) for j in range(1, n + 1)
                                   for al in SIGNS for x in C.level_cells(n - 1)))
def _(C, x, n, i, j, a):
    lhs = C.f(n, i, a, C.e(n, j, x))
    if i < j:
        return lhs == C.e(n - 1, j - 1, C.f(n - 1, i, a, x))
    if i > j:
        return lhs == C.e(n - 1, j, C.f(n - 1, i - 1, a, x))
    return lhs == x


@claw("CC.vii-deg-comp", lambda C: ((p, {"n": n, "i": i, "j": j})
                                    for n in _levels(C, 1, 1) for j in range(1, n + 1) for i in range(1, n + 2)
                                    for p in _comp_pairs(C, n, j)))
def _(C, x, y, n, i, j):
    lhs = C.e(n + 1, i, C.m(n, j, x, y))
    jj = j + 1 if i <= j else j
    return lhs == C.m(n + 1, jj, C.e(n + 1, i, x), C.e(n + 1, i, y))


@claw("CC.viii-deg-deg", lambda C: (((GCell(n - 1, x),), {"n": n, "i": i, "j": j})
                                    for n in _levels(C, 1, 1) for j in range(1, n + 1) for i in range(1, j + 1)
                                    for x in C.level_cells(n - 1)))
def _(C, x, n, i, j):
    return C.e(n + 1, i, C.e(n, j, x)) == C.e(n + 1, j + 1, C.e(n, i, x))


# connections

@claw("CCG.i-face-conn", lambda C: (((GCell(n - 1, x),), {"n": n, "i": i, "j": j, "a": al, "b": be})
                                    for n in _levels(C, 2) for j in range(1, n) for i in range(1, n + 1)
                                    for al in SIGNS for be in SIGNS for x in C.level_cells(n - 1)),
      needs_connections=True)
def _(C, x, n, i, j, a, b):
    lhs = C.f(n, i, a, C.G(n, j, b, x))
    if i < j:
        return lhs == C.G(n - 1, j - 1, b, C.f(n - 1, i, a, x))
    if i > j + 1:
        return lhs == C.G(n - 1, j, b, C.f(n - 1, i - 1, a, x))
    if a == b:
        return lhs == x
    return lhs == C.e(n - 1, j, C.f(n - 1, j, a, x))


@claw("CCG.ii-conn-comp", lambda C: ((p, {"n": n, "i": i, "j": j, "a": al})
                                     for n in _levels(C, 1, 1) for j in range(1, n + 1) for i in range(1, n + 1)
                                     for al in SIGNS for p in _comp_pairs(C, n, j)),
      needs_connections=True)
def _(C, x, y, n, i, j, a):
    N, m, e, G = n + 1, C.m, C.e, C.G
    lhs = G(N, i, a, m(n, j, x, y))
    if i < j:
        rhs = m(N, j + 1, G(N, i, a, x), G(N, i, a, y))
    elif i > j:
        rhs = m(N, j, G(N, i, a, x), G(N, i, a, y))
    elif a == MINUS:
        rhs = m(N, i + 1, m(N, i, G(N, i, MINUS, x), e(N, i + 1, y)),
                m(N, i, e(N, i, y), G(N, i, MINUS, y)))
    else:
        rhs = m(N, i + 1, m(N, i, G(N, i, PLUS, x), e(N, i, x)),
                m(N, i, e(N, i + 1, x), G(N, i, PLUS, y)))
    return rhs is not None and lhs == rhs


@claw("CCG.iii-zigzag", lambda C: (((GCell(n - 1, x),), {"n": n, "i": i})
                                   for n in _levels(C, 2) for i in range(1, n) for x in C.level_cells(n - 1)),
      needs_connections=True)
def _(C, x, n, i):
    up, down = C.G(n, i, PLUS, x), C.G(n, i, MINUS, x)
    return C.m(n, i, up, down) == C.e(n, i + 1, x) and C.m(n, i + 1, up, down) == C.e(n, i, x)


@claw("CCG.iv-conn-deg", lambda C: (((GCell(n - 1, x),), {"n": n, "i": i, "j": j, "a": al})
                                    for n in _levels(C, 1, 1) for i in range(1, n + 1) for j in range(1, n + 1)
                                    for al in SIGNS for x in C.level_cells(n - 1)),
      needs_connections=True)
def _(C, x, n, i, j, a):
    lhs = C.G(n + 1, i, a, C.e(n, j, x))
    if i < j:
        return lhs == C.e(n + 1, j + 1, C.G(n, i, a, x))
    if i > j:
        return lhs == C.e(n + 1, j, C.G(n, i - 1, a, x))
    return lhs == C.e(n + 1, i, C.e(n, i, x))


def _conn_conn(C):
    for n in _levels(C, 2, 1):
        for i in range(1, n):
            for j in range(i, n):
                for al in SIGNS:
                    for be in SIGNS:
                        if i == j and al != be:
                            continue
                        for x in C.level_cells(n - 1):
                            yield (GCell(n - 1, x),), {"n": n, "i": i, "j": j, "a": al, "b": be}


@claw("CCG.v-conn-conn", _conn_conn, needs_connections=True)
def _(C, x, n, i, j, a, b):
    if i < j:
        return C.G(n + 1, i, a, C.G(n, j, b, x)) == C.G(n + 1, j + 1, b, C.G(n, i, a, x))
    return C.G(n + 1, i, a, C.G(n, i, a, x)) == C.G(n + 1, i + 1, a, C.G(n, i, a, x))


def check_classical_axioms(C: ClassicalStructure, threads: int = 1) -> CheckReport:
    laws = list(CLASSICAL_LAWS.values())
    notes = []
    if not C.has_connections:
        laws = [l for l in laws if not l.needs_connections]
        notes.append("classical: connection items skipped (no connections)")
    report = run_laws(C, laws, threads)
    report.notes.extend(notes)
    return report


def validate_classical(C: ClassicalStructure, threads: int = 1) -> ClassicalStructure:
    report = check_classical_axioms(C, threads)
    if report.violations:
        raise StructureError(f"{len(report.violations)} classical law violations, "
                             f"first: {report.violations[0].describe(C.label)}")
    return dataclasses.replace(C, validated=True)


# -- inverses -----------------------------------------------------------------

class ClassicalInverseInconsistency(StructureError):
    pass


def _check_ki(C, k, i):
    if not (1 <= i <= k <= C.top):
        raise StructureError(f"need 1 <= i <= k <= {C.top}, got k={k}, i={i}")


def R_witnesses(C: ClassicalStructure, k: int, i: int, a: int) -> list:
    lo = C.e(k, i, C.f(k, i, MINUS, a))
    hi = C.e(k, i, C.f(k, i, PLUS, a))
    table = C.ccomp[(k, i)]
    return [b for b in C.right_partners[(k, i)][a] if table.get((a, b)) == lo and table.get((b, a)) == hi]


def R_inverse(C: ClassicalStructure, k: int, i: int, a) -> Optional[int]:
    """Index of the level-k inverse of ``a`` for ``*_{k,i}``, or ``None``."""
    _check_ki(C, k, i)
    if isinstance(a, GCell):
        if a.level != k:
            raise StructureError(f"cell {a} is not at level {k}")
        a = a.index
    if not (0 <= a < C.size(k)):
        raise StructureError(f"unknown level-{k} cell {a!r}")
    found = R_witnesses(C, k, i, a)
    if len(found) > 1:
        raise ClassicalInverseInconsistency(f"level-{k} cell {C.cells[k][a]} has several inverses for *_{k},{i}")
    return found[0] if found else None


def R_shell_invertible(C: ClassicalStructure, k: int, i: int, a: int) -> bool:
    """Faces in directions j < i invertible for direction i-1, j > i for direction i."""
    _check_ki(C, k, i)
    for j in range(1, k + 1):
        if j == i:
            continue
        d = i - 1 if j < i else i
        for al in SIGNS:
            if R_inverse(C, k - 1, d, C.f(k, j, al, a)) is None:
                return False
    return True


def check_classical_np(C: ClassicalStructure, p: int) -> CheckReport:
    if not (0 <= p <= C.top):
        raise StructureError(f"p={p} out of range 0..{C.top}")

    def instances(C):
        for k in range(p + 1, C.top + 1):
            for i in range(1, k + 1):
                for a in C.level_cells(k):
                    if R_shell_invertible(C, k, i, a):
                        yield (GCell(k, a),), {"k": k, "i": i}

    law = Law("CNP.shell-inverse", "np", instances,
              lambda C, a, k, i: R_inverse(C, k, i, a.index) is not None, AXIOM)
    return law.run(C)


def classical_terminal(N: int, with_connections: bool = True) -> ClassicalStructure:
    cells = tuple(("*",) for _ in range(N + 1))
    cface = {(k, i, a): [0] for k in range(1, N + 1) for i in range(1, k + 1) for a in SIGNS}
    deg = {(k, i): [0] for k in range(1, N + 1) for i in range(1, k + 1)}
    ccomp = {(k, i): {(0, 0): 0} for k in range(1, N + 1) for i in range(1, k + 1)}
    cconn = ({(k, i, a): [0] for k in range(2, N + 1) for i in range(1, k) for a in SIGNS}
             if with_connections else None)
    return validate_classical(ClassicalStructure(cells, cface, deg, ccomp, cconn,
                                                 meta={"model": "terminal", "dim": N}))
