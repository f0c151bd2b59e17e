"""Executable axiom and lemma suites for single-set structures.

Every law is a pair of an instance enumerator and a predicate.  The
enumerator yields ground instances ``(cells, params)`` with all guards
(fixed-point membership, composability) already filtered; the predicate
decides one instance.  A term that should exist but does not (an undefined
composite) makes the predicate false.

Axiom ids form a stable namespace; see ``LAWS`` or ``cubicat laws`` in the
README for the full table.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

from .core import MINUS, PLUS, SIGNS, SingleSetStructure, StructureError, inverse_witnesses, neg

AXIOM = "axiom"
THEOREM = "theorem-violation"
INCOMPLETE = "incompleteness"

SCHEMA_VERSION = "cubicat.report/1"


class ConfigurationError(StructureError):
    """A suite was asked for data the structure does not carry."""


@dataclass(frozen=True, order=True)
class Violation:
    axiom_id: str
    cells: tuple
    params: tuple = ()
    severity: str = field(default=AXIOM, compare=False)

    @property
    def bindings(self) -> dict:
        return dict(self.params)

    def describe(self, label=None) -> str:
        names = [label(c) if label else str(c) for c in self.cells]
        binds = " ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.axiom_id} [{binds}] ({'; '.join(names)})"


@dataclass
class CheckReport:
    violations: list = field(default_factory=list)
    checked_count: int = 0
    counts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: "CheckReport") -> "CheckReport":
        counts = dict(self.counts)
        for k, v in other.counts.items():
            counts[k] = counts.get(k, 0) + v
        return CheckReport(sorted(self.violations + other.violations),
                           self.checked_count + other.checked_count, counts,
                           self.notes + [n for n in other.notes if n not in self.notes])

    def ids(self) -> set:
        return {v.axiom_id for v in self.violations}

    def to_dict(self, label=None) -> dict:
        """JSON-ready form; ``label`` renders a witness cell (default: as is)."""
        cell = label or (lambda c: c)

        return {
            "schema": SCHEMA_VERSION,
            "passed": self.passed,
            "checked_count": self.checked_count,
            "counts": dict(sorted(self.counts.items())),
            "notes": list(self.notes),
            "violations": [
                {"axiom_id": v.axiom_id, "severity": v.severity,
                 "witness": [cell(c) for c in v.cells], "bindings": dict(v.params)}
                for v in self.violations
            ],
        }


@dataclass(frozen=True)
class Law:
    id: str
    suite: str
    instances: Callable
    holds: Callable
    severity: str = AXIOM
    needs_connections: bool = False

    def evaluate(self, S, cells, params=()) -> bool:
        try:
            return bool(self.holds(S, *cells, **dict(params)))
        except (TypeError, KeyError, IndexError):
            # an undefined composite (None) fed onward into a table
            return False

    def run(self, S) -> CheckReport:
        bad, count = [], 0
        for cells, params in self.instances(S):
            count += 1
            if not self.evaluate(S, cells, params):
                bad.append(Violation(self.id, tuple(cells), tuple(sorted(params.items())), self.severity))
        return CheckReport(sorted(bad), count, {self.id: count})


LAWS: dict = {}


def law(id, suite, instances, severity=AXIOM, needs_connections=False):
    def register(holds):
        LAWS[id] = Law(id, suite, instances, holds, severity, needs_connections)
        return holds

    return register


def reevaluate(S, violation: Violation) -> bool:
    """True when the law still fails on the recorded witness."""
    return not LAWS[violation.axiom_id].evaluate(S, violation.cells, violation.params)


# -- instance helpers ---------------------------------------------------------

def dirs(S):
    return range(1, S.dim + 1)


def sym_dirs(S):
    return range(1, S.dim)


def fixed_in(S, *ds):
    return [x for x in S.cells if all(S.fixed(d, x) for d in ds)]


def fixed_pairs(S, j, *ds):
    """Composable pairs in direction ``j`` with both cells fixed in ``ds``."""
    return [(x, y) for (x, y) in sorted(S.comp[j]) if all(S.fixed(d, x) and S.fixed(d, y) for d in ds)]


def far(i, j):
    return abs(i - j) >= 2


# -- category axioms, per direction ------------------------------------------

def _assoc_instances(S):
    for i in dirs(S):
        table, right, left = S.comp[i], S.right_partners[i], S.left_partners[i]
        seen = set()
        for (x, y), xy in sorted(table.items()):
            for z in right[xy]:
                seen.add((x, y, z))
        for (y, z), yz in table.items():
            for x in left[yz]:
                seen.add((x, y, z))
        for t in sorted(seen):
            yield t, {"i": i}


@law("CAT.i-assoc", "category", _assoc_instances)
def _(S, x, y, z, i):
    return S.c(i, S.c(i, x, y), z) == S.c(i, x, S.c(i, y, z))


@law("CAT.ii-unit-right", "category", lambda S: (((x,), {"i": i}) for i in dirs(S) for x in S.cells))
def _(S, x, i):
    return S.c(i, x, S.d(i, PLUS, x)) == x


@law("CAT.ii-unit-left", "category", lambda S: (((x,), {"i": i}) for i in dirs(S) for x in S.cells))
def _(S, x, i):
    return S.c(i, S.d(i, MINUS, x), x) == x


def _locality_instances(S):
    for i in dirs(S):
        by_lower = {}
        for y in S.cells:
            by_lower.setdefault(S.d(i, MINUS, y), []).append(y)
        pairs = set(S.comp[i])
        for x in S.cells:
            pairs.update((x, y) for y in by_lower.get(S.d(i, PLUS, x), ()))
        for p in sorted(pairs):
            yield p, {"i": i}


@law("CAT.iii-locality", "category", _locality_instances)
def _(S, x, y, i):
    return ((x, y) in S.comp[i]) == (S.d(i, PLUS, x) == S.d(i, MINUS, y))


@law("CAT.L-face-face", "category",
     lambda S: (((x,), {"i": i, "a": a, "b": b}) for i in dirs(S) for a in SIGNS for b in SIGNS for x in S.cells),
     severity=THEOREM)
def _(S, x, i, a, b):
    return S.d(i, a, S.d(i, b, x)) == S.d(i, b, x)


@law("CAT.L-fix-agree", "category", lambda S: (((x,), {"i": i}) for i in dirs(S) for x in S.cells),
     severity=THEOREM)
def _(S, x, i):
    return (S.d(i, MINUS, x) == x) == (S.d(i, PLUS, x) == x)


@law("CAT.L-comp-faces", "category",
     lambda S: ((p, {"i": i}) for i in dirs(S) for p in sorted(S.comp[i])), severity=THEOREM)
def _(S, x, y, i):
    z = S.c(i, x, y)
    return S.d(i, MINUS, z) == S.d(i, MINUS, x) and S.d(i, PLUS, z) == S.d(i, PLUS, y)


# -- cubical axioms -----------------------------------------------------------

@law("SSCC.i-face-commute", "cubical",
     lambda S: (((x,), {"i": i, "j": j, "a": a, "b": b})
                for i in dirs(S) for j in dirs(S) if i != j
                for a in SIGNS for b in SIGNS for x in S.cells))
def _(S, x, i, j, a, b):
    return S.d(i, a, S.d(j, b, x)) == S.d(j, b, S.d(i, a, x))


@law("SSCC.ii-face-comp", "cubical",
     lambda S: ((p, {"i": i, "j": j, "a": a})
                for i in dirs(S) for j in dirs(S) if i != j for a in SIGNS for p in sorted(S.comp[j])))
def _(S, x, y, i, j, a):
    return S.d(i, a, S.c(j, x, y)) == S.c(j, S.d(i, a, x), S.d(i, a, y))


def _interchange_instances(S):
    # the law is symmetric under (i, j, x, y) <-> (j, i, y, x), so i < j suffices
    for i in dirs(S):
        for j in dirs(S):
            if i >= j:
                continue
            ri, rj = S.right_partners[i], S.right_partners[j]
            for w in S.cells:
                for x in ri[w]:
                    xs = set(rj[x])
                    for y in rj[w]:
                        for z in ri[y]:
                            if z in xs:
                                yield (w, x, y, z), {"i": i, "j": j}


@law("SSCC.iii-interchange", "cubical", _interchange_instances)
def _(S, w, x, y, z, i, j):
    lhs = S.c(j, S.c(i, w, x), S.c(i, y, z))
    return lhs is not None and lhs == S.c(i, S.c(j, w, y), S.c(j, x, z))


@law("SSCC.iv-sym-type", "cubical",
     lambda S: (((x,), {"i": i}) for i in sym_dirs(S) for x in fixed_in(S, i)))
def _(S, x, i):
    return S.fixed(i + 1, S.s(i, x))


@law("SSCC.iv-inv-sym-type", "cubical",
     lambda S: (((x,), {"i": i}) for i in sym_dirs(S) for x in fixed_in(S, i + 1)))
def _(S, x, i):
    return S.fixed(i, S.t(i, x))


@law("SSCC.v-sym-inverse", "cubical",
     lambda S: (((x,), {"i": i}) for i in sym_dirs(S) for x in fixed_in(S, i)))
def _(S, x, i):
    return S.t(i, S.s(i, x)) == x


@law("SSCC.v-inv-sym-inverse", "cubical",
     lambda S: (((x,), {"i": i}) for i in sym_dirs(S) for x in fixed_in(S, i + 1)))
def _(S, x, i):
    return S.s(i, S.t(i, x)) == x


@law("SSCC.vi-face-sym-shift", "cubical",
     lambda S: (((x,), {"j": j, "a": a}) for j in sym_dirs(S) for a in SIGNS for x in fixed_in(S, j)))
def _(S, x, j, a):
    return S.d(j, a, S.s(j, x)) == S.s(j, S.d(j + 1, a, x))


@law("SSCC.vi-face-sym-other", "cubical",
     lambda S: (((x,), {"i": i, "j": j, "a": a}) for j in sym_dirs(S) for i in dirs(S)
                if i not in (j, j + 1) for a in SIGNS for x in fixed_in(S, j)))
def _(S, x, i, j, a):
    return S.d(i, a, S.s(j, x)) == S.s(j, S.d(i, a, x))


@law("SSCC.vii-sym-comp-next", "cubical",
     lambda S: ((p, {"i": i}) for i in sym_dirs(S) for p in fixed_pairs(S, i + 1, i)))
def _(S, x, y, i):
    return S.s(i, S.c(i + 1, x, y)) == S.c(i, S.s(i, x), S.s(i, y))


@law("SSCC.vii-sym-comp-other", "cubical",
     lambda S: ((p, {"i": i, "j": j}) for i in sym_dirs(S) for j in dirs(S)
                if j not in (i, i + 1) for p in fixed_pairs(S, j, i)))
def _(S, x, y, i, j):
    return S.s(i, S.c(j, x, y)) == S.c(j, S.s(i, x), S.s(i, y))


@law("SSCC.viii-sym-fix", "cubical",
     lambda S: (((x,), {"i": i}) for i in sym_dirs(S) for x in fixed_in(S, i, i + 1)))
def _(S, x, i):
    return S.s(i, x) == x


@law("SSCC.ix-sym-braid", "cubical",
     lambda S: (((x,), {"i": i, "j": j}) for i in sym_dirs(S) for j in sym_dirs(S)
                if i < j and far(i, j) for x in fixed_in(S, i, j)))
def _(S, x, i, j):
    return S.s(i, S.s(j, x)) == S.s(j, S.s(i, x))


# -- connection axioms --------------------------------------------------------

@law("CONN.i-face-same", "connections",
     lambda S: (((x,), {"j": j, "a": a}) for j in sym_dirs(S) for a in SIGNS for x in fixed_in(S, j)),
     needs_connections=True)
def _(S, x, j, a):
    return S.d(j, a, S.g(j, a, x)) == x


@law("CONN.i-face-next", "connections",
     lambda S: (((x,), {"j": j, "a": a}) for j in sym_dirs(S) for a in SIGNS for x in fixed_in(S, j)),
     needs_connections=True)
def _(S, x, j, a):
    return S.d(j + 1, a, S.g(j, a, x)) == S.s(j, x)


@law("CONN.i-face-other", "connections",
     lambda S: (((x,), {"i": i, "j": j, "a": a, "b": b}) for j in sym_dirs(S) for i in dirs(S)
                if i not in (j, j + 1) for a in SIGNS for b in SIGNS for x in fixed_in(S, j)),
     needs_connections=True)
def _(S, x, i, j, a, b):
    return S.d(i, a, S.g(j, b, x)) == S.g(j, b, S.d(i, a, x))


@law("CONN.ii-corner+", "connections",
     lambda S: ((p, {"i": i}) for i in sym_dirs(S) for p in fixed_pairs(S, i + 1, i)),
     needs_connections=True)
def _(S, x, y, i):
    rhs = S.c(i, S.c(i + 1, S.g(i, PLUS, x), S.s(i, x)), S.c(i + 1, x, S.g(i, PLUS, y)))
    return rhs is not None and S.g(i, PLUS, S.c(i + 1, x, y)) == rhs


@law("CONN.ii-corner-", "connections",
     lambda S: ((p, {"i": i}) for i in sym_dirs(S) for p in fixed_pairs(S, i + 1, i)),
     needs_connections=True)
def _(S, x, y, i):
    rhs = S.c(i, S.c(i + 1, S.g(i, MINUS, x), y), S.c(i + 1, S.s(i, y), S.g(i, MINUS, y)))
    return rhs is not None and S.g(i, MINUS, S.c(i + 1, x, y)) == rhs


@law("CONN.ii-comp-other", "connections",
     lambda S: ((p, {"i": i, "j": j, "a": a}) for i in sym_dirs(S) for j in dirs(S)
                if j not in (i, i + 1) for a in SIGNS for p in fixed_pairs(S, j, i)),
     needs_connections=True)
def _(S, x, y, i, j, a):
    return S.g(i, a, S.c(j, x, y)) == S.c(j, S.g(i, a, x), S.g(i, a, y))


@law("CONN.iii-fix", "connections",
     lambda S: (((x,), {"i": i, "a": a}) for i in sym_dirs(S) for a in SIGNS for x in fixed_in(S, i, i + 1)),
     needs_connections=True)
def _(S, x, i, a):
    return S.g(i, a, x) == x


@law("CONN.iv-zigzag1", "connections",
     lambda S: (((x,), {"i": i}) for i in sym_dirs(S) for x in fixed_in(S, i)), needs_connections=True)
def _(S, x, i):
    return S.c(i + 1, S.g(i, PLUS, x), S.g(i, MINUS, x)) == x


@law("CONN.iv-zigzag2", "connections",
     lambda S: (((x,), {"i": i}) for i in sym_dirs(S) for x in fixed_in(S, i)), needs_connections=True)
def _(S, x, i):
    return S.c(i, S.g(i, PLUS, x), S.g(i, MINUS, x)) == S.s(i, x)


@law("CONN.v-braid", "connections",
     lambda S: (((x,), {"i": i, "j": j, "a": a, "b": b}) for i in sym_dirs(S) for j in sym_dirs(S)
                if far(i, j) for a in SIGNS for b in SIGNS for x in fixed_in(S, i, j)),
     needs_connections=True)
def _(S, x, i, j, a, b):
    return S.g(i, a, S.g(j, b, x)) == S.g(j, b, S.g(i, a, x))


@law("CONN.vi-shift", "connections",
     lambda S: (((x,), {"i": i, "a": a}) for i in range(1, S.dim - 1) for a in SIGNS
                for x in fixed_in(S, i, i + 1)),
     needs_connections=True)
def _(S, x, i, a):
    return S.s(i + 1, S.s(i, S.g(i + 1, a, x))) == S.g(i, a, S.s(i + 1, x))


# -- derived lemmas -----------------------------------------------------------

@law("SYM.L0-i-face-sym", "derived",
     lambda S: (((x,), {"j": j, "a": a}) for j in sym_dirs(S) for a in SIGNS for x in fixed_in(S, j)),
     severity=THEOREM)
def _(S, x, j, a):
    return S.d(j + 1, a, S.s(j, x)) == S.s(j, S.d(j, a, x))


@law("SYM.L0-ii-sym-comp-same", "derived",
     lambda S: ((p, {"i": i}) for i in sym_dirs(S) for p in fixed_pairs(S, i, i)), severity=THEOREM)
def _(S, x, y, i):
    return S.s(i, S.c(i, x, y)) == S.c(i + 1, S.s(i, x), S.s(i, y))


@law("SYM.L0-iii-yang-baxter", "derived",
     lambda S: (((x,), {"i": i}) for i in range(1, S.dim - 1) for x in fixed_in(S, i, i + 1)),
     severity=THEOREM)
def _(S, x, i):
    s = S.s
    return s(i, s(i + 1, s(i, x))) == s(i + 1, s(i, s(i + 1, x)))


@law("INVSYM.i-face", "derived",
     lambda S: (((x,), {"i": i, "j": j, "a": a}) for j in sym_dirs(S) for i in dirs(S)
                for a in SIGNS for x in fixed_in(S, j + 1)),
     severity=THEOREM)
def _(S, x, i, j, a):
    k = j + 1 if i == j else j if i == j + 1 else i
    return S.d(i, a, S.t(j, x)) == S.t(j, S.d(k, a, x))


@law("INVSYM.ii-comp", "derived",
     lambda S: ((p, {"i": i, "j": j}) for i in sym_dirs(S) for j in dirs(S)
                for p in fixed_pairs(S, j, i + 1)),
     severity=THEOREM)
def _(S, x, y, i, j):
    k = i + 1 if j == i else i if j == i + 1 else j
    return S.t(i, S.c(j, x, y)) == S.c(k, S.t(i, x), S.t(i, y))


@law("INVSYM.iii-fix", "derived",
     lambda S: (((x,), {"i": i}) for i in sym_dirs(S) for x in fixed_in(S, i, i + 1)), severity=THEOREM)
def _(S, x, i):
    return S.t(i, x) == x


def _far_pairs(S):
    return [(i, j) for i in sym_dirs(S) for j in sym_dirs(S) if far(i, j)]


@law("INVSYM.iv-sym-inv-sym", "derived",
     lambda S: (((x,), {"i": i, "j": j}) for i, j in _far_pairs(S) for x in fixed_in(S, i, j + 1)),
     severity=THEOREM)
def _(S, x, i, j):
    return S.s(i, S.t(j, x)) == S.t(j, S.s(i, x))


@law("INVSYM.iv-inv-sym-sym", "derived",
     lambda S: (((x,), {"i": i, "j": j}) for i, j in _far_pairs(S) for x in fixed_in(S, i + 1, j)),
     severity=THEOREM)
def _(S, x, i, j):
    return S.t(i, S.s(j, x)) == S.s(j, S.t(i, x))


@law("INVSYM.iv-inv-sym-braid", "derived",
     lambda S: (((x,), {"i": i, "j": j}) for i, j in _far_pairs(S) for x in fixed_in(S, i + 1, j + 1)),
     severity=THEOREM)
def _(S, x, i, j):
    return S.t(i, S.t(j, x)) == S.t(j, S.t(i, x))


@law("INVSYM.v-yang-baxter", "derived",
     lambda S: (((x,), {"i": i}) for i in range(1, S.dim - 1) for x in fixed_in(S, i + 1, i + 2)),
     severity=THEOREM)
def _(S, x, i):
    t = S.t
    return t(i, t(i + 1, t(i, x))) == t(i + 1, t(i, t(i + 1, x)))


@law("CONNL.i-face-opposite", "derived",
     lambda S: (((x,), {"j": j, "a": a}) for j in sym_dirs(S) for a in SIGNS for x in fixed_in(S, j)),
     severity=THEOREM, needs_connections=True)
def _(S, x, j, a):
    g = S.g(j, neg(a), x)
    return S.d(j, a, g) == S.d(j + 1, a, x) and S.d(j + 1, a, g) == S.d(j + 1, a, x)


@law("CONNL.ii-corner+", "derived",
     lambda S: ((p, {"i": i}) for i in sym_dirs(S) for p in fixed_pairs(S, i + 1, i)),
     severity=THEOREM, needs_connections=True)
def _(S, x, y, i):
    rhs = S.c(i + 1, S.c(i, S.g(i, PLUS, x), x), S.c(i, S.s(i, x), S.g(i, PLUS, y)))
    return rhs is not None and S.g(i, PLUS, S.c(i + 1, x, y)) == rhs


@law("CONNL.ii-corner-", "derived",
     lambda S: ((p, {"i": i}) for i in sym_dirs(S) for p in fixed_pairs(S, i + 1, i)),
     severity=THEOREM, needs_connections=True)
def _(S, x, y, i):
    rhs = S.c(i + 1, S.c(i, S.g(i, MINUS, x), S.s(i, y)), S.c(i, y, S.g(i, MINUS, y)))
    return rhs is not None and S.g(i, MINUS, S.c(i + 1, x, y)) == rhs


@law("CONNL.iii-conn-sym", "derived",
     lambda S: (((x,), {"i": i, "j": j, "a": a}) for i, j in _far_pairs(S) for a in SIGNS
                for x in fixed_in(S, i, j)),
     severity=THEOREM, needs_connections=True)
def _(S, x, i, j, a):
    return S.g(i, a, S.s(j, x)) == S.s(j, S.g(i, a, x))


@law("CONNL.iii-conn-inv-sym", "derived",
     lambda S: (((x,), {"i": i, "j": j, "a": a}) for i, j in _far_pairs(S) for a in SIGNS
                for x in fixed_in(S, i, j + 1)),
     severity=THEOREM, needs_connections=True)
def _(S, x, i, j, a):
    return S.g(i, a, S.t(j, x)) == S.t(j, S.g(i, a, x))


@law("CONNL.iv-shift", "derived",
     lambda S: (((x,), {"i": i, "a": a}) for i in range(1, S.dim - 1) for a in SIGNS
                for x in fixed_in(S, i, i + 2)),
     severity=THEOREM, needs_connections=True)
def _(S, x, i, a):
    return S.t(i, S.t(i + 1, S.g(i, a, x))) == S.g(i + 1, a, S.t(i + 1, x))


@law("INV.unique", "derived",
     lambda S: (((x,), {"i": i}) for i in dirs(S) for x in S.cells), severity=THEOREM)
def _(S, x, i):
    return len(inverse_witnesses(S, i, x, S.right_partners[i][x])) <= 1


# -- suites -------------------------------------------------------------------

SUITES = ("category", "cubical", "connections", "derived")


def laws_of(suite: str) -> list:
    return [l for l in LAWS.values() if l.suite == suite]


def run_laws(S: SingleSetStructure, laws: Iterable[Law], threads: int = 1) -> CheckReport:
    laws = list(laws)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda l: l.run(S), laws))
    else:
        parts = [l.run(S) for l in laws]
    report = CheckReport()
    for part in parts:
        report = report.merge(part)
    return report


def _suite(S, suite, threads):
    laws = laws_of(suite)
    note = None
    if not S.has_connections and any(l.needs_connections for l in laws):
        laws = [l for l in laws if not l.needs_connections]
        note = f"{suite}: connection items skipped (no connections)"
    report = run_laws(S, laws, threads)
    if note:
        report.notes.append(note)
    return report


def check_category_axioms(S, threads: int = 1) -> CheckReport:
    return _suite(S, "category", threads)


def check_cubical_axioms(S, threads: int = 1) -> CheckReport:
    report = _suite(S, "cubical", threads)
    report.notes.append("SSCC.x-finite-dim: vacuous at finite dimension bound")
    return report


def check_connection_axioms(S, threads: int = 1) -> CheckReport:
    if not S.has_connections:
        raise ConfigurationError("structure has no connection tables")
    return _suite(S, "connections", threads)


def check_derived_lemmas(S, threads: int = 1) -> CheckReport:
    return _suite(S, "derived", threads)


def check_all(S, threads: int = 1) -> CheckReport:
    report = check_category_axioms(S, threads).merge(check_cubical_axioms(S, threads))
    if S.has_connections:
        report = report.merge(check_connection_axioms(S, threads))
    return report.merge(check_derived_lemmas(S, threads))


def validate(S: SingleSetStructure, threads: int = 1) -> SingleSetStructure:
    """Copy of ``S`` flagged validated; raises if any axiom suite fails."""
    report = check_all(S, threads)
    if report.violations:
        first = report.violations[0].describe(S.label)
        raise StructureError(f"{len(report.violations)} law violations, first: {first}")
    return replace(S, validated=True)
