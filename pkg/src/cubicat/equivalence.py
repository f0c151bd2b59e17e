"""Translation between single-set and classical structures, and round-trip checks.

``fc`` grades a single-set structure by fixed-point sets: level k is the set
of cells fixed in every direction above k, faces are faces followed by a
chain of symmetries, degeneracies are chains of reverse symmetries.  ``fs``
goes back by taking the top level as the carrier; lower cells are identified
with their degeneracy padding to the top, so the colimit is never
materialized as classes.
"""
from __future__ import annotations

from .classical import (GCell, ClassicalStructure, R_inverse, check_classical_np,
                        validate_classical)
from .core import MINUS, SIGNS, SingleSetStructure, StructureError, upper_fixed
from .inverses import check_np, ri_inverse
from .laws import THEOREM, CheckReport, Violation, validate


class UnvalidatedInput(StructureError):
    pass


def _require_validated(obj, what):
    if not obj.validated:
        raise UnvalidatedInput(f"{what} needs a validated structure; run the law suites first")


# -- fc ----------------------------------------------------------------------

def grading(S: SingleSetStructure) -> list:
    """``levels[k]`` = cells of level at most k, ascending."""
    return [upper_fixed(S, k) for k in range(S.dim + 1)]


def _fc(S: SingleSetStructure) -> ClassicalStructure:
    N = S.dim
    levels = grading(S)
    pos = [{x: n for n, x in enumerate(level)} for level in levels]

    def at(k, x, what):
        try:
            return pos[k][x]
        except KeyError:
            raise StructureError(f"{what} leaves level {k} at {S.label(x)}") from None

    def face(k, i, a, x):
        y = S.d(i, a, x)
        for m in range(i, k):
            y = S.s(m, y)
        return y

    def degen(k, i, x):
        for m in range(k - 1, i - 1, -1):
            x = S.t(m, x)
        return x

    cface, deg, ccomp, cconn = {}, {}, {}, None
    for k in range(1, N + 1):
        for i in range(1, k + 1):
            for a in SIGNS:
                cface[(k, i, a)] = [at(k - 1, face(k, i, a, x), f"face d{k},{i}{a}") for x in levels[k]]
            deg[(k, i)] = [at(k, degen(k, i, x), f"degeneracy e{k},{i}") for x in levels[k - 1]]
            table = {}
            for (x, y), z in S.comp[i].items():
                if x in pos[k] and y in pos[k]:
                    table[(pos[k][x], pos[k][y])] = at(k, z, f"composite *{k},{i}")
            ccomp[(k, i)] = table
    if S.has_connections:
        cconn = {}
        for k in range(2, N + 1):
            for i in range(1, k):
                for a in SIGNS:
                    cconn[(k, i, a)] = [at(k, S.g(i, a, degen(k, i, x)), f"connection G{k},{i}{a}")
                                        for x in levels[k - 1]]
    return ClassicalStructure(
        cells=tuple(tuple(S.label(x) for x in level) for level in levels),
        cface=cface, deg=deg, ccomp=ccomp, cconn=cconn, raw=True,
        meta={**S.meta, "translated": "fc"},
    )


def fc(S: SingleSetStructure, validate_output: bool = False) -> ClassicalStructure:
    _require_validated(S, "fc")
    C = _fc(S)
    return validate_classical(C) if validate_output else C


# -- fs ----------------------------------------------------------------------

def _fs(C: ClassicalStructure) -> SingleSetStructure:
    N = C.top
    top = C.level_cells(N)

    face = {(i, a): [C.e(N, i, C.f(N, i, a, x)) for x in top] for i in range(1, N + 1) for a in SIGNS}
    sym = {i: [C.e(N, i + 1, C.f(N, i, MINUS, x)) for x in top] for i in range(1, N)}
    inv_sym = {i: [C.e(N, i, C.f(N, i + 1, MINUS, x)) for x in top] for i in range(1, N)}
    comp = {i: dict(C.ccomp[(N, i)]) for i in range(1, N + 1)}
    conn = None
    if C.has_connections:
        conn = {(i, a): [C.G(N, i, a, C.f(N, i, a, x)) for x in top] for i in range(1, N) for a in SIGNS}
    return SingleSetStructure(labels=C.cells[N], dim=N, face=face, comp=comp, sym=sym,
                              inv_sym=inv_sym, conn=conn, meta={**C.meta, "translated": "fs"})


def fs(C: ClassicalStructure, validate_output: bool = False) -> SingleSetStructure:
    _require_validated(C, "fs")
    S = _fs(C)
    return validate(S) if validate_output else S


# -- round trips ---------------------------------------------------------------

def _violation(id, cells=(), **params):
    return Violation(id, tuple(cells), tuple(sorted(params.items())), THEOREM)


class _Tally:
    """Collects instance counts and violations for a hand-rolled check."""

    def __init__(self):
        self.report = CheckReport()

    def check(self, id, ok, cells=(), **params):
        self.report.checked_count += 1
        self.report.counts[id] = self.report.counts.get(id, 0) + 1
        if not ok:
            self.report.violations.append(_violation(id, cells, **params))

    def done(self):
        self.report.violations.sort()
        return self.report


def check_mu(S: SingleSetStructure) -> CheckReport:
    """Compare ``fs(fc(S))`` with ``S`` on the shared carrier."""
    T = _fs(_fc(S))
    out = _Tally()
    out.check("MU.carrier", T.labels == S.labels)
    if T.labels != S.labels:
        return out.done()
    for (i, a), row in S.face.items():
        for x in S.cells:
            out.check("MU.face", T.d(i, a, x) == row[x], (x,), i=i, a=a)
    for i in range(1, S.dim + 1):
        for pair in sorted(set(S.comp[i]) | set(T.comp[i])):
            out.check("MU.comp", T.comp[i].get(pair) == S.comp[i].get(pair), pair, i=i)
    for i in range(1, S.dim):
        for x in S.cells:
            out.check("MU.sym", T.s(i, x) == S.s(i, S.d(i, MINUS, x)), (x,), i=i)
            out.check("MU.inv-sym", T.t(i, x) == S.t(i, S.d(i + 1, MINUS, x)), (x,), i=i)
            if S.fixed(i, x):
                out.check("MU.sym-typed", T.s(i, x) == S.s(i, x), (x,), i=i)
            if S.fixed(i + 1, x):
                out.check("MU.inv-sym-typed", T.t(i, x) == S.t(i, x), (x,), i=i)
            if S.has_connections:
                for a in SIGNS:
                    out.check("MU.conn", T.g(i, a, x) == S.g(i, a, S.d(i, a, x)), (x,), i=i, a=a)
                    if S.fixed(i, x):
                        out.check("MU.conn-typed", T.g(i, a, x) == S.g(i, a, x), (x,), i=i, a=a)
    return out.done()


def eta(C: ClassicalStructure) -> list:
    """``eta[k][a]``: the top-level cell padding ``a`` of level k."""
    N = C.top
    out = []
    for k in range(N + 1):
        row = []
        for x in C.level_cells(k):
            for m in range(k + 1, N + 1):
                x = C.e(m, m, x)
            row.append(x)
        out.append(row)
    return out


def eta_bar(C: ClassicalStructure, k: int, b: int) -> int:
    """Lower faces ``d_{k+1,k+1}^- ... d_{N,N}^- b`` of a top-level cell."""
    for m in range(C.top, k, -1):
        b = C.f(m, m, MINUS, b)
    return b


def check_eta(C: ClassicalStructure) -> CheckReport:
    """``eta: C -> fc(fs(C))`` and its inverse are mutually inverse structure maps."""
    out = _Tally()
    N = C.top
    try:
        D = _fc(_fs(C))
    except StructureError as exc:
        out.check("ETA.construction", False)
        out.report.notes.append(f"fc(fs(C)) could not be built: {exc}")
        return out.done()
    up = eta(C)
    pos = [D._label_index[k] for k in range(N + 1)]
    top_labels = C.cells[N]

    def to_D(k, a):
        """eta_k(a) as a level-k ordinal of D, or None when outside D_k."""
        return pos[k].get(top_labels[up[k][a]])

    def from_D(k, b):
        return eta_bar(C, k, C.index(N, D.cells[k][b]))

    for k in range(N + 1):
        for a in C.level_cells(k):
            image = to_D(k, a)
            out.check("ETA.image", image is not None, (GCell(k, a),))
            if image is not None:
                out.check("ETA.left-inverse", from_D(k, image) == a, (GCell(k, a),))
        for b in D.level_cells(k):
            out.check("ETA.right-inverse", to_D(k, from_D(k, b)) == b, (GCell(k, b),), side="D")
        reps = {}
        for a in C.level_cells(k):
            reps.setdefault(up[k][a], []).append(a)
        for b, found in sorted(reps.items()):
            out.check("ETA.well-defined", len(found) == 1, tuple(GCell(k, a) for a in found), top=b)
    if out.report.violations:
        return out.done()

    # both maps preserve the structure; eta_bar is the inverse bijection, so
    # checking eta against D's tables and eta_bar against C's covers both
    def e(k, a):
        return to_D(k, a)

    def eb(k, b):
        return from_D(k, b)

    for k in range(1, N + 1):
        for i in range(1, k + 1):
            for a in C.level_cells(k):
                for al in SIGNS:
                    out.check("ETA.face", e(k - 1, C.f(k, i, al, a)) == D.f(k, i, al, e(k, a)),
                              (GCell(k, a),), i=i, a=al)
            for b in D.level_cells(k):
                for al in SIGNS:
                    out.check("ETA.bar-face", eb(k - 1, D.f(k, i, al, b)) == C.f(k, i, al, eb(k, b)),
                              (GCell(k, b),), i=i, a=al, side="D")
            for x in C.level_cells(k - 1):
                out.check("ETA.deg", e(k, C.e(k, i, x)) == D.e(k, i, e(k - 1, x)), (GCell(k - 1, x),), i=i)
            for y in D.level_cells(k - 1):
                out.check("ETA.bar-deg", eb(k, D.e(k, i, y)) == C.e(k, i, eb(k - 1, y)),
                          (GCell(k - 1, y),), i=i, side="D")
            for (a, b), ab in sorted(C.ccomp[(k, i)].items()):
                out.check("ETA.comp", D.m(k, i, e(k, a), e(k, b)) == e(k, ab), (GCell(k, a), GCell(k, b)), i=i)
            for (a, b), ab in sorted(D.ccomp[(k, i)].items()):
                out.check("ETA.bar-comp", C.m(k, i, eb(k, a), eb(k, b)) == eb(k, ab),
                          (GCell(k, a), GCell(k, b)), i=i, side="D")
            if C.has_connections and i < k:
                for al in SIGNS:
                    for x in C.level_cells(k - 1):
                        out.check("ETA.conn", e(k, C.G(k, i, al, x)) == D.G(k, i, al, e(k - 1, x)),
                                  (GCell(k - 1, x),), i=i, a=al)
                    for y in D.level_cells(k - 1):
                        out.check("ETA.bar-conn", eb(k, D.G(k, i, al, y)) == C.G(k, i, al, eb(k - 1, y)),
                                  (GCell(k - 1, y),), i=i, a=al, side="D")
    return out.done()


# -- inverse transport -----------------------------------------------------------

def np_correspondence(S: SingleSetStructure, p: int):
    """Both (n,p) reports and the single-set witnesses mapped to classical ones.

    Returns ``(single_report, classical_report, mapped)`` where ``mapped`` is
    the set of ``(k, i, GCell)`` obtained from the single-set violations.
    """
    C = _fc(S)
    single, classical = check_np(S, p), check_classical_np(C, p)
    levels = grading(S)
    pos = [{x: n for n, x in enumerate(level)} for level in levels]
    mapped = set()
    for v in single.violations:
        b = v.bindings
        mapped.add((b["k"], b["i"], GCell(b["k"], pos[b["k"]][v.cells[0]])))
    return single, classical, mapped


def check_inverse_transport(S: SingleSetStructure, p: int = 0) -> CheckReport:
    out = _Tally()
    C = _fc(S)
    levels = grading(S)
    pos = [{x: n for n, x in enumerate(level)} for level in levels]
    for k in range(1, S.dim + 1):
        for i in range(1, k + 1):
            for x in levels[k]:
                r = ri_inverse(S, i, x)
                R = R_inverse(C, k, i, pos[k][x])
                expected = None if r is None else pos[k].get(r.inverse)
                out.check("TRANSPORT.fc", R == expected, (x,), k=k, i=i)
    T = _fs(C)
    N = S.dim
    for i in range(1, N + 1):
        for x in T.cells:
            r = ri_inverse(T, i, x)
            out.check("TRANSPORT.fs", R_inverse(C, N, i, x) == (None if r is None else r.inverse), (x,), i=i)
    single, classical, mapped = np_correspondence(S, p)
    theirs = {(v.bindings["k"], v.bindings["i"], v.cells[0]) for v in classical.violations}
    for k, i, g in sorted(mapped ^ theirs):
        out.check("TRANSPORT.np", False, (g,), k=k, i=i)
    out.check("TRANSPORT.np-verdict", single.passed == classical.passed)
    out.report.notes.append(
        f"np({p}): single-set {len(single.violations)} violation(s), classical {len(classical.violations)}")
    return out.done()
