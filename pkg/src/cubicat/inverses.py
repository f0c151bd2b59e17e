"""Inverses for the compositions of a single-set structure.

``ri_inverse`` is the brute-force oracle.  ``synthesize_inverse_dim0``
follows the inductive construction for structures in which every cell with
an invertible shell is invertible: it builds inverses of all shell faces
from lower-dimensional inverses conjugated by symmetries, then picks the
inverse of the cell itself among candidates compatible with that shell.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Optional

from .core import (MINUS, PLUS, SIGNS, SingleSetStructure, StructureError, inverse_witnesses,
                   level, neg, upper_fixed)
from .laws import AXIOM, THEOREM, CheckReport, Law, run_laws


class InverseInconsistency(StructureError):
    """More than one inverse: the structure is not a category in that direction."""


class NotOmegaZero(StructureError):
    """The inductive construction met a cell without an inverse."""

    def __init__(self, message, direction, cell):
        super().__init__(message)
        self.direction = direction
        self.cell = cell


@dataclass(frozen=True)
class InverseCertificate:
    direction: int
    cell: int
    inverse: int
    evidence: tuple  # (x o y defined, x o y = lower face, y o x defined, y o x = upper face)
    shell: tuple = field(default=(), compare=False)  # ((j, sign, face, face inverse), ...)

    @property
    def valid(self) -> bool:
        return all(self.evidence)


def evidence(S: SingleSetStructure, i: int, x: int, y: int) -> tuple:
    xy, yx = S.comp[i].get((x, y)), S.comp[i].get((y, x))
    return (xy is not None, xy == S.d(i, MINUS, x), yx is not None, yx == S.d(i, PLUS, x))


def _check_direction(S, i):
    if not (isinstance(i, int) and 1 <= i <= S.dim):
        raise StructureError(f"direction {i} out of range 1..{S.dim}")


def ri_inverse(S: SingleSetStructure, i: int, x: int) -> Optional[InverseCertificate]:
    _check_direction(S, i)
    found = inverse_witnesses(S, i, x, S.right_partners[i][x])
    if len(found) > 1:
        names = ", ".join(S.label(y) for y in found)
        raise InverseInconsistency(f"{S.label(x)} has several inverses in direction {i}: {names}")
    if not found:
        return None
    return InverseCertificate(i, x, found[0], evidence(S, i, x, found[0]))


def inverse_table(S: SingleSetStructure, strict: bool = True) -> dict:
    """``{i: [inverse or None for each cell]}``.

    With ``strict=False`` a cell with several inverses gets the least one;
    the uniqueness law reports the duplication separately.
    """
    out = {}
    for i in range(1, S.dim + 1):
        row = []
        for x in S.cells:
            if strict:
                cert = ri_inverse(S, i, x)
                row.append(cert.inverse if cert else None)
            else:
                found = inverse_witnesses(S, i, x, S.right_partners[i][x])
                row.append(found[0] if found else None)
        out[i] = row
    return out


def shell_invertible(S: SingleSetStructure, k: int, i: int, x: int) -> bool:
    if not (1 <= i <= k <= S.dim):
        raise StructureError(f"need 1 <= i <= k <= {S.dim}, got i={i}, k={k}")
    if any(not S.fixed(m, x) for m in range(k + 1, S.dim + 1)):
        raise StructureError(f"{S.label(x)} is not fixed in directions {k + 1}..{S.dim}")
    return all(ri_inverse(S, i, S.d(j, a, x)) is not None
               for j in range(1, k + 1) if j != i for a in SIGNS)


def _np_instances(p):
    def instances(S):
        for k in range(p + 1, S.dim + 1):
            for i in range(1, k + 1):
                for x in upper_fixed(S, k):
                    if shell_invertible(S, k, i, x):
                        yield (x,), {"k": k, "i": i}
    return instances


def check_np(S: SingleSetStructure, p: int) -> CheckReport:
    """Every cell of level ``k > p`` with an invertible shell is invertible."""
    if not (0 <= p <= S.dim):
        raise StructureError(f"p={p} out of range 0..{S.dim}")
    law = Law("NP.shell-inverse", "np", _np_instances(p),
              lambda S, x, k, i: ri_inverse(S, i, x) is not None, AXIOM)
    return law.run(S)


# -- constructive synthesis -------------------------------------------------

def sym_chain(S, top, j, x):
    """``s_{top-1} ... s_j x`` (``s_j`` applied first)."""
    for m in range(j, top):
        x = S.s(m, x)
    return x


def inv_sym_chain(S, top, j, y):
    """``s~_j ... s~_{top-1} y`` (``s~_{top-1}`` applied first)."""
    for m in range(top - 1, j - 1, -1):
        y = S.t(m, y)
    return y


class InverseSynthesizer:
    """Memoized inductive construction of inverses, one instance per structure."""

    def __init__(self, S: SingleSetStructure):
        self.S = S
        self.memo = {}

    def __call__(self, i: int, x: int) -> InverseCertificate:
        _check_direction(self.S, i)
        key = (i, x)
        if key not in self.memo:
            self.memo[key] = self._build(i, x)
        return self.memo[key]

    def _build(self, i, x):
        S = self.S
        k = level(S, x)
        if i > k:
            return InverseCertificate(i, x, x, evidence(S, i, x, x))
        shell = []
        for j in range(1, k + 1):
            if j == i:
                continue
            for a in SIGNS:
                face = S.d(j, a, x)
                w = sym_chain(S, k, j, face)
                y = self(i - 1 if j < i else i, w).inverse
                z = inv_sym_chain(S, k, j, y)
                if not all(evidence(S, i, face, z)):
                    raise NotOmegaZero(
                        f"conjugated inverse of face d{j}{a} of {S.label(x)} fails in direction {i}",
                        i, face)
                shell.append((j, a, face, z))
        for y in upper_fixed(S, k):
            if any(S.d(i, a, y) != S.d(i, neg(a), x) for a in SIGNS):
                continue
            if any(S.d(j, a, y) != z for j, a, _, z in shell):
                continue
            ev = evidence(S, i, x, y)
            if all(ev):
                return InverseCertificate(i, x, y, ev, tuple(shell))
        raise NotOmegaZero(f"{S.label(x)} has an invertible shell but no inverse in direction {i}", i, x)


def synthesize_inverse_dim0(S: SingleSetStructure, i: int, x: int,
                            synthesizer: Optional[InverseSynthesizer] = None) -> InverseCertificate:
    if S.dim > 1 and not S.sym:
        raise StructureError("synthesis needs symmetry tables")
    return (synthesizer or InverseSynthesizer(S))(i, x)


# -- compatibility lemmas ---------------------------------------------------

def _inv_laws():
    def inv(S):
        if S not in _TABLES:
            _TABLES[S] = inverse_table(S, strict=False)
        return _TABLES[S]

    def r(S, i, x):
        # missing inverses make the predicate raise, which counts as failure
        y = inv(S)[i][x]
        if y is None:
            raise KeyError(x)
        return y

    def invertible(S, i):
        return [x for x in S.cells if inv(S)[i][x] is not None]

    def inv_pairs(S, i, j):
        row = inv(S)[i]
        return [(x, y) for (x, y) in sorted(S.comp[j]) if row[x] is not None and row[y] is not None]

    def dirs(S):
        return range(1, S.dim + 1)

    def sdirs(S):
        return range(1, S.dim)

    laws = [
        Law("INV.i-face-same", "inverse",
            lambda S: (((x,), {"i": i, "a": a}) for i in dirs(S) for a in SIGNS for x in invertible(S, i)),
            lambda S, x, i, a: S.d(i, a, r(S, i, x)) == S.d(i, neg(a), x), THEOREM),
        Law("INV.i-face-other", "inverse",
            lambda S: (((x,), {"i": i, "j": j, "a": a}) for i in dirs(S) for j in dirs(S) if j != i
                       for a in SIGNS for x in invertible(S, i)),
            lambda S, x, i, j, a: S.d(j, a, r(S, i, x)) == r(S, i, S.d(j, a, x)), THEOREM),
        Law("INV.ii-comp-same", "inverse",
            lambda S: ((p, {"i": i}) for i in dirs(S) for p in inv_pairs(S, i, i)),
            lambda S, x, y, i: r(S, i, S.c(i, x, y)) == S.c(i, r(S, i, y), r(S, i, x)), THEOREM),
        Law("INV.ii-comp-other", "inverse",
            lambda S: ((p, {"i": i, "j": j}) for i in dirs(S) for j in dirs(S) if j != i
                       for p in inv_pairs(S, i, j)),
            lambda S, x, y, i, j: r(S, i, S.c(j, x, y)) == S.c(j, r(S, i, x), r(S, i, y)), THEOREM),
        Law("INV.iii-sym-below", "inverse",
            lambda S: (((x,), {"i": i}) for i in range(2, S.dim + 1)
                       for x in invertible(S, i) if S.fixed(i - 1, x)),
            lambda S, x, i: r(S, i, S.s(i - 1, x)) == S.s(i - 1, x), THEOREM),
        # restricted to j outside {i-1, i}: see the decisions ledger
        Law("INV.iii-sym", "inverse",
            lambda S: (((y,), {"i": i, "j": j}) for i in dirs(S) for j in sdirs(S) if j not in (i - 1, i)
                       for y in invertible(S, i) if S.fixed(j, y)),
            lambda S, y, i, j: r(S, i, S.s(j, y)) == S.s(j, r(S, i, y)), THEOREM),
        Law("INV.iv-inv-sym-same", "inverse",
            lambda S: (((x,), {"i": i}) for i in sdirs(S) for x in invertible(S, i) if S.fixed(i + 1, x)),
            lambda S, x, i: r(S, i, S.t(i, x)) == S.t(i, x), THEOREM),
        Law("INV.iv-inv-sym", "inverse",
            lambda S: (((y,), {"i": i, "j": j}) for i in dirs(S) for j in sdirs(S) if j not in (i - 1, i)
                       for y in invertible(S, i) if S.fixed(j + 1, y)),
            lambda S, y, i, j: r(S, i, S.t(j, y)) == S.t(j, r(S, i, y)), THEOREM),
        Law("INV.v-conn", "inverse",
            lambda S: (((x,), {"i": i, "j": j, "a": a}) for i in dirs(S) for j in sdirs(S)
                       if i not in (j, j + 1) for a in SIGNS
                       for x in invertible(S, i) if S.fixed(j, x)),
            lambda S, x, i, j, a: r(S, i, S.g(j, a, x)) == S.g(j, a, r(S, i, x)), THEOREM, True),
        Law("INV.stability", "inverse",
            lambda S: (((x,), {"i": i}) for i in dirs(S) for x in invertible(S, i)),
            lambda S, x, i: level(S, r(S, i, x)) <= level(S, x), THEOREM),
    ]
    return laws


_TABLES = weakref.WeakKeyDictionary()
INVERSE_LAWS = _inv_laws()


def check_inverse_lemmas(S: SingleSetStructure, threads: int = 1) -> CheckReport:
    laws = INVERSE_LAWS
    notes = []
    if not S.has_connections:
        laws = [l for l in laws if not l.needs_connections]
        notes.append("inverse: connection items skipped (no connections)")
    report = run_laws(S, laws, threads)
    report.notes.extend(notes)
    return report
