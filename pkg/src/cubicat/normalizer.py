"""Rewriting words of classical structural maps to normal form.

A word is a sequence of tokens ``d<i><sign>`` (face), ``e<i>``
(degeneracy) and ``g<i><sign>`` (connection), applied rightmost first.  The
dimension index of each map is implicit; it is recovered by scanning the
word from the right starting at a given level.

Rules act on adjacent pairs ``[A, B]`` (``A`` applied after ``B``).  Normal
forms are a block of degeneracies, then connections, then faces.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, NamedTuple, Optional

from .classical import ClassicalStructure
from .core import MINUS, PLUS, SIGNS, StructureError
from .laws import AXIOM, INCOMPLETE, CheckReport, Violation

FACE, DEG, CONN = "d", "e", "g"


class LevelError(StructureError):
    pass


class Token(NamedTuple):
    kind: str
    index: int
    sign: Optional[str] = None

    def __str__(self):
        return f"{self.kind}{self.index}{self.sign or ''}"


def d(i, a):
    return Token(FACE, i, a)


def e(i):
    return Token(DEG, i)


def g(i, a):
    return Token(CONN, i, a)


def parse_word(text: str) -> tuple:
    """``"d1- e2 g1+"``; ``id`` or an empty string is the empty word."""
    out = []
    for tok in text.split():
        if tok == "id":
            continue
        kind, body = tok[0], tok[1:]
        sign = None
        if kind in (FACE, CONN):
            if not body or body[-1] not in SIGNS:
                raise StructureError(f"token {tok!r} needs a trailing + or -")
            body, sign = body[:-1], body[-1]
        elif kind != DEG:
            raise StructureError(f"unknown token {tok!r}")
        if not body.isdigit() or int(body) < 1:
            raise StructureError(f"bad index in token {tok!r}")
        out.append(Token(kind, int(body), sign))
    return tuple(out)


def format_word(word) -> str:
    return " ".join(str(t) for t in word) if word else "id"


# -- levels ---------------------------------------------------------------------

def step_level(tok: Token, m: int) -> Optional[int]:
    """Level after applying ``tok`` at level ``m``, or ``None`` if ill-leveled."""
    if tok.kind == FACE:
        return m - 1 if tok.index <= m else None
    if tok.kind == DEG:
        return m + 1 if tok.index <= m + 1 else None
    return m + 1 if tok.index <= m else None


def level_trace(word, level: int) -> list:
    """Levels before each token, rightmost token first; raises on ill-leveled words."""
    trace, m = [], level
    for tok in reversed(word):
        nxt = step_level(tok, m)
        if nxt is None:
            raise LevelError(f"token {tok} cannot act at level {m}")
        trace.append(m)
        m = nxt
    return trace


def output_level(word, level: int) -> int:
    m = level
    for tok in reversed(word):
        nxt = step_level(tok, m)
        if nxt is None:
            raise LevelError(f"token {tok} cannot act at level {m}")
        m = nxt
    return m


def well_leveled(word, level: int) -> bool:
    try:
        output_level(word, level)
        return True
    except LevelError:
        return False


# -- rules ---------------------------------------------------------------------

@dataclass(frozen=True)
class Rule:
    name: str
    rewrite: Callable  # (left, right) -> replacement tuple, or None if no match


def _face_deg(a, b):
    if a.kind == FACE and b.kind == DEG:
        i, j = a.index, b.index
        if i < j:
            return (e(j - 1), a)
        if i == j:
            return ()
        return (e(j), d(i - 1, a.sign))
    return None


def _face_conn(a, b):
    if a.kind == FACE and b.kind == CONN:
        i, j = a.index, b.index
        if i < j:
            return (g(j - 1, b.sign), a)
        if i > j + 1:
            return (g(j, b.sign), d(i - 1, a.sign))
        if a.sign == b.sign:
            return ()
        return (e(j), d(j, a.sign))
    return None


def _face_face(a, b):
    if a.kind == FACE and b.kind == FACE and a.index < b.index:
        return (d(b.index - 1, b.sign), a)
    return None


def _deg_deg(a, b):
    if a.kind == DEG and b.kind == DEG and a.index <= b.index:
        return (e(b.index + 1), a)
    return None


def _conn_conn(a, b):
    if a.kind == CONN and b.kind == CONN:
        if a.index < b.index:
            return (g(b.index + 1, b.sign), a)
        if a.index == b.index and a.sign == b.sign:
            return (g(a.index + 1, a.sign), a)
    return None


def _conn_deg(a, b):
    if a.kind == CONN and b.kind == DEG:
        i, j = a.index, b.index
        if i < j:
            return (e(j + 1), a)
        if i == j:
            return (e(i), e(i))
        return (e(j), g(i - 1, a.sign))
    return None


def default_rules() -> tuple:
    return (
        Rule("face-deg", _face_deg),
        Rule("face-conn", _face_conn),
        Rule("face-face", _face_face),
        Rule("deg-deg", _deg_deg),
        Rule("conn-conn", _conn_conn),
        Rule("conn-deg", _conn_deg),
    )


def rewrites(word, rules) -> list:
    """All one-step rewrites ``(position, rule name, result)``."""
    out = []
    for p in range(len(word) - 1):
        for rule in rules:
            rep = rule.rewrite(word[p], word[p + 1])
            if rep is not None:
                out.append((p, rule.name, word[:p] + tuple(rep) + word[p + 2:]))
    return out


def measure(word) -> tuple:
    """Termination measure, compared lexicographically; every rule lowers it."""
    face_before_other = conns = conn_before_deg = 0
    for p, a in enumerate(word):
        if a.kind == CONN:
            conns += 1
        for b in word[p + 1:]:
            if a.kind == FACE and b.kind != FACE:
                face_before_other += 1
            if a.kind == CONN and b.kind == DEG:
                conn_before_deg += 1
    face_sum = sum(t.index for t in word if t.kind == FACE)
    other_sum = sum(t.index for t in word if t.kind != FACE)
    return (face_before_other, conns, conn_before_deg, len(word), face_sum, -other_sum)


def normalize(word, level: int, rules=None) -> tuple:
    """Leftmost rewriting to normal form; ``word`` must be well-leveled at ``level``."""
    rules = default_rules() if rules is None else rules
    word = tuple(word)
    level_trace(word, level)
    while True:
        steps = rewrites(word, rules)
        if not steps:
            return word
        nxt = steps[0][2]
        assert measure(nxt) < measure(word), f"rule {steps[0][1]} does not decrease the measure on {word}"
        word = nxt


def is_normal_form(word, rules=None) -> bool:
    return not rewrites(tuple(word), default_rules() if rules is None else rules)


# -- semantics -------------------------------------------------------------------

def _coord_map(tok: Token, m: int):
    """For a token at input level ``m``: output vertex -> input vertex."""
    i = tok.index
    if tok.kind == FACE:
        a = 0 if tok.sign == MINUS else 1
        return lambda u: u[:i - 1] + (a,) + u[i - 1:]
    if tok.kind == DEG:
        return lambda u: u[:i - 1] + u[i:]
    pick = min if tok.sign == PLUS else max
    return lambda u: u[:i - 1] + (pick(u[i - 1], u[i]),) + u[i + 1:]


def word_meaning(word, level: int):
    """``(level, output level, vertex map)``: the map on cube vertices the word denotes.

    On a nerve every structural map is precomposition with a map of cube
    vertices, so two words agree on every nerve iff their vertex maps agree.
    """
    m = level
    phi = {u: u for u in product((0, 1), repeat=level)}
    for tok in reversed(tuple(word)):
        nxt = step_level(tok, m)
        if nxt is None:
            raise LevelError(f"token {tok} cannot act at level {m}")
        tau = _coord_map(tok, m)
        phi = {u: phi[tau(u)] for u in product((0, 1), repeat=nxt)}
        m = nxt
    return level, m, tuple(sorted(phi.items()))


def words_equal_oracle(w1, w2, level: int) -> bool:
    return word_meaning(w1, level) == word_meaning(w2, level)


def eval_word(C: ClassicalStructure, word, level: int, a: int) -> int:
    """Apply the word's maps to the level-``level`` cell ``a`` of ``C``."""
    if not (0 <= level <= C.top):
        raise LevelError(f"level {level} outside 0..{C.top}")
    if not (0 <= a < C.size(level)):
        raise StructureError(f"unknown level-{level} cell {a!r}")
    m, x = level, a
    for tok in reversed(tuple(word)):
        nxt = step_level(tok, m)
        if nxt is None:
            raise LevelError(f"token {tok} cannot act at level {m}")
        if nxt > C.top:
            raise LevelError(f"token {tok} leaves the structure's levels 0..{C.top}")
        if tok.kind == FACE:
            x = C.f(m, tok.index, tok.sign, x)
        elif tok.kind == DEG:
            x = C.e(nxt, tok.index, x)
        else:
            if not C.has_connections:
                raise StructureError("structure has no connections")
            x = C.G(nxt, tok.index, tok.sign, x)
        m = nxt
    return x


# -- enumeration and confluence ---------------------------------------------------

def alphabet(m: int) -> list:
    """Tokens that can act at level ``m``."""
    toks = [d(i, a) for i in range(1, m + 1) for a in SIGNS]
    toks += [e(i) for i in range(1, m + 2)]
    toks += [g(i, a) for i in range(1, m + 1) for a in SIGNS]
    return toks


def leveled_words(max_len: int, level: int, max_level: int) -> list:
    """Words of length <= max_len at ``level`` whose levels stay within 0..max_level."""
    out = [()]

    def grow(word, m):
        if len(word) == max_len:
            return
        for tok in alphabet(m):
            nxt = step_level(tok, m)
            if nxt is not None and 0 <= nxt <= max_level:
                w = (tok,) + word
                out.append(w)
                grow(w, nxt)

    grow((), level)
    return sorted(out, key=lambda w: (len(w), [str(t) for t in w]))


def all_normal_forms(word, rules, memo=None) -> frozenset:
    """Every normal form reachable from ``word`` under any strategy."""
    memo = {} if memo is None else memo
    word = tuple(word)
    if word in memo:
        return memo[word]
    steps = rewrites(word, rules)
    if not steps:
        result = frozenset([word])
    else:
        result = frozenset().union(*(all_normal_forms(w, rules, memo) for _, _, w in steps))
    memo[word] = result
    return result


def _witness(word, level):
    return (format_word(word),)


def check_confluence(rules=None, max_len: int = 4, max_level: int = 3,
                     unique_normal_forms: bool = False) -> CheckReport:
    """Bounded audit of the rule set against the vertex-map oracle.

    Reports words whose rewriting is unsound (``RW.unsound``), words with
    oracle-distinct normal forms (``RW.distinct-normal-forms``) and words
    with several oracle-equal normal forms (``RW.orientation-incomplete``).
    With ``unique_normal_forms`` it also reports oracle-equal words that
    reach different normal forms, under the same incompleteness id.
    """
    if max_len > 6 or max_level > 4:
        raise StructureError("confluence audit budget is max_len <= 6, max_level <= 4")
    rules = default_rules() if rules is None else rules
    report = CheckReport()
    violations = []
    for level in range(max_level + 1):
        memo = {}
        classes = {}
        for word in leveled_words(max_len, level, max_level):
            report.checked_count += 1
            meaning = word_meaning(word, level)
            nfs = all_normal_forms(word, rules, memo)
            params = (("level", level),)
            nf_meanings = {}
            for nf in nfs:
                try:
                    nf_meanings[nf] = word_meaning(nf, level)
                except LevelError:
                    nf_meanings[nf] = None
            if any(mn != meaning for mn in nf_meanings.values()):
                violations.append(Violation("RW.unsound", _witness(word, level), params, AXIOM))
            distinct = set(nf_meanings.values())
            if len(nfs) > 1:
                if len(distinct) > 1:
                    violations.append(Violation("RW.distinct-normal-forms", _witness(word, level), params, AXIOM))
                else:
                    violations.append(Violation("RW.orientation-incomplete", _witness(word, level), params,
                                                INCOMPLETE))
            classes.setdefault(meaning, set()).update(nfs)
        for meaning, nfs in classes.items():
            if unique_normal_forms and len(nfs) > 1:
                names = tuple(sorted(format_word(w) for w in nfs))
                violations.append(Violation("RW.orientation-incomplete", names, (("level", level),), INCOMPLETE))
    report.violations = sorted(set(violations))
    for v in report.violations:
        report.counts[v.axiom_id] = report.counts.get(v.axiom_id, 0) + 1
    return report
