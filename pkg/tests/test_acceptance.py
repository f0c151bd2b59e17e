"""Acceptance criteria, one check per criterion.

Each check returns ``(passed, detail)``; the test prints one line per
criterion and the lines are repeated in the pytest terminal summary.  Run
this file directly to print the lines without pytest.
"""
import random
import time
from itertools import combinations

import pytest

from cubicat.classical import check_classical_axioms, validate_classical
from cubicat.core import fixed_point_lattice, truncate
from cubicat.equivalence import check_eta, check_inverse_transport, check_mu, fc, fs, np_correspondence
from cubicat.inverses import InverseSynthesizer, check_inverse_lemmas, check_np, inverse_table
from cubicat.laws import (check_all, check_category_axioms, check_connection_axioms,
                          check_cubical_axioms, check_derived_lemmas)
from cubicat.models import base_category, cube_nerve, mutate, random_mutation, terminal
from cubicat.normalizer import check_confluence, eval_word, leveled_words, normalize

RESULTS = []


def groupoid(n):
    return cube_nerve(base_category("pair_groupoid", 2), n)


def fixtures():
    return {
        "groupoid n=2": groupoid(2),
        "groupoid n=3": groupoid(3),
        "discrete n=2": cube_nerve(base_category("discrete", 2), 2),
        "chain n=2": cube_nerve(base_category("chain_poset", 2), 2),
        "terminal n=2": terminal(2),
    }


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def four_suites(S):
    report = check_category_axioms(S)
    for suite in (check_cubical_axioms, check_connection_axioms, check_derived_lemmas):
        report = report.merge(suite(S))
    return report


def criterion_1():
    r2, t2 = timed(four_suites, groupoid(2))
    r3, t3 = timed(four_suites, groupoid(3))
    ok = r2.passed and r3.passed and t2 < 10 and t3 < 120
    return ok, (f"n=2: {len(r2.violations)} violations / {r2.checked_count} instances in {t2:.2f}s; "
                f"n=3: {len(r3.violations)} / {r3.checked_count} in {t3:.1f}s")


def criterion_2():
    bad = {}
    for name, S in fixtures().items():
        report = check_derived_lemmas(S).merge(check_inverse_lemmas(S))
        bad[name] = len(report.violations)
    return not any(bad.values()), ", ".join(f"{k}: {v}" for k, v in bad.items())


def criterion_3():
    groupoids = [check_np(groupoid(n), 0) for n in (2, 3)]
    chain = check_np(cube_nerve(base_category("chain_poset", 2), 2), 0)
    ok = all(r.passed for r in groupoids) and len(chain.violations) >= 1
    return ok, (f"groupoid n=2,3: {[len(r.violations) for r in groupoids]} violations; "
                f"chain n=2: {len(chain.violations)} witness(es)")


def _disagreements(S):
    synth, table = InverseSynthesizer(S), inverse_table(S)
    return sum(synth(i, x).inverse != table[i][x] for i in range(1, S.dim + 1) for x in S.cells)


def criterion_4():
    d2 = _disagreements(groupoid(2))
    d3, t3 = timed(_disagreements, groupoid(3))
    ok = d2 == 0 and d3 == 0 and t3 < 60
    return ok, f"n=2: {d2}/32 disagreements; n=3: {d3}/768 in {t3:.1f}s"


def criterion_5():
    bad = {}
    for name, S in fixtures().items():
        C = fc(S)
        classical = check_classical_axioms(C)
        C = validate_classical(C) if classical.passed else C
        back = fs(C) if C.validated else None
        counts = (
            len(check_mu(S).violations),
            len(classical.violations),
            len(check_eta(C).violations) if C.validated else -1,
            len(check_all(back).merge(check_inverse_lemmas(back)).violations) if back else -1,
        )
        bad[name] = counts
    ok = all(c == (0, 0, 0, 0) for c in bad.values())
    return ok, "mu/classical/eta/fs-image: " + ", ".join(f"{k}: {v}" for k, v in bad.items())


def criterion_6():
    G = groupoid(2)
    chain = cube_nerve(base_category("chain_poset", 2), 2)
    transport_g = check_inverse_transport(G, 0)
    transport_c = check_inverse_transport(chain, 0)
    single, classical, mapped = np_correspondence(chain, 0)
    theirs = {(v.bindings["k"], v.bindings["i"], v.cells[0]) for v in classical.violations}
    ok = (transport_g.passed and transport_c.passed and not single.passed
          and not classical.passed and mapped == theirs)
    return ok, (f"groupoid transport: {len(transport_g.violations)} violations; chain: single "
                f"{len(single.violations)}, classical {len(classical.violations)}, "
                f"corresponding {len(mapped & theirs)}")


def _eval_mismatches(C, max_len=4, max_level=3):
    cases = bad = 0
    top = min(max_level, C.top)
    for level in range(top + 1):
        for word in leveled_words(max_len, level, top):
            nf = normalize(word, level)
            for a in C.level_cells(level):
                cases += 1
                bad += eval_word(C, word, level, a) != eval_word(C, nf, level, a)
    return cases, bad


def criterion_7():
    cg, bg = _eval_mismatches(fc(groupoid(3)))
    cc, bc = _eval_mismatches(fc(cube_nerve(base_category("chain_poset", 2), 2)))
    confluence = check_confluence(max_len=4, max_level=3)
    distinct = confluence.counts.get("RW.distinct-normal-forms", 0) + confluence.counts.get("RW.unsound", 0)
    ok = bg == 0 and bc == 0 and confluence.passed
    return ok, (f"groupoid n=3: {bg}/{cg} mismatches; chain n=2: {bc}/{cc}; confluence: "
                f"{distinct} distinct-normal-form words, {len(confluence.violations)} findings "
                f"over {confluence.checked_count} words")


def criterion_8(trials=50, seed=20261019):
    G = groupoid(2)
    rng = random.Random(seed)
    silent = []
    for _ in range(trials):
        loc, value = random_mutation(G, rng)
        M = mutate(G, loc, value)
        if check_all(M).merge(check_inverse_lemmas(M)).passed:
            silent.append((loc, value))
    return not silent, f"{trials - len(silent)}/{trials} mutations detected" + (f", silent: {silent}" if silent else "")


def criterion_9():
    sizes = {"m=2,n=2": len(groupoid(2)), "m=2,n=3": len(groupoid(3)),
             "discrete(2),n=2": len(cube_nerve(base_category("discrete", 2), 2))}
    trunc = [len(truncate(groupoid(2), m)) for m in (0, 1)]
    lattice_ok = True
    for S in (groupoid(2), groupoid(3)):
        nodes, _ = fixed_point_lattice(S)
        for I, J in combinations(nodes, 2):
            for A, B in ((I, J), (J, I)):
                lattice_ok &= (nodes[A] <= nodes[B]) == set(A).issuperset(B)
    ok = list(sizes.values()) == [16, 256, 2] and trunc == [2, 4] and lattice_ok
    return ok, f"cells {sizes}; truncations m=0,1: {trunc}; lattice inclusions exact: {lattice_ok}"


CRITERIA = {
    1: ("axiom soundness of fixtures", criterion_1),
    2: ("derived lemmas on all fixtures", criterion_2),
    3: ("(n,0) positive and negative", criterion_3),
    4: ("constructive inverse equals brute force", criterion_4),
    5: ("equivalence round trips", criterion_5),
    6: ("inverse transport", criterion_6),
    7: ("normalizer soundness and confluence", criterion_7),
    8: ("checker soundness under mutation", criterion_8),
    9: ("counting checks", criterion_9),
}


def line(k, name, ok, detail):
    return f"criterion {k} {'PASS' if ok else 'FAIL'}: {name} ({detail})"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    name, check = CRITERIA[k]
    ok, detail = check()
    text = line(k, name, ok, detail)
    RESULTS.append(text)
    print(text)
    assert ok, text


if __name__ == "__main__":
    for k, (name, check) in sorted(CRITERIA.items()):
        print(line(k, name, *check()), flush=True)
