import random
from itertools import product

import pytest

import oracle
from cubicat.core import replace_tables, same_tables
from cubicat.laws import (LAWS, THEOREM, ConfigurationError, check_all, check_category_axioms,
                          check_connection_axioms, check_cubical_axioms, check_derived_lemmas,
                          laws_of, reevaluate)
from cubicat.models import base_category, cube_nerve, mutate, random_mutation

SUITES = (check_category_axioms, check_cubical_axioms, check_connection_axioms, check_derived_lemmas)


@pytest.mark.parametrize("suite", SUITES, ids=lambda f: f.__name__)
@pytest.mark.parametrize("name", ["groupoid2", "chain2", "discrete2", "terminal2"])
def test_fixtures_satisfy_every_suite(small_fixtures, name, suite):
    report = suite(small_fixtures[name])
    assert report.violations == []
    assert report.checked_count > 0


def test_groupoid3_satisfies_every_suite(groupoid3):
    report = check_all(groupoid3)
    assert report.violations == []
    assert report.checked_count > 1_000_000


def test_axiom_i_instance_count(groupoid2):
    # 16 cells times ordered pairs i != j times two signs each
    assert check_cubical_axioms(groupoid2).counts["SSCC.i-face-commute"] == 16 * 2 * 4


def _labelings(S):
    return [oracle.as_labeling(lab, S.dim) for lab in S.labels]


def test_face_of_composite_instance_count(groupoid2):
    cells = _labelings(groupoid2)
    pairs = {i: sum(oracle.paste(x, y, i) is not None for x in cells for y in cells) for i in (1, 2)}
    # per composition direction: the other direction and two signs
    expected = sum(pairs[i] * 1 * 2 for i in (1, 2))
    assert check_cubical_axioms(groupoid2).counts["SSCC.ii-face-comp"] == expected


def test_interchange_counts_composable_quadruples_only(groupoid2):
    cells = _labelings(groupoid2)

    def ok(x, y, i):
        return oracle.paste(x, y, i) is not None

    quads = sum(ok(w, x, 1) and ok(y, z, 1) and ok(w, y, 2) and ok(x, z, 2)
                for w, x, y, z in product(cells, repeat=4))
    assert check_cubical_axioms(groupoid2).counts["SSCC.iii-interchange"] == quads


def test_connection_suite_needs_connections():
    S = cube_nerve(base_category("pair_groupoid", 2), 2, with_connections=False)
    with pytest.raises(ConfigurationError):
        check_connection_axioms(S)
    assert check_all(S).passed


def test_sym_and_inv_sym_coincide_on_nerves(groupoid3):
    # the nerve's reverse symmetry is the same transposition, so swapping is a no-op
    S = groupoid3
    swapped = replace_tables(S, sym={**S.sym, 1: S.inv_sym[1]}, inv_sym={**S.inv_sym, 1: S.sym[1]})
    assert same_tables(swapped, S)


def test_exchanged_symmetries_break_face_shift(groupoid3):
    S = groupoid3
    M = replace_tables(S, sym={1: S.sym[2], 2: S.sym[1]})
    ids = check_cubical_axioms(M).ids()
    assert {"SSCC.vi-face-sym-shift", "SSCC.vii-sym-comp-next"} <= ids


def test_opposite_connection_breaks_zigzag(groupoid2):
    S = groupoid2
    M = replace_tables(S, conn={(1, "+"): S.conn[(1, "-")], (1, "-"): S.conn[(1, "-")]})
    ids = check_connection_axioms(M).ids()
    assert {"CONN.iv-zigzag1", "CONN.iv-zigzag2"} <= ids


def test_yang_baxter_on_doubly_fixed_cells(groupoid3):
    S = groupoid3
    fixed12 = [x for x in S.cells if S.fixed(1, x) and S.fixed(2, x)]
    assert fixed12
    for x in fixed12:
        assert S.s(1, S.s(2, S.s(1, x))) == S.s(2, S.s(1, S.s(2, x)))
    assert check_derived_lemmas(S).counts["SYM.L0-iii-yang-baxter"] == len(fixed12)


def test_reverse_symmetry_fixes_cells_fixed_in_both(groupoid3):
    S = groupoid3
    for i in (1, 2):
        for x in S.cells:
            if S.fixed(i, x) and S.fixed(i + 1, x):
                assert S.t(i, x) == x


def test_derived_laws_are_theorem_severity():
    assert {law.severity for law in laws_of("derived")} == {THEOREM}


def test_violations_reproduce_on_reevaluation(groupoid2):
    rng = random.Random(7)
    for _ in range(10):
        M = mutate(groupoid2, *random_mutation(groupoid2, rng))
        report = check_all(M)
        assert report.violations
        assert all(reevaluate(M, v) for v in report.violations)


def test_report_independent_of_thread_count(groupoid2):
    M = mutate(groupoid2, ("comp", 1, next(iter(groupoid2.comp[1]))), 3)
    assert check_all(M, threads=1).to_dict() == check_all(M, threads=4).to_dict()


def test_law_ids_are_unique_and_namespaced():
    prefixes = {"CAT", "SSCC", "CONN", "SYM", "INVSYM", "CONNL", "INV"}
    assert all(law_id.split(".")[0] in prefixes for law_id in LAWS)


def test_violation_describe_uses_labels(groupoid2):
    S = groupoid2
    x = S.index("a,b,a,b")
    M = mutate(S, ("face", (2, "+"), x), x)
    report = check_cubical_axioms(M)
    assert any("a,b,a,b" in v.describe(S.label) for v in report.violations)
    doc = report.to_dict(S.label)
    assert doc["passed"] is False and doc["violations"][0]["axiom_id"]
