import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from cubicat.core import StructureError, same_tables
from cubicat.laws import check_all, check_category_axioms, check_cubical_axioms
from cubicat.models import (CellBudgetError, FiniteThinCategory, base_category, cube_nerve, monotone_labelings, mutate,
                            parse_base, random_mutation, read_location, standard_fixtures,
                            table_locations, typed_locations)


def test_arrow_counts():
    assert len(base_category("discrete", 3).arrows) == 3
    assert len(base_category("pair_groupoid", 2).arrows) == 4
    assert len(base_category("chain_poset", 2).arrows) == 3


def test_base_rejects_empty():
    with pytest.raises(StructureError):
        base_category("chain_poset", 0)


def test_parse_base():
    assert parse_base("chain_poset:3").objects == ("0", "1", "2")
    assert len(parse_base("pair_groupoid").objects) == 1
    for bad in ("pair_groupoid:x", "tree:2"):
        with pytest.raises(StructureError):
            parse_base(bad)


@pytest.mark.parametrize("kind,m,n", [("pair_groupoid", 2, 2), ("chain_poset", 2, 2),
                                      ("chain_poset", 3, 2), ("discrete", 2, 3)])
def test_labelings_match_oracle(kind, m, n):
    B = base_category(kind, m)
    ours = {",".join(lab) for lab in monotone_labelings(B, n)}
    theirs = {oracle.as_label(lab, n) for lab in oracle.labelings(B.objects, B.arrow, n)}
    assert ours == theirs


def test_chain_nerve_has_six_cells(chain2):
    # monotone maps from the square to 0 < 1: the up-sets of a 4-element poset
    assert len(chain2) == 6


def test_connection_faces(groupoid2):
    S = groupoid2
    x = S.index("a,b,a,b")
    y = S.g(1, "+", x)
    assert S.d(1, "+", y) == x
    assert S.d(2, "+", y) == S.s(1, x)


def test_budget_is_enforced(monkeypatch):
    # a fresh category, so the nerve cache cannot answer
    B = FiniteThinCategory("pq", ("p", "q"), frozenset({("p", "p"), ("q", "q"), ("p", "q"), ("q", "p")}))
    monkeypatch.setenv("CUBICAT_CELL_BUDGET", "10")
    with pytest.raises(CellBudgetError, match="16"):
        cube_nerve(B, 2)


def test_standard_fixtures_are_validated():
    assert all(S.validated for S in standard_fixtures().values())


def test_mutation_roundtrip(groupoid2):
    S = groupoid2
    loc = ("face", (1, "-"), 5)
    old = read_location(S, loc)
    M = mutate(S, loc, (old + 1) % len(S))
    assert not M.validated
    assert same_tables(mutate(M, loc, old), S)


def test_mutate_rejects_bad_locations(groupoid2):
    with pytest.raises(StructureError):
        mutate(groupoid2, ("face", (3, "-"), 0), 0)
    with pytest.raises(StructureError):
        mutate(groupoid2, ("comp", 1, (0, 15)), 0)
    with pytest.raises(StructureError):
        mutate(groupoid2, ("sym", 1, 0), 16)


def test_face_mutation_is_detected(groupoid2):
    loc = ("face", (1, "-"), 3)
    M = mutate(groupoid2, loc, (read_location(groupoid2, loc) + 1) % 16)
    assert not check_cubical_axioms(M).passed


def test_comp_mutation_is_detected_with_witness(groupoid2):
    S = groupoid2
    x, y = S.index("a,b,a,b"), S.index("b,a,b,a")
    loc = ("comp", 2, (x, y))
    M = mutate(S, loc, S.index("b,b,b,b"))
    report = check_category_axioms(M)
    assert not report.passed
    assert any(x in v.cells and y in v.cells for v in report.violations)


def test_typed_locations_skip_free_entries(groupoid2):
    typed = typed_locations(groupoid2)
    assert len(table_locations(groupoid2)) == 256
    # sym, inv_sym and both connections: 4 tables, 4 typed cells each instead of 16
    assert len(typed) == 256 - 4 * 12
    assert ("sym", 1, groupoid2.index("a,b,b,a")) not in typed


def test_untyped_entries_are_invisible(groupoid2):
    # the axioms never read sym[1] off S^1, so changing it there passes every suite
    S = groupoid2
    x = S.index("a,b,b,a")
    M = mutate(S, ("sym", 1, x), (S.s(1, x) + 1) % 16)
    assert check_all(M).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_random_mutations_are_detected(groupoid2, seed):
    loc, value = random_mutation(groupoid2, random.Random(seed))
    assert not check_all(mutate(groupoid2, loc, value)).passed


def test_single_cell_has_no_mutation(terminal2):
    with pytest.raises(StructureError):
        random_mutation(terminal2, random.Random(0))
