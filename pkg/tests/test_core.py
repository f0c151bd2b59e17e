from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from cubicat.core import (Generator, SingleSetStructure, StructureError, apply_word, comp, composable,
                          dimension, fixed_point_lattice, fixed_set, is_fixed, level, same_tables,
                          truncate, upper_fixed)
from cubicat.models import base_category, cube_nerve

G_CELLS = oracle.labelings("ab", lambda a, b: True, 2)


def lab(S, x):
    return oracle.as_labeling(S.label(x), S.dim)


def test_terminal_face_is_the_cell(terminal2):
    assert terminal2.d(1, "-", 0) == 0


def test_tables_agree_with_labeling_oracle(groupoid2):
    S = groupoid2
    assert sorted(S.labels) == sorted(oracle.as_label(c, 2) for c in G_CELLS)
    for x in S.cells:
        for i in (1, 2):
            for a in "-+":
                assert lab(S, S.d(i, a, x)) == oracle.face(lab(S, x), i, a)
        assert lab(S, S.s(1, x)) == oracle.swap(lab(S, x), 1)
        for a in "-+":
            assert lab(S, S.g(1, a, x)) == oracle.connection(lab(S, x), 1, a)
        for i in (1, 2):
            for y in S.cells:
                z = oracle.paste(lab(S, x), lab(S, y), i)
                got = comp(S, i, x, y)
                assert (got is None) == (z is None)
                if z is not None:
                    assert lab(S, got) == z


def test_symmetry_example(groupoid2):
    S = groupoid2
    assert S.label(S.s(1, S.index("a,b,a,b"))) == "a,a,b,b"


def test_composition_examples(groupoid2):
    S = groupoid2
    x, y = S.index("a,b,a,b"), S.index("b,a,b,a")
    assert S.label(comp(S, 2, x, y)) == "a,a,a,a"
    assert comp(S, 2, x, x) is None
    assert composable(S, 2, x, y)
    assert not composable(S, 2, x, x)


def test_right_unit_always_composes(groupoid2):
    S = groupoid2
    for x in S.cells:
        for i in (1, 2):
            assert composable(S, i, x, S.d(i, "+", x))
            assert comp(S, i, x, S.d(i, "+", x)) == x


def test_fixed_examples(groupoid2, terminal2):
    S = groupoid2
    x = S.index("a,b,a,b")
    assert is_fixed(S, 1, x) and not is_fixed(S, 2, x)
    assert is_fixed(terminal2, 1, 0)
    for y in S.cells:
        for i in (1, 2):
            for a in "-+":
                assert is_fixed(S, i, S.d(i, a, y))


def test_fixed_set_counts(groupoid2, discrete2):
    assert fixed_set(groupoid2) == frozenset(groupoid2.cells)
    assert len(groupoid2) == 16
    assert len(fixed_set(groupoid2, {1, 2})) == 2
    assert fixed_set(discrete2, {1, 2}) == frozenset(discrete2.cells)
    assert {discrete2.label(x) for x in fixed_set(discrete2, {1, 2})} == {"a,a,a,a", "b,b,b,b"}


def test_fixed_set_via_either_face(groupoid3):
    S = groupoid3
    for i in range(1, 4):
        plus = {x for x in S.cells if S.d(i, "+", x) == x}
        assert fixed_set(S, {i}) == plus


def test_dimension_examples(groupoid2):
    S = groupoid2
    assert dimension(S, S.index("a,b,a,b")) == 1
    assert dimension(S, S.index("a,b,b,a")) == 2
    assert all(dimension(S, x) == 0 for x in fixed_set(S, {1, 2}))
    assert level(S, S.index("a,a,b,b")) == 1


def test_dimension_counts_nonconstant_directions(groupoid3):
    S = groupoid3
    for x in S.cells:
        expected = sum(not oracle.fixed(lab(S, x), i) for i in (1, 2, 3))
        assert dimension(S, x) == expected


def test_truncation_sizes(groupoid2):
    assert same_tables(truncate(groupoid2, 2), groupoid2)
    assert len(truncate(groupoid2, 0)) == 2
    assert len(truncate(groupoid2, 1)) == 4
    with pytest.raises(StructureError):
        truncate(groupoid2, 3)


def test_truncation_composes(groupoid3):
    for m in range(4):
        for k in range(m + 1):
            assert same_tables(truncate(truncate(groupoid3, m), k), truncate(groupoid3, k))


def test_upper_fixed_is_truncation_carrier(groupoid3):
    for k in range(4):
        assert len(upper_fixed(groupoid3, k)) == len(truncate(groupoid3, k))


def test_lattice_inclusions_exact(groupoid3):
    nodes, edges = fixed_point_lattice(groupoid3)
    assert len(nodes) == 8
    for I, J in combinations(nodes, 2):
        for A, B in ((I, J), (J, I)):
            assert (nodes[A] <= nodes[B]) == set(A).issuperset(B)
    assert all(len(big) == len(small) + 1 for big, small in edges)
    assert len(edges) == 12


@settings(max_examples=60, deadline=None)
@given(st.sets(st.integers(1, 3)), st.sets(st.integers(1, 3)))
def test_fixed_set_antitone(groupoid3, I, J):
    if I <= J:
        assert fixed_set(groupoid3, J) <= fixed_set(groupoid3, I)


def test_apply_word_is_rightmost_first(groupoid2):
    S = groupoid2
    x = S.index("a,b,b,a")
    word = [Generator.parse("d1-"), Generator.parse("s1")]
    assert apply_word(S, word, x) == S.d(1, "-", S.s(1, x))


def test_generator_parse_rejects_garbage():
    with pytest.raises(StructureError):
        Generator.parse("q7")


def test_out_of_range_direction_is_named(groupoid2):
    with pytest.raises(StructureError, match="3"):
        apply_word(groupoid2, [Generator.parse("d3-")], 0)


def test_construction_rejects_open_tables():
    with pytest.raises(StructureError):
        SingleSetStructure(labels=("p",), dim=1, face={(1, "-"): [1], (1, "+"): [0]},
                           comp={1: {}}, sym={}, inv_sym={}, conn=None)


def test_cell_counts_closed_form():
    for m, n in ((1, 2), (2, 2), (3, 1), (2, 3)):
        assert len(cube_nerve(base_category("pair_groupoid", m), n)) == m ** (2 ** n)
    assert len(cube_nerve(base_category("discrete", 2), 2)) == 2
