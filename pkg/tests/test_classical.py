import dataclasses

import pytest

import oracle
from cubicat.classical import (GCell, R_inverse, R_shell_invertible, check_classical_axioms,
                               check_classical_np, classical_terminal, validate_classical)
from cubicat.core import StructureError
from cubicat.equivalence import fc


@pytest.fixture(scope="module")
def cgroupoid2(groupoid2):
    return fc(groupoid2)


@pytest.fixture(scope="module")
def cchain2(chain2):
    return fc(chain2)


def _cube(C, k, a):
    return oracle.restrict(C.cells[k][a], C.top, k)


def _cell(C, k, cube):
    return C.index(k, oracle.extend(cube, C.top, k))


def test_level_sizes(cgroupoid2):
    assert [len(level) for level in cgroupoid2.cells] == [2, 4, 16]


def test_face_example(cgroupoid2):
    C = cgroupoid2
    a = C.index(2, "a,b,b,a")
    assert C.cells[1][C.f(2, 1, "-", a)] == "a,a,b,b"


@pytest.mark.parametrize("name", ["cgroupoid2", "cchain2"])
def test_tables_agree_with_cube_oracle(request, name):
    C = request.getfixturevalue(name)
    N = C.top
    for k in range(1, N + 1):
        for i in range(1, k + 1):
            for a in C.level_cells(k):
                for s in "-+":
                    _, face = oracle.apply_tokens(_cube(C, k, a), [("d", i, s)], k)
                    assert C.f(k, i, s, a) == _cell(C, k - 1, face)
            for x in C.level_cells(k - 1):
                _, up = oracle.apply_tokens(_cube(C, k - 1, x), [("e", i, None)], k - 1)
                assert C.e(k, i, x) == _cell(C, k, up)
                if i < k:
                    for s in "-+":
                        _, conn = oracle.apply_tokens(_cube(C, k - 1, x), [("g", i, s)], k - 1)
                        assert C.G(k, i, s, x) == _cell(C, k, conn)
            for a in C.level_cells(k):
                for b in C.level_cells(k):
                    pasted = oracle.paste(_cube(C, k, a), _cube(C, k, b), i)
                    got = C.m(k, i, a, b)
                    assert (got is None) == (pasted is None)
                    if pasted is not None:
                        assert got == _cell(C, k, pasted)


@pytest.mark.parametrize("name", ["cgroupoid2", "cchain2"])
def test_images_satisfy_classical_axioms(request, name):
    report = check_classical_axioms(request.getfixturevalue(name))
    assert report.violations == [] and report.checked_count > 0


def test_terminal_is_valid():
    C = validate_classical(classical_terminal(3))
    assert [len(level) for level in C.cells] == [1, 1, 1, 1]


def test_corrupted_degeneracy_breaks_face_degeneracy(cgroupoid2):
    C = cgroupoid2
    deg = dict(C.deg)
    row = list(deg[(2, 1)])
    row[0], row[1] = row[1], row[0]
    deg[(2, 1)] = row
    report = check_classical_axioms(dataclasses.replace(C, deg=deg))
    assert "CC.vi-face-deg" in report.ids()


def test_non_injective_degeneracy_is_refused(cgroupoid2):
    deg = dict(cgroupoid2.deg)
    deg[(1, 1)] = [0, 0]
    with pytest.raises(StructureError, match="injective"):
        dataclasses.replace(cgroupoid2, deg=deg, raw=False)


def test_degenerate_cells_are_self_inverse(cgroupoid2):
    C = cgroupoid2
    for k in range(1, C.top + 1):
        for i in range(1, k + 1):
            for x in C.level_cells(k - 1):
                a = C.e(k, i, x)
                assert R_inverse(C, k, i, a) == a


def test_inverse_example(cgroupoid2):
    C = cgroupoid2
    b = R_inverse(C, 2, 2, C.index(2, "a,b,a,b"))
    assert C.cells[2][b] == "b,a,b,a"
    assert R_inverse(C, 2, 2, GCell(2, C.index(2, "a,b,a,b"))) == b


def test_strict_edge_has_no_inverse(cchain2):
    C = cchain2
    assert R_inverse(C, 1, 1, C.index(1, "0,0,1,1")) is None
    assert R_inverse(C, 2, 2, C.index(2, "0,1,0,1")) is None


def test_shell_of_strict_edge(cchain2):
    C = cchain2
    assert R_shell_invertible(C, 1, 1, C.index(1, "0,0,1,1"))
    assert not R_shell_invertible(C, 2, 2, C.index(2, "0,1,0,1"))


def test_classical_np(cgroupoid2, cchain2):
    assert check_classical_np(cgroupoid2, 0).passed
    report = check_classical_np(cchain2, 0)
    assert [(v.cells[0], v.bindings) for v in report.violations] == \
        [(GCell(1, cchain2.index(1, "0,0,1,1")), {"i": 1, "k": 1})]
    assert check_classical_np(cchain2, 2).checked_count == 0


def test_level_mismatch(cgroupoid2):
    with pytest.raises(StructureError):
        R_inverse(cgroupoid2, 2, 1, GCell(1, 0))
