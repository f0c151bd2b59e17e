import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from cubicat import document
from cubicat.classical import same_classical_tables
from cubicat.core import same_tables
from cubicat.document import DocumentError
from cubicat.equivalence import fc
from cubicat.models import base_category, cube_nerve, mutate, random_mutation


@pytest.mark.parametrize("name", ["groupoid2", "chain2", "discrete2", "terminal2"])
def test_single_set_round_trip(small_fixtures, name):
    S = small_fixtures[name]
    T = document.loads(document.dumps(S))
    assert same_tables(T, S)
    assert T.labels == S.labels and T.meta == S.meta
    assert not T.validated


def test_classical_round_trip(groupoid2):
    C = fc(groupoid2)
    D = document.loads(document.dumps(C))
    assert same_classical_tables(D, C)
    assert D.cells == C.cells


def test_without_connections():
    S = cube_nerve(base_category("chain_poset", 2), 2, with_connections=False)
    doc = document.to_document(S)
    assert doc["conn"] is None
    assert not document.from_document(doc).has_connections


def test_file_round_trip(tmp_path, groupoid2):
    path = tmp_path / "g.json"
    document.dump(groupoid2, path)
    assert same_tables(document.load(path), groupoid2)


def test_output_is_deterministic(groupoid2):
    assert document.dumps(groupoid2) == document.dumps(document.loads(document.dumps(groupoid2)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_raw_structures_round_trip(groupoid2, seed):
    M = mutate(groupoid2, *random_mutation(groupoid2, random.Random(seed)))
    assert same_tables(document.loads(document.dumps(M)), M)


def _doc(S):
    return json.loads(document.dumps(S))


def test_bad_json_reports_position():
    with pytest.raises(DocumentError, match="line 1 column"):
        document.loads("{")


def test_schema_errors_name_the_path(groupoid2):
    doc = _doc(groupoid2)
    doc["face"]["1,-"]["a,a,a,a"] = 3
    with pytest.raises(DocumentError, match="face/1,-/a,a,a,a"):
        document.from_document(doc)
    with pytest.raises(DocumentError, match="required property"):
        document.from_document({"kind": "single-set"})


def test_missing_table(groupoid2):
    doc = _doc(groupoid2)
    del doc["sym"]["1"]
    with pytest.raises(DocumentError, match=r"sym\[1\]: missing table"):
        document.from_document(doc)


def test_missing_entry(groupoid2):
    doc = _doc(groupoid2)
    del doc["face"]["2,+"]["a,b,a,b"]
    with pytest.raises(DocumentError, match=r"face\[2,\+\]: no entry for cell 'a,b,a,b'"):
        document.from_document(doc)


def test_unknown_target(groupoid2):
    doc = _doc(groupoid2)
    doc["face"]["2,+"]["a,b,a,b"] = "z"
    with pytest.raises(DocumentError, match="unknown cell 'z'"):
        document.from_document(doc)


def test_unknown_partial_key(groupoid2):
    doc = _doc(groupoid2)
    doc["comp"]["1"]["z|a,a,a,a"] = "a,a,a,a"
    with pytest.raises(DocumentError, match="unknown cell 'z'"):
        document.from_document(doc)


def test_classical_level_count(groupoid2):
    doc = _doc(fc(groupoid2))
    doc["cells"].pop()
    with pytest.raises(DocumentError, match="levels"):
        document.from_document(doc)


def test_schema_ships_with_package():
    assert document.schema()["properties"]["schema"]["const"] == document.SCHEMA_ID
