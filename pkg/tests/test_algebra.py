from __future__ import annotations

import copy

import pytest

from tauex.algebra import (
    build_path_algebra,
    indecomposable_injectives,
    indecomposable_projectives,
    load_algebra,
    parse_quiver_input,
    validate_algebra,
)
from tauex.errors import (
    AdmissibilityError,
    DimensionNotCertifiedError,
    NonParallelRelationError,
    SchemaError,
)
from tauex.modules import are_isomorphic, hom_dim, is_indecomposable

from conftest import ALL_F2, algebra, fixture_doc, universe


@pytest.mark.parametrize("name,dim", [("a2", 3), ("a3", 6), ("loop2", 2), ("nak3", 6), ("kron", 4)])
def test_fixture_dimensions(name, dim):
    A = algebra(name)
    assert A.dim == dim
    summary = validate_algebra(A)
    assert summary["dim"] == dim and summary["n"] == A.n


def test_a2_basis_labels():
    assert algebra("a2").labels == ("e1", "e2", "a")
    assert algebra("loop2").labels == ("e1", "x")


@pytest.mark.parametrize("name,expected", [
    ("a2", [(1, 1), (0, 1)]),
    ("loop2", [(2,)]),
    ("kron", [(1, 2), (0, 1)]),
])
def test_projective_dimension_vectors(name, expected):
    P = indecomposable_projectives(algebra(name))
    assert [p.dims for p in P] == expected
    assert all(is_indecomposable(p) for p in P)


def test_injectives():
    assert [I.dims for I in indecomposable_injectives(algebra("a2"))] == [(1, 0), (1, 1)]
    L = algebra("loop2")
    assert are_isomorphic(indecomposable_injectives(L)[0], indecomposable_projectives(L)[0])
    N = algebra("nak3")
    assert are_isomorphic(indecomposable_injectives(N)[0], indecomposable_projectives(N)[2])


@pytest.mark.parametrize("name", ALL_F2)
def test_hom_from_projective_counts_vertex_dimension(name):
    A = algebra(name)
    for M in universe(name):
        for i, P in enumerate(indecomposable_projectives(A)):
            assert hom_dim(P, M) == M.dims[i]


def test_schema_errors():
    doc = fixture_doc("a2")
    for broken in ({"vertices": []}, {**doc, "extra": 1}, {**doc, "field": {"kind": "prime", "p": 4}},
                   {**doc, "arrows": [{"name": "a", "from": "1", "to": "9"}]}):
        with pytest.raises(SchemaError):
            parse_quiver_input(broken)
    with pytest.raises(SchemaError):
        parse_quiver_input("{not json")


def test_admissibility_and_parallel_checks():
    doc = fixture_doc("loop2")
    bad = copy.deepcopy(doc)
    bad["relations"] = [[{"coeff": "1", "path": ["x"]}]]
    with pytest.raises(AdmissibilityError):
        parse_quiver_input(bad)
    doc = fixture_doc("a3")
    doc["arrows"] += [{"name": "c", "from": "1", "to": "3"}, {"name": "d", "from": "3", "to": "3"}]
    doc["relations"] = [[{"coeff": "1", "path": ["a", "b"]}, {"coeff": "1", "path": ["c", "d"]}]]
    parse_quiver_input(doc)  # both terms run from 1 to 3
    doc["relations"] = [[{"coeff": "1", "path": ["a", "b"]}, {"coeff": "1", "path": ["b", "d"]}]]
    with pytest.raises(NonParallelRelationError):
        parse_quiver_input(doc)
    doc["relations"] = [[{"coeff": "1", "path": ["c", "c"]}]]
    with pytest.raises(SchemaError):
        parse_quiver_input(doc)

def test_uncertified_dimension():
    doc = fixture_doc("loop2")
    doc["relations"] = []
    doc["nilpotency_bound"] = 5
    with pytest.raises(DimensionNotCertifiedError):
        load_algebra(doc)


def test_commutativity_relation_over_rationals():
    doc = {
        "field": {"kind": "rational"},
        "vertices": ["1", "2", "3", "4"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "4"},
                   {"name": "c", "from": "1", "to": "3"}, {"name": "d", "from": "3", "to": "4"}],
        "relations": [[{"coeff": "1", "path": ["a", "b"]}, {"coeff": "-1", "path": ["c", "d"]}]],
    }
    A = load_algebra(doc)
    assert A.dim == 4 + 4 + 1
    validate_algebra(A)


def test_scaled_relation_kills_path():
    doc = fixture_doc("a3")
    doc["relations"] = [[{"coeff": "2", "path": ["a", "b"]}]]
    doc["field"] = {"kind": "prime", "p": 3}
    assert load_algebra(doc).dim == 5
    doc["field"] = {"kind": "prime", "p": 2}
    # coefficient 2 vanishes mod 2, so the relation is empty and ab survives
    assert load_algebra(doc).dim == 6


def test_default_nilpotency_bound():
    q = parse_quiver_input(fixture_doc("kron"))
    assert q.nilpotency_bound == 20
    assert build_path_algebra(q).dim == 4
