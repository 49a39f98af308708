"""Standard modules and the descriptor language."""

import json

import pytest

from oracles import brute_is_isomorphic
from hallcluster.catalog import (
    injective,
    interval_module,
    kron_v,
    kronecker_catalog,
    parse_module,
    projective,
    simple,
    type_a_indecomposables,
)
from hallcluster.finfield import make_field
from hallcluster.quiver import kronecker, principal_framing, type_a
from hallcluster.reps import RepresentationError, end_dim, is_indecomposable, is_injective, socle_dim

F2, F4 = make_field(2, 1), make_field(2, 2)
KRON = kronecker()
A3 = principal_framing(type_a("<>"))


def test_kronecker_forms():
    assert parse_module("M(2)", KRON, F2).dims == (1, 2)
    assert parse_module("N(3)", KRON, F2).dims == (3, 2)
    assert parse_module("R(2)@lambda=1", KRON, F2).dims == (2, 2)
    assert parse_module("R(1)@lambda=inf", KRON, F2).maps == (((0,),), ((1,),))


def test_simples_are_n1_m1():
    assert brute_is_isomorphic(parse_module("S1", KRON, F2), parse_module("N(1)", KRON, F2))
    assert brute_is_isomorphic(parse_module("S2", KRON, F2), parse_module("M(1)", KRON, F2))


def test_v_modules():
    assert kron_v(KRON, F2, 1) is None and kron_v(KRON, F2, 2) is None
    assert kron_v(KRON, F2, 5).dims == (3, 2)
    assert kron_v(KRON, F2, -2).dims == (2, 3)
    with pytest.raises(ValueError):
        parse_module("V(1)", KRON, F2)


def test_catalog_sizes():
    # M(1), M(2), N(1), N(2) and one R(1) per point of P^1(F_Q)
    assert len(kronecker_catalog(KRON, F2, (2, 2))) == 4 + 3
    assert len(kronecker_catalog(KRON, F4, (2, 2))) == 4 + 5
    assert set(kronecker_catalog(KRON, F2, (3, 3))) >= {"M(3)", "N(3)"}


def test_catalog_entries_indecomposable_and_distinct():
    cat = list(kronecker_catalog(KRON, F2, (2, 2)).values())
    assert all(is_indecomposable(M) for M in cat)
    for i, M in enumerate(cat):
        for N in cat[i + 1:]:
            assert not brute_is_isomorphic(M, N)


def test_type_a_intervals():
    mods = type_a_indecomposables(A3, F2)
    assert len(mods) == 6
    assert all(end_dim(M) == 1 for M in mods)
    assert parse_module("[1,3]", A3, F2).dims == interval_module(A3, F2, 0, 2).dims == (1, 1, 1, 0, 0, 0)


@pytest.mark.parametrize("q", [KRON, A3])
def test_projectives_injectives(q):
    for i in range(q.m):
        I = injective(q, F2, i)
        assert is_injective(I)
        assert socle_dim(I) == simple(q, F2, i).dims
        assert is_indecomposable(projective(q, F2, i))


def test_kronecker_projective_injective():
    assert projective(KRON, F2, 0).dims == (1, 2)
    assert injective(KRON, F2, 1).dims == (2, 1)


def test_json_descriptor():
    M = parse_module("M(2)", KRON, F2)
    assert parse_module(json.dumps(M.to_json()), KRON, F2) == M
    assert parse_module(M.to_json(), KRON, F2) == M


@pytest.mark.parametrize("bad", ["", "X1", "M", "R(1)", "R(1)@lambda=7", "S9", "M(0)"])
def test_bad_descriptors(bad):
    with pytest.raises((ValueError, RepresentationError)):
        parse_module(bad, KRON, F2)


def test_kronecker_forms_need_kronecker():
    with pytest.raises(RepresentationError):
        parse_module("M(1)", A3, F2)
