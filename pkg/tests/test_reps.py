import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hallcluster.catalog import (
    injective,
    kron_preinjective,
    kron_preprojective,
    kron_regular,
    kronecker_catalog,
    projective,
    simple,
)
from hallcluster.finfield import CapExceeded, make_field
from hallcluster.quiver import kronecker, principal_framing, reflect_quiver, type_a
from hallcluster.reps import (
    IsoClassTable,
    NotInjective,
    Representation,
    RepresentationError,
    aut_count,
    aut_count_structural,
    bgp_reflect,
    decompose,
    end_dim,
    ext1_dim,
    ext_middle_terms,
    gr_count,
    gr_counts,
    hom_dim,
    hom_space,
    hom_to_injective_strata,
    is_indecomposable,
    is_injective,
    is_isomorphic,
    quotient,
    random_rep,
    restrict,
    socle_dim,
    subrepresentations,
    top_dim,
    zero_rep,
)
from oracles import brute_aut_count, brute_gr_count, brute_hom_dim, brute_is_isomorphic

KQ = kronecker()
A3 = type_a("<>")
F2, F3, F4 = make_field(2), make_field(3), make_field(2, 2)


@st.composite
def kron_reps(draw, field=None, max_dim=2):
    F = field or draw(st.sampled_from([F2, F3]))
    dims = (draw(st.integers(0, max_dim)), draw(st.integers(0, max_dim)))
    seed = draw(st.integers(0, 10**6))
    return random_rep(KQ, F, dims, random.Random(seed))


@st.composite
def a3_reps(draw):
    dims = tuple(draw(st.integers(0, 2)) for _ in range(3))
    return random_rep(A3, F2, dims, random.Random(draw(st.integers(0, 10**6))))


def _random_gl(F, n, rng):
    while True:
        g = [[rng.randrange(F.order) for _ in range(n)] for _ in range(n)]
        from hallcluster.finfield import rank

        if rank(F, g, n) == n:
            return g


def _conjugate(M, rng):
    return M.base_change([_random_gl(M.field, d, rng) for d in M.dims])


# ---------------------------------------------------------------------------
# Hom and Ext


def test_hom_ext_examples():
    S1, S2 = simple(KQ, F2, 0), simple(KQ, F2, 1)
    assert hom_dim(S1, S2) == 0 and ext1_dim(S1, S2) == 2
    assert hom_dim(S2, S1) == 0 and ext1_dim(S2, S1) == 0


@given(kron_reps(), st.data())
def test_hom_dim_matches_enumeration(M, data):
    N = data.draw(kron_reps(field=M.field))
    assert hom_dim(M, N) == brute_hom_dim(M, N)
    assert ext1_dim(M, N) == hom_dim(M, N) - KQ.euler(M.dims, N.dims)


@given(a3_reps(), a3_reps())
def test_hom_dim_matches_enumeration_a3(M, N):
    assert hom_dim(M, N) == brute_hom_dim(M, N)


@given(kron_reps())
def test_identity_is_a_homomorphism(M):
    from hallcluster.reps import hom_data

    F = M.field
    h = hom_data(M, M)
    flat = [int(r == c) for d in M.dims for r in range(d) for c in range(d)]
    for row in h.d_rows:
        acc = 0
        for x, y in zip(row, flat):
            acc = F.add(acc, F.mul(x, y))
        assert acc == 0
    assert len(hom_space(M, M)) == end_dim(M) >= (1 if M.total_dim() else 0)


# ---------------------------------------------------------------------------
# isomorphism and automorphisms


def test_aut_examples():
    S1 = simple(KQ, F2, 0)
    assert aut_count(S1) == 1
    assert aut_count(S1.direct_sum(S1)) == 6
    assert aut_count(zero_rep(KQ, F2)) == 1


def test_regular_points_are_distinct():
    pts = [kron_regular(KQ, F2, 1, lam) for lam in (0, 1, None)]
    for a, b in itertools.product(range(3), repeat=2):
        assert is_isomorphic(pts[a], pts[b]) == (a == b)


@given(kron_reps(max_dim=2))
def test_aut_count_matches_enumeration(M):
    assert aut_count(M) == brute_aut_count(M)
    assert aut_count_structural(M) == brute_aut_count(M)


@given(a3_reps())
def test_aut_count_structural_a3(M):
    assert aut_count_structural(M) == brute_aut_count(M)


@given(kron_reps(), st.integers(0, 10**6))
def test_isomorphism_invariant_under_base_change(M, seed):
    N = _conjugate(M, random.Random(seed))
    assert is_isomorphic(M, N)


@given(kron_reps(field=F2), st.data())
def test_is_isomorphic_matches_enumeration(M, data):
    N = data.draw(kron_reps(field=F2))
    if N.dims == M.dims:
        assert is_isomorphic(M, N) == brute_is_isomorphic(M, N)
    else:
        assert not is_isomorphic(M, N)


@given(kron_reps(max_dim=3), st.integers(0, 10**6))
def test_decomposition_recovers_the_module(M, seed):
    parts = decompose(M)
    assert all(is_indecomposable(X) for X in parts)
    if parts:
        S = parts[0]
        for X in parts[1:]:
            S = S.direct_sum(X)
        assert is_isomorphic(S, _conjugate(M, random.Random(seed)))


def test_iso_class_table():
    t = IsoClassTable()
    pts = [kron_regular(KQ, F3, 1, lam) for lam in (0, 1, 2, None)]
    rng = random.Random(1)
    for P in pts + [_conjugate(P, rng) for P in pts]:
        t.add(P, 1)
    assert len(t) == 4
    assert sorted(v for _, v in t) == [2, 2, 2, 2]
    assert t.find(kron_regular(KQ, F3, 2, 0)) is None


# ---------------------------------------------------------------------------
# Grassmannians


def test_gr_count_examples():
    M2 = kron_preprojective(KQ, F2, 2)
    assert M2.dims == (1, 2)
    assert gr_count(M2, (0, 0)) == 1 and gr_count(M2, (1, 2)) == 1
    assert gr_count(M2, (0, 1)) == 3
    assert gr_count(M2, (1, 1)) == 0
    assert gr_count(kron_preprojective(KQ, F4, 2), (1, 1)) == 0
    assert gr_count(M2, (2, 0)) == 0


@given(kron_reps(max_dim=2))
def test_gr_counts_match_enumeration(M):
    counts = gr_counts(M)
    for e in itertools.product(*[range(d + 1) for d in M.dims]):
        assert counts.get(e, 0) == brute_gr_count(M, e)


@given(a3_reps())
def test_gr_counts_match_enumeration_a3(M):
    counts = gr_counts(M)
    for e in itertools.product(*[range(d + 1) for d in M.dims]):
        assert counts.get(e, 0) == brute_gr_count(M, e)


@given(kron_reps(field=F2))
def test_subrepresentation_listing_agrees_with_counts(M):
    for e, n in gr_counts(M).items():
        assert sum(1 for _ in subrepresentations(M, e)) == n


def test_gr_count_cap():
    M = kron_preinjective(KQ, F3, 3)
    with pytest.raises(CapExceeded):
        gr_counts(M, cap=2)


# ---------------------------------------------------------------------------
# extensions


def test_extension_example_s1_s2():
    S1, S2 = simple(KQ, F2, 0), simple(KQ, F2, 1)
    t = ext_middle_terms(S1, S2)
    entries = t.items()
    assert sum(v for _, v in entries) == 4
    split = S2.direct_sum(S1)
    assert t.entries[0][1] == 1 and is_isomorphic(t.entries[0][0], split)
    for lam in (0, 1, None):
        idx = t.find(kron_regular(KQ, F2, 1, lam))
        assert idx is not None and t.entries[idx][1] == 1


def test_extension_by_zero():
    M = kron_preprojective(KQ, F3, 2)
    t = ext_middle_terms(M, zero_rep(KQ, F3))
    assert len(t) == 1 and t.entries[0][1] == 1 and is_isomorphic(t.entries[0][0], M)


def _filtration_count(E, M, N):
    """g^E_{MN}: submodules U of E with U ~ N and E/U ~ M."""
    count = 0
    for bases in subrepresentations(E, N.dims):
        if brute_is_isomorphic(restrict(E, bases), N) and brute_is_isomorphic(quotient(E, bases), M):
            count += 1
    return count


@pytest.mark.parametrize(
    "pair",
    [("S1", "S2"), ("N2", "M1"), ("R0", "M1"), ("N1", "R1"), ("N1", "M2"), ("Rinf", "R0")],
)
def test_extension_counts_satisfy_riedtmann_peng(pair):
    F = F2
    mods = {
        "S1": simple(KQ, F, 0),
        "S2": simple(KQ, F, 1),
        "M1": kron_preprojective(KQ, F, 1),
        "M2": kron_preprojective(KQ, F, 2),
        "N1": kron_preinjective(KQ, F, 1),
        "N2": kron_preinjective(KQ, F, 2),
        "R0": kron_regular(KQ, F, 1, 0),
        "R1": kron_regular(KQ, F, 1, 1),
        "Rinf": kron_regular(KQ, F, 1, None),
    }
    M, N = mods[pair[0]], mods[pair[1]]
    Q = F.order
    t = ext_middle_terms(M, N)
    assert sum(v for _, v in t) == Q ** ext1_dim(M, N)
    for E, eps in t:
        g = _filtration_count(E, M, N)
        lhs = eps * brute_aut_count(E)
        rhs = g * brute_aut_count(M) * brute_aut_count(N) * Q ** hom_dim(M, N)
        assert lhs == rhs


@given(kron_reps(field=F2, max_dim=1), kron_reps(field=F2, max_dim=1))
def test_middle_terms_have_the_right_dimension(M, N):
    t = ext_middle_terms(M, N)
    assert sum(v for _, v in t) == 2 ** ext1_dim(M, N)
    assert all(E.dims == tuple(a + b for a, b in zip(M.dims, N.dims)) for E, _ in t)


def test_extension_cap():
    M, N = kron_preinjective(KQ, F3, 3), kron_preprojective(KQ, F3, 3)
    with pytest.raises(CapExceeded):
        ext_middle_terms(M, N, cap=10)


# ---------------------------------------------------------------------------
# socle, injectives, strata


def test_projectives_and_injectives():
    assert projective(KQ, F2, 0).dims == (1, 2)
    assert projective(KQ, F2, 1).dims == (0, 1)
    assert injective(KQ, F2, 0).dims == (1, 0)
    assert injective(KQ, F2, 1).dims == (2, 1)
    q = principal_framing(type_a("<>"))
    for i in range(q.m):
        I = injective(q, F2, i)
        assert is_injective(I)
        assert socle_dim(I) == tuple(int(j == i) for j in range(q.m))
        P = projective(q, F2, i)
        assert top_dim(P) == tuple(int(j == i) for j in range(q.m))
    assert not is_injective(kron_preprojective(KQ, F2, 2))


def test_strata_examples():
    for F in (F2, F3):
        S1, I1 = simple(KQ, F, 0), injective(KQ, F, 0)
        table, flags = hom_to_injective_strata(S1, I1)
        assert not flags
        counts = {(B.dims, C.dims): v for (B, C), v in table}
        assert counts == {((1, 0), (1, 0)): 1, ((0, 0), (0, 0)): F.order - 1}
    table, _ = hom_to_injective_strata(zero_rep(KQ, F2), injective(KQ, F2, 1))
    assert [((B.dims, C.dims), v) for (B, C), v in table] == [(((0, 0), (2, 1)), 1)]
    with pytest.raises(NotInjective):
        hom_to_injective_strata(simple(KQ, F2, 0), kron_preprojective(KQ, F2, 2))


@given(kron_reps(field=F2, max_dim=2), st.sampled_from([0, 1]))
def test_strata_sum_rule(M, i):
    I = injective(KQ, F2, i)
    table, flags = hom_to_injective_strata(M, I)
    assert not flags
    assert sum(v for _, v in table) == 2 ** hom_dim(M, I)


# ---------------------------------------------------------------------------
# reflection functors


def test_reflection_examples():
    M2 = kron_preprojective(KQ, F2, 2)
    R = bgp_reflect(M2, 1, "+")
    assert R.quiver == reflect_quiver(KQ, 1)
    assert R.dims == (1, 0)
    assert bgp_reflect(simple(KQ, F2, 1), 1, "+").is_zero()
    with pytest.raises(RepresentationError):
        bgp_reflect(M2, 0, "+")


@pytest.mark.parametrize("name", ["M(2)", "M(3)", "N(1)", "N(2)", "R(1)@lambda=0", "R(1)@lambda=inf"])
def test_reflection_round_trip(name):
    M = kronecker_catalog(KQ, F3, (3, 3))[name]
    R = bgp_reflect(M, 1, "+")
    assert R.dims == (M.dims[0], 2 * M.dims[0] - M.dims[1])
    assert is_isomorphic(bgp_reflect(R, 1, "-"), M)


# ---------------------------------------------------------------------------
# construction and serialization


def test_validation():
    with pytest.raises(RepresentationError):
        Representation(KQ, F2, (1, 1), [[[1]]])
    with pytest.raises(RepresentationError):
        Representation(KQ, F2, (1, 1), [[[2]], [[0]]])
    with pytest.raises(RepresentationError):
        Representation(KQ, F2, (1, 1), [[[1, 0]], [[0]]])
    with pytest.raises(RepresentationError):
        hom_dim(simple(KQ, F2, 0), simple(KQ, F3, 0))


@given(kron_reps())
def test_json_round_trip(M):
    assert Representation.from_json(M.to_json(), KQ) == M
