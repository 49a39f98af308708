import pytest

from hallcluster.quiver import (
    NoCompatiblePair,
    Quiver,
    QuiverError,
    build_quiver,
    compatibility,
    find_lambda,
    is_compatible,
    kronecker,
    principal_framing,
    quiver_from_B,
    reflect_quiver,
    type_a,
)


def test_kronecker_matrices():
    q = build_quiver(2, 2, [(1, 2), (1, 2)])
    assert q.B == ((0, 2), (-2, 0))
    assert q.Rtilde == ((0, 0), (2, 0))
    assert q.Rtilde_tr == ((0, 2), (0, 0))
    assert tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(q.Rtilde_tr, q.Rtilde)) == q.B


def test_kronecker_lambda():
    Lam, D = find_lambda(kronecker().Btilde)
    assert Lam == ((0, 1), (-1, 0))
    assert D == (2, 2)


def test_euler_form():
    q = type_a(">")
    assert q.euler((1, 0), (0, 1)) == -1
    assert q.euler((0, 1), (1, 0)) == 0
    k = kronecker()
    assert k.euler((1, 0), (0, 1)) == -2
    assert k.euler((1, 1), (1, 1)) == 0


def test_principal_framing_a2():
    q = principal_framing(type_a(">"))
    assert q.m == 4 and q.n == 2
    assert sorted(q.arrows) == sorted([(0, 1), (2, 0), (3, 1)])
    assert q.Btilde == ((0, 1), (-1, 0), (1, 0), (0, 1))
    assert q.principal_part().is_bipartite()
    with pytest.raises(QuiverError):
        principal_framing(q)


@pytest.mark.parametrize("orient", [">", "<", "<>", "><", ">>", "<><"])
def test_find_lambda_is_compatible_on_framed_type_a(orient):
    q = principal_framing(type_a(orient))
    Lam, D = find_lambda(q.Btilde)
    assert all(Lam[i][j] == -Lam[j][i] for i in range(q.m) for j in range(q.m))
    C = compatibility(q.Btilde, Lam)
    n = q.n
    assert all(C[j][i] == (D[j] if i == j else 0) for j in range(n) for i in range(q.m))
    assert is_compatible(q.Btilde, Lam) == D


def test_find_lambda_needs_full_rank():
    with pytest.raises(NoCompatiblePair):
        find_lambda(((0, 0), (0, 0)))


def test_reflect():
    k = reflect_quiver(kronecker(), 1)
    assert sorted(k.arrows) == [(1, 0), (1, 0)]
    a3 = type_a("><")  # 1 -> 2 <- 3
    r = reflect_quiver(a3, 1)
    assert sorted(r.arrows) == [(1, 0), (1, 2)]
    with pytest.raises(QuiverError):
        reflect_quiver(type_a(">>"), 1)


def test_cycles_and_loops_rejected():
    with pytest.raises(QuiverError):
        Quiver(2, 2, [(0, 1), (1, 0)])
    with pytest.raises(QuiverError):
        Quiver(1, 1, [(0, 0)])


def test_json_and_B_round_trip():
    for q in (kronecker(), principal_framing(type_a("<>"))):
        assert Quiver.from_json(q.to_json()) == q
        assert quiver_from_B(q.Btilde).Btilde == q.Btilde


def test_paths():
    q = type_a(">>")
    assert q.path_count(0, 2) == 1
    assert q.path_count(2, 0) == 0
    assert kronecker().path_count(0, 1) == 2
