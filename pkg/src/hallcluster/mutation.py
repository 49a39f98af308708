"""Quantum seeds and their mutations.

Every cluster variable is kept as an explicit element of the initial torus;
a seed records the current exchange matrix, the current frame form
``Lambda`` and the cluster.  New variables come from the two-term exchange
binomial, computed with one exact division (the quantum Laurent phenomenon
guarantees it succeeds).
"""

from __future__ import annotations

import json
from typing import Sequence

from .qtorus import TorusContext, TorusElement, ordered_product, t_exact_div
from .quiver import Quiver, find_lambda, is_compatible
from .scalars import FREE, Scalar, ScalarRing, qbinom


def _matmul(A, B):
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))) for i in range(len(A)))


def _transpose(A):
    return tuple(zip(*A))


def e_matrix(Btilde, k: int) -> tuple:
    """``E`` with ``e_kk = -1``, ``e_ik = max(0, -b_ik)`` and identity elsewhere."""
    m = len(Btilde)
    return tuple(
        tuple(
            (-1 if i == k else max(0, -Btilde[i][k])) if j == k else int(i == j)
            for j in range(m)
        )
        for i in range(m)
    )


def mutate_B(Btilde, k: int) -> tuple:
    m, n = len(Btilde), len(Btilde[0])
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            b = Btilde[i][j]
            if i == k or j == k:
                row.append(-b)
            else:
                bik, bkj = Btilde[i][k], Btilde[k][j]
                sgn = (bik > 0) - (bik < 0)
                row.append(b + sgn * max(0, bik * bkj))
        out.append(tuple(row))
    return tuple(out)


def matrix_mutate(Btilde, Lambda, k: int) -> tuple[tuple, tuple]:
    """``(Btilde', Lambda')`` with ``Lambda' = E^T Lambda E``; ``k`` is 0-based."""
    n = len(Btilde[0])
    if not 0 <= k < n:
        raise ValueError(f"mutation direction {k + 1} is not a principal index (1..{n})")
    E = e_matrix(Btilde, k)
    Lam = _matmul(_matmul(_transpose(E), Lambda), E)
    return mutate_B(Btilde, k), Lam


class QuantumSeed:
    """``(Btilde, Lambda, D)`` plus a cluster of ``m`` torus elements.

    ``ctx`` is the ambient (initial) torus that all cluster variables live in.
    """

    def __init__(self, Btilde, Lambda, D, cluster: Sequence[TorusElement], ctx: TorusContext, history=()):
        self.Btilde = tuple(tuple(int(x) for x in r) for r in Btilde)
        self.Lambda = tuple(tuple(int(x) for x in r) for r in Lambda)
        self.D = tuple(D)
        self.cluster = tuple(cluster)
        self.ctx = ctx
        self.history = tuple(history)
        self.m, self.n = len(self.Btilde), len(self.Btilde[0])
        if len(self.cluster) != self.m or len(self.Lambda) != self.m:
            raise ValueError("cluster and Lambda must have one entry per vertex")

    @property
    def frame(self) -> TorusContext:
        return TorusContext(self.Lambda, self.ctx.ring)

    def is_compatible(self) -> bool:
        return is_compatible(self.Btilde, self.Lambda) == self.D

    def value(self, c: Sequence[int]) -> TorusElement:
        """Frame value ``M(c)`` of this seed, as an element of the ambient torus."""
        return ordered_product(self.ctx, self.cluster, self.Lambda, c)

    def __eq__(self, other):
        return (
            isinstance(other, QuantumSeed)
            and (self.Btilde, self.Lambda, self.D, self.cluster) == (other.Btilde, other.Lambda, other.D, other.cluster)
        )

    def __hash__(self):
        return hash((self.Btilde, self.Lambda, self.cluster))

    def to_json(self) -> dict:
        return {
            "Btilde": [list(r) for r in self.Btilde],
            "Lambda": [list(r) for r in self.Lambda],
            "D": list(self.D),
            "initial_Lambda": [list(r) for r in self.ctx.Lambda],
            "ring": _ring_json(self.ctx.ring),
            "history": [k + 1 for k in self.history],
            "cluster": [x.to_json()["terms"] for x in self.cluster],
        }

    @classmethod
    def from_json(cls, obj: dict) -> QuantumSeed:
        from .scalars import make_ring

        r = obj.get("ring", {"mode": "free"})
        ring = FREE if r["mode"] == "free" else make_ring("related", r["N"], r["Q0"])
        ctx = TorusContext(obj["initial_Lambda"], ring)
        cluster = [
            TorusElement(ctx, {tuple(t["exp"]): Scalar.from_json(t["scalar"], ring) for t in terms})
            for terms in obj["cluster"]
        ]
        return cls(obj["Btilde"], obj["Lambda"], obj["D"], cluster, ctx, [k - 1 for k in obj.get("history", [])])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _ring_json(ring: ScalarRing) -> dict:
    if ring.mode == "free":
        return {"mode": "free"}
    return {"mode": "related", "N": ring.N, "Q0": ring.Q0}


def initial_seed(quiver: Quiver, ring: ScalarRing = FREE, Lambda=None, D=None) -> QuantumSeed:
    """Initial seed of a quiver; ``Lambda``/``D`` default to :func:`find_lambda`."""
    if Lambda is None:
        Lambda, D = find_lambda(quiver.Btilde)
    elif D is None:
        D = is_compatible(quiver.Btilde, Lambda)
        if D is None:
            raise ValueError("Lambda is not compatible with the quiver")
    ctx = TorusContext(Lambda, ring)
    return QuantumSeed(quiver.Btilde, Lambda, D, ctx.gens(), ctx)


def exchange_vectors(Btilde, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(sum_i [b_ik]_+ e_i - e_k, sum_i [-b_ik]_+ e_i - e_k)``."""
    m = len(Btilde)
    plus = tuple((max(0, Btilde[i][k]) if i != k else -1) for i in range(m))
    minus = tuple((max(0, -Btilde[i][k]) if i != k else -1) for i in range(m))
    return plus, minus


def seed_mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Mutation in the 0-based principal direction ``k``.

    ``X'_k = M(c+) + M(c-)``; both terms are cleared by ``N = e_k`` and
    divided once by ``M(e_k) = X_k``.
    """
    Bt, Lam = seed.Btilde, seed.Lambda
    Bn, Ln = matrix_mutate(Bt, Lam, k)
    ring = seed.ctx.ring
    frame = TorusContext(Lam, ring)
    ek = tuple(int(i == k) for i in range(seed.m))
    top = seed.ctx.zero()
    for c in exchange_vectors(Bt, k):
        pos = tuple(x + y for x, y in zip(c, ek))
        top = top + seed.value(pos) * ring.u_power(frame.form(c, ek))
    new = t_exact_div(top, seed.cluster[k], "left")
    cluster = list(seed.cluster)
    cluster[k] = new
    return QuantumSeed(Bn, Ln, seed.D, cluster, seed.ctx, seed.history + (k,))


def parse_sequence(text: str) -> list[int]:
    """``"1,2,1"`` -> ``[0, 1, 0]``."""
    text = text.strip()
    if not text:
        return []
    try:
        seq = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"bad mutation sequence {text!r}; expected comma-separated integers") from None
    if any(k < 1 for k in seq):
        raise ValueError("mutation directions are 1-based")
    return [k - 1 for k in seq]


def mutate_sequence(seed: QuantumSeed, seq: Sequence[int]) -> QuantumSeed:
    for k in seq:
        seed = seed_mutate(seed, k)
    return seed


def frame_expand(seed: QuantumSeed, c: Sequence[int], k: int) -> TorusElement:
    """``M'(c) = sum_p [c_k, p]_{u^{d_k}} M(E c + p b^k)`` in the current frame."""
    c = tuple(int(x) for x in c)
    if c[k] < 0:
        raise ValueError("frame expansion needs c_k >= 0")
    E = e_matrix(seed.Btilde, k)
    Ec = tuple(sum(E[i][j] * c[j] for j in range(seed.m)) for i in range(seed.m))
    bk = tuple(seed.Btilde[i][k] for i in range(seed.m))
    ring = seed.ctx.ring
    # single terms need not be Laurent in a non-initial frame; the sum is
    expr = [
        (tuple(x + p * y for x, y in zip(Ec, bk)), qbinom(c[k], p, seed.D[k], ring))
        for p in range(c[k] + 1)
    ]
    return transport(seed.cluster, seed.Lambda, expr, seed.ctx)


def transport(
    cluster: Sequence[TorusElement],
    frame_Lambda,
    expr: Sequence[tuple[Sequence[int], Scalar]],
    ctx: TorusContext,
) -> TorusElement:
    """Evaluate ``sum s_c X'^c`` (coordinates in the frame of ``cluster``) in
    the ambient torus ``ctx``.

    With ``N_i = max(0, -min_c c_i)`` every term is lifted to
    ``u^Lambda'(c, N) M'(c + N)`` and the sum is divided once by ``M'(N)``
    on the right of the quotient (``M'(c) = u^Lambda'(c,N) M'(c+N) M'(N)^-1``).
    """
    expr = [(tuple(c), s) for c, s in expr]
    if not expr:
        return ctx.zero()
    m = len(cluster)
    frame = TorusContext(frame_Lambda, ctx.ring)
    N = tuple(max(0, -min(c[i] for c, _ in expr)) for i in range(m))
    S = ctx.zero()
    for c, s in expr:
        lifted = tuple(x + y for x, y in zip(c, N))
        S = S + ordered_product(ctx, cluster, frame_Lambda, lifted) * (s * ctx.ring.u_power(frame.form(c, N)))
    if not any(N):
        return S
    return t_exact_div(S, ordered_product(ctx, cluster, frame_Lambda, N), "left")


def element_expr(x: TorusElement) -> list[tuple[tuple[int, ...], Scalar]]:
    """Coordinate form of a torus element (its monomial terms)."""
    return [(e, s) for e, s in x.sorted_terms()]


def kronecker_cluster_variables(lo: int, hi: int, ring: ScalarRing = FREE) -> dict[int, TorusElement]:
    """``{m: X_m}`` for ``lo <= m <= hi`` by alternating mutations of the
    Kronecker seed (``X_{m-1} X_{m+1} = q X_m^2 + 1``)."""
    from .quiver import kronecker

    seed = initial_seed(kronecker(), ring)
    out = {1: seed.cluster[0], 2: seed.cluster[1]}
    # upwards: mu_1 gives X_3, mu_2 gives X_4, ...
    s, m = seed, 2
    while m < hi:
        k = m % 2  # X_{m+1} replaces X_{m-1}, which sits at position (m - 2) % 2
        s = seed_mutate(s, k)
        m += 1
        out[m] = s.cluster[k]
    s, m = seed, 1
    while m > lo:
        k = m % 2  # X_{m-1} replaces X_{m+1}, at position m % 2
        s = seed_mutate(s, k)
        m -= 1
        out[m] = s.cluster[k]
    return {j: x for j, x in out.items() if lo <= j <= hi}


__all__ = [
    "QuantumSeed",
    "e_matrix",
    "exchange_vectors",
    "frame_expand",
    "initial_seed",
    "kronecker_cluster_variables",
    "matrix_mutate",
    "mutate_B",
    "mutate_sequence",
    "parse_sequence",
    "seed_mutate",
    "transport",
]
