"""Quantum Caldero-Chapoton characters.

For a module ``M`` of the principal part with dimension vector ``m``::

    X_M = sum_e |Gr_e M| u^(-d <e, m-e>) X^(-Btilde e - (Itilde - Rtilde^tr) m)

and for ``M (+) I[-1]`` with ``I`` injective over the full quiver the twist
becomes ``<e, m-e-i>`` and the exponent gains ``dim soc I``.  Counting
happens over ``F_Q`` with ``Q = u^(2d)``, so characters live in the related
scalar ring with ``N = 2d`` and ``Q0 = Q``.
"""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from typing import Sequence

from .finfield import DEFAULT_SUBSPACE_CAP, FiniteField
from .qtorus import TorusContext, TorusElement
from .quiver import Quiver
from .reps import NotInjective, Representation, gr_counts, is_injective, socle_dim
from .scalars import ScalarRing, make_ring


def uniform_d(D: Sequence[int]) -> int:
    """The common value of a scalar diagonal ``D = d I``."""
    ds = set(D)
    if len(ds) != 1:
        raise ValueError(f"counting needs D = d I, got diagonal {tuple(D)}")
    return ds.pop()


class CCContext:
    """Seed data plus field and scalar ring for the character map."""

    def __init__(
        self,
        quiver: Quiver,
        Lambda: Sequence[Sequence[int]],
        D: Sequence[int],
        field: FiniteField,
        ring: ScalarRing | None = None,
        cap: int = DEFAULT_SUBSPACE_CAP,
    ):
        self.quiver, self.field, self.cap = quiver, field, cap
        self.D = tuple(D)
        self.d = uniform_d(self.D)
        if ring is None:
            ring = make_ring("related", 2 * self.d, field.order)
        self.ring = ring
        self.torus = TorusContext(Lambda, ring)
        self.Lambda = self.torus.Lambda
        if len(self.Lambda) != quiver.m:
            raise ValueError("Lambda size does not match the quiver")

    def __eq__(self, other):
        return isinstance(other, CCContext) and (self.quiver, self.Lambda, self.D, self.field, self.ring) == (
            other.quiver,
            other.Lambda,
            other.D,
            other.field,
            other.ring,
        )

    def __hash__(self):
        return hash((self.quiver, self.Lambda, self.D, self.field, self.ring))

    def shifted(self, v: Sequence[int]) -> tuple[int, ...]:
        """``(Itilde - Rtilde^tr) v`` in ``Z^m`` for ``v`` on principal vertices."""
        S = self.quiver.exponent_shift
        return tuple(sum(S[i][j] * v[j] for j in range(self.quiver.n)) for i in range(self.quiver.m))

    def exponent(self, e: Sequence[int], m: Sequence[int]) -> tuple[int, ...]:
        Bt = self.quiver.Btilde
        s = self.shifted(m)
        n = self.quiver.n
        return tuple(-sum(Bt[i][j] * e[j] for j in range(n)) - s[i] for i in range(self.quiver.m))

    def seed_hash(self) -> str:
        blob = json.dumps(
            {"quiver": self.quiver.to_json(), "Lambda": [list(r) for r in self.Lambda], "D": list(self.D)},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _check_module(ctx: CCContext, M: Representation):
    if M.quiver != ctx.quiver or M.field != ctx.field:
        raise ValueError("module does not belong to the context's quiver and field")
    if not M.is_principal():
        raise ValueError(f"module with dims {M.dims} is not supported on principal vertices")


@lru_cache(maxsize=20_000)
def _character(ctx: CCContext, M: Representation, I: Representation | None) -> TorusElement:
    q = ctx.quiver
    m = M.dims
    i = I.dims if I is not None else (0,) * q.m
    soc = socle_dim(I) if I is not None else (0,) * q.m
    ring, d = ctx.ring, ctx.d
    terms: dict = {}
    for e, count in gr_counts(M, ctx.cap).items():
        rest = tuple(a - b - c for a, b, c in zip(m, e, i))
        coeff = ring.scalar(count) * ring.u_power(-d * q.euler(e, rest))
        exp = tuple(x + y for x, y in zip(ctx.exponent(e, m), soc))
        terms[exp] = terms[exp] + coeff if exp in terms else coeff
    return TorusElement(ctx.torus, terms)


def cc_character(ctx: CCContext, M: Representation) -> TorusElement:
    """``X_M`` for a module of the principal part."""
    _check_module(ctx, M)
    return _character(ctx, M, None)


def cc_character_shifted(ctx: CCContext, M: Representation | None, I: Representation) -> TorusElement:
    """``X_{M (+) I[-1]}`` for an injective ``I`` over the full quiver."""
    if M is None:
        from .reps import zero_rep

        M = zero_rep(ctx.quiver, ctx.field)
    _check_module(ctx, M)
    if I.quiver != ctx.quiver or I.field != ctx.field:
        raise ValueError("injective does not belong to the context's quiver and field")
    if not is_injective(I):
        raise NotInjective(f"dims {I.dims} is not injective")
    if I.is_zero():
        return _character(ctx, M, None)
    return _character(ctx, M, I)


def character_json(ctx: CCContext, X: TorusElement, M: Representation, I: Representation | None = None) -> dict:
    out = X.to_json()
    out["provenance"] = {
        "module_dims": list(M.dims),
        "field": ctx.field.to_json(),
        "seed_hash": ctx.seed_hash(),
    }
    if I is not None:
        out["provenance"]["injective_dims"] = list(I.dims)
    return out
