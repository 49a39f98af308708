"""The dual Ringel-Hall algebra on delta functions and the map Psi into the
quantum torus.

``delta_M * delta_N = u^(Lambda(S m, S n) + 2d <m, n>) sum_E h^{MN}_E delta_E``
with ``S = Itilde - Rtilde^tr`` and ``h^{MN}_E = eps^E_{MN} / Q^[M,N]``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .characters import CCContext, cc_character
from .qtorus import TorusElement
from .reps import DEFAULT_ENUM_CAP, IsoClassTable, Representation, ext_middle_terms, hom_dim
from .scalars import Scalar


class HallElement:
    """Finite combination ``sum c_V delta_V`` over pairwise non-isomorphic ``V``."""

    def __init__(self, ctx: CCContext, items: Iterable[tuple[Representation, Scalar]] = (), cap: int = DEFAULT_ENUM_CAP):
        self.ctx = ctx
        self.table = IsoClassTable(cap)
        for V, c in items:
            self._add(V, c)
        self._prune()

    def _add(self, V: Representation, c):
        if not isinstance(c, Scalar):
            c = self.ctx.ring.scalar(c)
        self.table.add(V, c)

    def _prune(self):
        kept = [(V, c) for V, c in self.table.items() if not c.is_zero()]
        if len(kept) != len(self.table):
            cap = self.table.cap
            self.table = IsoClassTable(cap)
            for V, c in kept:
                self.table.add(V, c)

    def items(self) -> list[tuple[Representation, Scalar]]:
        return self.table.items()

    def __len__(self):
        return len(self.table)

    def __add__(self, other: HallElement) -> HallElement:
        return HallElement(self.ctx, self.items() + other.items(), self.table.cap)

    def __neg__(self) -> HallElement:
        return HallElement(self.ctx, [(V, -c) for V, c in self.items()], self.table.cap)

    def __sub__(self, other: HallElement) -> HallElement:
        return self + (-other)

    def scale(self, s) -> HallElement:
        return HallElement(self.ctx, [(V, c * s) for V, c in self.items()], self.table.cap)

    def __mul__(self, other):
        if isinstance(other, HallElement):
            return hall_star(self, other)
        return self.scale(other)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        diff = self - other
        return len(diff) == 0

    __hash__ = None

    def coefficient(self, V: Representation) -> Scalar:
        idx = self.table.find(V)
        return self.ctx.ring.zero() if idx is None else self.table.entries[idx][1]

    def to_json(self) -> list:
        return [{"rep": V.to_json(), "coeff": c.to_json()} for V, c in self.items()]

    @classmethod
    def from_json(cls, obj: list, ctx: CCContext) -> HallElement:
        items = []
        for it in obj:
            V = Representation.from_json(it["rep"], ctx.quiver, ctx.field)
            items.append((V, Scalar.from_json(it["coeff"], ctx.ring)))
        return cls(ctx, items)

    def __repr__(self):
        return " + ".join(f"({c!r})*delta{V.dims}" for V, c in self.items()) or "0"


def delta(ctx: CCContext, V: Representation, coeff=1) -> HallElement:
    return HallElement(ctx, [(V, coeff)])


def hall_exponent(ctx: CCContext, m, n) -> int:
    """Exponent of ``u`` in the structure constant: ``Lambda(S m, S n) + 2d <m, n>``."""
    return ctx.torus.form(ctx.shifted(m), ctx.shifted(n)) + 2 * ctx.d * ctx.quiver.euler(m, n)


@lru_cache(maxsize=50_000)
def _star_basis(ctx: CCContext, M: Representation, N: Representation, cap: int) -> tuple:
    Q = ctx.field.order
    twist = ctx.ring.u_power(hall_exponent(ctx, M.dims, N.dims))
    denom = Q ** hom_dim(M, N)
    return tuple((E, twist * ctx.ring.scalar(Fraction(eps, denom))) for E, eps in ext_middle_terms(M, N, cap))


def hall_star(x: HallElement, y: HallElement) -> HallElement:
    """Bilinear extension of ``delta_M * delta_N``."""
    if x.ctx != y.ctx:
        raise ValueError("Hall elements over different contexts")
    cap = min(x.table.cap, y.table.cap)
    items = []
    for M, a in x.items():
        for N, b in y.items():
            ab = a * b
            for E, c in _star_basis(x.ctx, M, N, cap):
                items.append((E, ab * c))
    return HallElement(x.ctx, items, cap)


def psi(x: HallElement, ctx: CCContext | None = None) -> TorusElement:
    """``delta_V -> X_V`` extended linearly."""
    ctx = ctx or x.ctx
    out = ctx.torus.zero()
    for V, c in x.items():
        out = out + cc_character(ctx, V) * c
    return out

