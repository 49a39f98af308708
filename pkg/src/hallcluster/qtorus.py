"""Based quantum torus ``X^e X^f = q^(Lambda(e,f)/2) X^(e+f)``.

With ``u = q^(1/2)`` the twist is the scalar ``u^Lambda(e,f)``.  Elements are
finite maps ``exponent tuple -> nonzero Scalar``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import FREE, Scalar, ScalarRing


class NotDivisible(ArithmeticError):
    """The requested quotient does not exist in the torus."""


class ContextMismatch(ValueError):
    pass


def _order_key(e: tuple[int, ...]):
    # graded lexicographic; compatible with addition
    return (sum(e), e)


class TorusContext:
    """Rank ``m`` lattice with skew form ``Lambda`` over a scalar ring."""

    def __init__(self, Lambda: Sequence[Sequence[int]], ring: ScalarRing = FREE):
        Lam = tuple(tuple(int(x) for x in row) for row in Lambda)
        m = len(Lam)
        if any(len(r) != m for r in Lam):
            raise ValueError("Lambda must be square")
        if any(Lam[i][j] != -Lam[j][i] for i in range(m) for j in range(m)):
            raise ValueError("Lambda must be skew-symmetric")
        self.Lambda, self.m, self.ring = Lam, m, ring
        self._rows = [[(j, x) for j, x in enumerate(r) if x] for r in Lam]

    def form(self, e: Sequence[int], f: Sequence[int]) -> int:
        s = 0
        for i, ei in enumerate(e):
            if ei:
                for j, x in self._rows[i]:
                    s += ei * x * f[j]
        return s

    def __eq__(self, other):
        return isinstance(other, TorusContext) and (self.Lambda, self.ring) == (other.Lambda, other.ring)

    def __hash__(self):
        return hash((self.Lambda, self.ring))

    def __repr__(self):
        return f"TorusContext(Lambda={self.Lambda}, ring={self.ring!r})"

    def with_ring(self, ring: ScalarRing) -> TorusContext:
        return TorusContext(self.Lambda, ring)

    # constructors
    def zero(self) -> TorusElement:
        return TorusElement(self, {})

    def one(self) -> TorusElement:
        return t_mono(self, (0,) * self.m)

    def mono(self, e: Sequence[int], s=None) -> TorusElement:
        return t_mono(self, e, s)

    def gens(self) -> list[TorusElement]:
        return [t_mono(self, tuple(int(i == j) for j in range(self.m))) for i in range(self.m)]


class TorusElement:
    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: TorusContext, terms: dict):
        self.ctx = ctx
        self.terms = {e: s for e, s in terms.items() if not s.is_zero()}
        self._hash = None

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: TorusElement):
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")

    def _lift(self, other):
        if isinstance(other, TorusElement):
            self._check(other)
            return other
        if isinstance(other, Scalar) or isinstance(other, int):
            s = other if isinstance(other, Scalar) else self.ctx.ring.scalar(other)
            return TorusElement(self.ctx, {(0,) * self.ctx.m: s})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for e, s in other.terms.items():
            d[e] = d[e] + s if e in d else s
        return TorusElement(self.ctx, d)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement(self.ctx, {e: -s for e, s in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar) or isinstance(other, int):
            s = other if isinstance(other, Scalar) else self.ctx.ring.scalar(other)
            return TorusElement(self.ctx, {e: c * s for e, c in self.terms.items()})
        if not isinstance(other, TorusElement):
            return NotImplemented
        self._check(other)
        form = self.ctx.form
        d: dict = {}
        for e, a in self.terms.items():
            for f, b in other.terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                c = (a * b).shift(form(e, f))
                d[g] = d[g] + c if g in d else c
        return TorusElement(self.ctx, d)

    def __rmul__(self, other):
        if isinstance(other, Scalar) or isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> TorusElement:
        if k < 0:
            if len(self.terms) != 1:
                raise NotDivisible("only monomials have inverses in the torus")
            ((e, s),) = self.terms.items()
            return t_mono(self.ctx, tuple(-x for x in e), s.inverse()) ** (-k)
        out = self.ctx.one()
        for _ in range(k):
            out = out * self
        return out

    # -- comparisons ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.one() * other
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]))

    def leading(self):
        return max(self.terms.items(), key=lambda kv: _order_key(kv[0]))

    def support(self) -> list[tuple[int, ...]]:
        return [e for e, _ in self.sorted_terms()]

    # -- maps -----------------------------------------------------------
    def reduce(self, ring: ScalarRing) -> TorusElement:
        ctx = self.ctx.with_ring(ring)
        return TorusElement(ctx, {e: s.reduce(ring) for e, s in self.terms.items()})

    def to_json(self) -> dict:
        return {
            "Lambda": [list(r) for r in self.ctx.Lambda],
            "terms": [{"exp": list(e), "scalar": s.to_json()} for e, s in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict, ring: ScalarRing = FREE) -> TorusElement:
        ctx = TorusContext(obj["Lambda"], ring)
        return cls(ctx, {tuple(t["exp"]): Scalar.from_json(t["scalar"], ring) for t in obj["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, s in reversed(self.sorted_terms()):
            parts.append(f"({s!r})*X^{e}")
        return " + ".join(parts)


def t_mono(ctx: TorusContext, e: Sequence[int], s: Scalar | int | None = None) -> TorusElement:
    e = tuple(int(x) for x in e)
    if len(e) != ctx.m:
        raise ValueError(f"exponent of length {len(e)} in a rank-{ctx.m} torus")
    if s is None:
        s = ctx.ring.one()
    elif isinstance(s, int):
        s = ctx.ring.scalar(s)
    return TorusElement(ctx, {e: s})


def t_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    return a * b


def t_add(a: TorusElement, b: TorusElement) -> TorusElement:
    return a + b


def t_neg(a: TorusElement) -> TorusElement:
    return -a


def t_exact_div(b: TorusElement, a: TorusElement, side: str = "left") -> TorusElement:
    """Exact quotient in the torus.

    ``side="left"`` returns ``c`` with ``c * a == b``; ``side="right"`` returns
    ``c`` with ``a * c == b``.  Leading terms are peeled off in graded-lex
    order; every quotient exponent must lie in the box
    ``[min(b) - min(a), max(b) - max(a)]`` (coordinate-wise), which bounds
    the loop and detects non-divisibility.
    """
    a._check(b)
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if a.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    ctx = a.ctx
    if b.is_zero():
        return ctx.zero()
    m = ctx.m
    lo = [min(e[i] for e in b.terms) - min(e[i] for e in a.terms) for i in range(m)]
    hi = [max(e[i] for e in b.terms) - max(e[i] for e in a.terms) for i in range(m)]
    if any(l > h for l, h in zip(lo, hi)):
        raise NotDivisible("Newton polytope obstruction")
    ea, sa = a.leading()
    form = ctx.form
    rem = dict(b.terms)
    quot: dict = {}
    while rem:
        eb, sb = max(rem.items(), key=lambda kv: _order_key(kv[0]))
        ec = tuple(x - y for x, y in zip(eb, ea))
        if any(x < l or x > h for x, l, h in zip(ec, lo, hi)):
            raise NotDivisible(f"quotient exponent {ec} outside the admissible box")
        # lead(c*a) = s_c s_a u^form(ec, ea)
        tw = form(ec, ea) if side == "left" else form(ea, ec)
        sc = (sb / sa).shift(-tw)
        quot[ec] = sc
        for f, s in a.terms.items():
            g = tuple(x + y for x, y in zip(ec, f))
            c = (sc * s).shift(form(ec, f) if side == "left" else form(f, ec))
            v = rem[g] - c if g in rem else -c
            if v.is_zero():
                rem.pop(g, None)
            else:
                rem[g] = v
    return TorusElement(ctx, quot)


def frame_twist(Lambda: Sequence[Sequence[int]], c: Sequence[int]) -> int:
    """``sum_{i<j} c_i c_j lambda_ij``."""
    m = len(c)
    return sum(c[i] * c[j] * Lambda[i][j] for i in range(m) for j in range(i + 1, m) if c[i] and c[j])


def _positive_product(ctx: TorusContext, frame_vars, c: Sequence[int]) -> TorusElement:
    out = ctx.one()
    for v, ci in zip(frame_vars, c):
        for _ in range(ci):
            out = out * v
    return out


def ordered_product(
    ctx: TorusContext,
    frame_vars: Sequence[TorusElement],
    frame_Lambda: Sequence[Sequence[int]],
    c: Sequence[int],
) -> TorusElement:
    """Frame value ``M(c)`` of the frame with variables ``V_i = M(e_i)``.

    From ``M(a) M(b) = u^Lambda(a,b) M(a+b)`` one gets
    ``V_1^c_1 ... V_m^c_m = u^(sum_{i<j} c_i c_j lambda_ij) M(c)`` for
    ``c >= 0``.  Negative parts ``N = max(0, -c)`` are cleared by
    ``M(c) = u^Lambda(c, N) M(c + N) M(N)^-1`` with one exact division.
    """
    c = tuple(int(x) for x in c)
    if len(c) != len(frame_vars):
        raise ValueError("exponent length does not match the frame")
    if all(len(v.terms) == 1 for v in frame_vars):
        # monomial frame: negative powers are plain monomial inverses
        out = ctx.one()
        for v, ci in zip(frame_vars, c):
            if ci:
                out = out * v**ci
        return out * ctx.ring.u_power(-frame_twist(frame_Lambda, c))
    N = tuple(max(0, -x) for x in c)
    pos = tuple(x + y for x, y in zip(c, N))
    top = _positive_product(ctx, frame_vars, pos) * ctx.ring.u_power(-frame_twist(frame_Lambda, pos))
    if not any(N):
        return top
    lam = TorusContext(frame_Lambda, ctx.ring)
    den = _positive_product(ctx, frame_vars, N) * ctx.ring.u_power(-frame_twist(frame_Lambda, N))
    return t_exact_div(top * ctx.ring.u_power(lam.form(c, N)), den, "left")


def tsum(ctx: TorusContext, items: Iterable[TorusElement]) -> TorusElement:
    out = ctx.zero()
    for x in items:
        out = out + x
    return out
