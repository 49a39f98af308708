"""Exact coefficients: Laurent polynomials in ``u = q^(1/2)``.

Two kinds of ring are supported.

* ``free``: ``Q[u, u^-1]`` with ``u`` a formal symbol.  A scalar is a finite
  map ``exponent -> Fraction``.
* ``related``: the number field ``Q(r)`` where ``r`` is the real positive root
  of ``u^N = Q0``.  This is where field-size counts (powers of ``|k|``) and
  torus twists (powers of ``u``) can be compared coefficient-wise.

After perfect-power reduction the minimal polynomial of ``r`` is always a
binomial ``x^n - a`` (Capelli), so related arithmetic is a cyclic convolution
with a wrap-around factor ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "RingMismatch",
    "Scalar",
    "ScalarRing",
    "make_ring",
    "qbinom",
    "FREE",
]


class RingMismatch(ValueError):
    """Raised when scalars from different rings are combined."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k`` for prime ``p``, else ``None``."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def _integer_root(a: int, g: int) -> int | None:
    r = round(a ** (1.0 / g))
    for c in (r - 1, r, r + 1):
        if c > 0 and c**g == a:
            return c
    return None


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _binomial_irreducible(n: int, a: int) -> bool:
    # Capelli: x^n - a irreducible over Q iff a is no p-th power for p | n
    # and not (4 | n and a == -4 b^4).
    for p in _prime_factors(n):
        if _integer_root(a, p) is not None:
            return False
    if n % 4 == 0 and a < 0 and (-a) % 4 == 0 and _integer_root(-a // 4, 4):
        return False
    return True


@dataclass(frozen=True)
class ScalarRing:
    mode: str
    N: int | None = None
    Q0: int | None = None
    root_exp: int = 1
    root_base: int = 1

    @property
    def degree(self) -> int:
        return self.root_exp if self.mode == "related" else 0

    @property
    def minpoly(self) -> tuple[int, ...]:
        """Coefficients ``c0..cn`` of the minimal polynomial of ``u``."""
        if self.mode != "related":
            raise ValueError("free ring has no minimal polynomial")
        return (-self.root_base,) + (0,) * (self.root_exp - 1) + (1,)

    @property
    def is_related(self) -> bool:
        return self.mode == "related"

    def zero(self) -> Scalar:
        return Scalar(self, {} if self.mode == "free" else (Fraction(0),) * self.degree)

    def one(self) -> Scalar:
        return self.scalar(1)

    def scalar(self, c) -> Scalar:
        c = Fraction(c)
        if self.mode == "free":
            return Scalar(self, {0: c} if c else {})
        return Scalar(self, (c,) + (Fraction(0),) * (self.degree - 1))

    def u_power(self, k: int) -> Scalar:
        return _u_power(self, k)

    def laurent(self, coeffs: dict[int, object]) -> Scalar:
        """Build ``sum c_e u^e`` from an exponent map."""
        out = self.zero()
        for e, c in coeffs.items():
            out = out + self.u_power(e) * self.scalar(c)
        return out

    def __repr__(self) -> str:
        if self.mode == "free":
            return "ScalarRing(free)"
        return f"ScalarRing(related, u^{self.N}={self.Q0}, minpoly=x^{self.root_exp}-{self.root_base})"


FREE = ScalarRing("free")


@lru_cache(maxsize=None)
def make_ring(mode: str = "free", N: int | None = None, Q0: int | None = None) -> ScalarRing:
    if mode == "free":
        return FREE
    if mode != "related":
        raise ValueError(f"unknown ring mode {mode!r}")
    if N is None or Q0 is None or N < 2 or N % 2:
        raise ValueError(f"related ring needs an even N >= 2, got N={N}")
    if prime_power(Q0) is None:
        raise ValueError(f"Q0={Q0} is not a prime power")
    g_best = 1
    for g in range(1, N + 1):
        if N % g == 0 and _integer_root(Q0, g) is not None:
            g_best = g
    n, a = N // g_best, _integer_root(Q0, g_best)
    while not _binomial_irreducible(n, a):
        for p in _prime_factors(n):
            root = _integer_root(a, p)
            if root is not None:
                n, a = n // p, root
                break
    ring = ScalarRing("related", N, Q0, n, a)
    # sanity: the real positive root of the minpoly is Q0^(1/N)
    r = Q0 ** (1.0 / N)
    assert abs(r**n - a) < 1e-6 * max(1, a), ring
    return ring


@lru_cache(maxsize=4096)
def _u_power(ring: ScalarRing, k: int) -> Scalar:
    if ring.mode == "free":
        return Scalar(ring, {k: Fraction(1)})
    q, s = divmod(k, ring.root_exp)
    vec = [Fraction(0)] * ring.degree
    vec[s] = Fraction(ring.root_base) ** q
    return Scalar(ring, tuple(vec))


def _norm(c):
    # integral coefficients are kept as int: exact and much faster than Fraction
    if type(c) is int:
        return c
    return c.numerator if c.denominator == 1 else c


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Scalar:
    """Immutable ring element; see module docstring for the two encodings."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: ScalarRing, data):
        self.ring = ring
        if ring.mode == "free":
            self._d = {e: _norm(c) for e, c in data.items() if c}
        else:
            self._d = tuple(_norm(c) for c in data)
        self._hash = None

    # -- helpers --------------------------------------------------------
    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def is_zero(self) -> bool:
        if self.ring.mode == "free":
            return not self._d
        return not any(self._d)

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def terms(self) -> dict[int, Fraction]:
        """Free mode: exponent map.  Related mode: power-basis coefficients."""
        if self.ring.mode == "free":
            return dict(self._d)
        return {i: c for i, c in enumerate(self._d) if c}

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.ring.mode == "free":
            d = dict(self._d)
            for e, c in other._d.items():
                d[e] = d.get(e, 0) + c
            return Scalar(self.ring, d)
        return Scalar(self.ring, tuple(a + b for a, b in zip(self._d, other._d)))

    __radd__ = __add__

    def __neg__(self):
        if self.ring.mode == "free":
            return Scalar(self.ring, {e: -c for e, c in self._d.items()})
        return Scalar(self.ring, tuple(-a for a in self._d))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.ring.mode == "free":
            d: dict[int, Fraction] = {}
            for e1, c1 in self._d.items():
                for e2, c2 in other._d.items():
                    d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
            return Scalar(self.ring, d)
        n, a = self.ring.root_exp, self.ring.root_base
        out = [0] * n
        for i, c1 in enumerate(self._d):
            if not c1:
                continue
            for j, c2 in enumerate(other._d):
                if not c2:
                    continue
                s = i + j
                if s >= n:
                    out[s - n] += a * c1 * c2
                else:
                    out[s] += c1 * c2
        return Scalar(self.ring, tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> Scalar:
        """Multiply by ``u^k``."""
        if k == 0:
            return self
        if self.ring.mode == "free":
            return Scalar(self.ring, {e + k: c for e, c in self._d.items()})
        return self * _u_power(self.ring, k)

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.ring.mode == "free":
            if len(self._d) != 1:
                raise ArithmeticError("only monomials are invertible in the free ring")
            ((e, c),) = self._d.items()
            return Scalar(self.ring, {-e: Fraction(1) / c})
        n = self.ring.degree
        # columns: self * r^j
        cols = [(self * _u_power(self.ring, j))._d for j in range(n)]
        rows = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        for c in range(n):
            piv = next(r for r in range(c, n) if rows[r][c])
            rows[c], rows[piv] = rows[piv], rows[c]
            inv = Fraction(1) / rows[c][c]
            rows[c] = [x * inv for x in rows[c]]
            for r in range(n):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return Scalar(self.ring, tuple(rows[i][n] for i in range(n)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.ring.mode == "free" and len(other._d) > 1:
            return self._laurent_div(other)
        return self * other.inverse()

    def _laurent_div(self, other: Scalar) -> Scalar:
        """Exact quotient in ``Q[u, u^-1]``; raises if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self.is_zero():
            return self
        rem = dict(self._d)
        top = max(other._d)
        lead = other._d[top]
        floor = min(self._d) - min(other._d)
        quot: dict[int, Fraction] = {}
        while rem:
            e = max(rem)
            k = e - top
            if k < floor:
                raise ArithmeticError("scalar division is not exact")
            c = Fraction(rem[e]) / lead
            quot[k] = c
            for f, a in other._d.items():
                v = rem.get(f + k, 0) - c * a
                if v:
                    rem[f + k] = v
                else:
                    rem.pop(f + k, None)
        return Scalar(self.ring, quot)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> Scalar:
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.ring.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons ----------------------------------------------------
    def _key(self):
        if self.ring.mode == "free":
            return tuple(sorted(self._d.items()))
        return self._d

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.ring == other.ring and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self._key()))
        return self._hash

    # -- maps -----------------------------------------------------------
    def reduce(self, ring: ScalarRing) -> Scalar:
        """Ring homomorphism free -> related, ``u -> r``."""
        if ring == self.ring:
            return self
        if self.ring.mode != "free":
            raise RingMismatch("only free scalars can be reduced")
        out = ring.zero()
        for e, c in self._d.items():
            out = out + _u_power(ring, e) * c
        return out

    def bar(self) -> Scalar:
        """Bar involution ``u -> u^-1`` (free mode)."""
        if self.ring.mode != "free":
            raise ValueError("bar involution is only defined on the free ring")
        return Scalar(self.ring, {-e: c for e, c in self._d.items()})

    def at_one(self) -> Fraction:
        """Specialize ``u = 1`` (free mode)."""
        if self.ring.mode != "free":
            raise ValueError("specialization is only defined on the free ring")
        return sum(self._d.values(), Fraction(0))

    def to_float(self) -> float:
        if self.ring.mode == "free":
            raise ValueError("free scalars have no numeric value")
        r = self.ring.root_base ** (1.0 / self.ring.root_exp)
        return float(sum(float(c) * r**i for i, c in enumerate(self._d)))

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        if self.ring.mode == "free":
            return {str(e): _fmt(c) for e, c in sorted(self._d.items())}
        return {"basis": [_fmt(c) for c in self._d], "N": self.ring.N, "Q0": self.ring.Q0}

    @classmethod
    def from_json(cls, obj: dict, ring: ScalarRing | None = None) -> Scalar:
        if "basis" in obj:
            r = make_ring("related", obj["N"], obj["Q0"])
            if ring is not None and ring != r:
                raise RingMismatch("serialized scalar does not belong to the requested ring")
            return cls(r, tuple(Fraction(c) for c in obj["basis"]))
        r = ring or FREE
        s = cls(FREE, {int(e): Fraction(c) for e, c in obj.items()})
        return s.reduce(r) if r != FREE else s

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        if self.ring.mode == "free":
            parts = []
            for e, c in sorted(self._d.items(), reverse=True):
                mono = "" if e == 0 else ("u" if e == 1 else f"u^{e}")
                if mono and c == 1:
                    parts.append(mono)
                elif mono and c == -1:
                    parts.append("-" + mono)
                else:
                    parts.append(_fmt(c) + ("*" + mono if mono else ""))
            return " + ".join(parts).replace("+ -", "- ")
        parts = []
        for i, c in enumerate(self._d):
            if c:
                mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
                if mono and c == 1:
                    parts.append(mono)
                else:
                    parts.append(_fmt(c) + ("*" + mono if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")


def qbinom(n: int, k: int, d: int = 1, ring: ScalarRing = FREE) -> Scalar:
    """Balanced q-binomial ``[n k]`` in base ``v = u^d``.

    Computed by the recurrence ``[n k] = v^k [n-1 k] + v^(k-n) [n-1 k-1]``,
    which is denominator-free; the product formula is the test oracle.
    """
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"qbinom needs 0 <= k <= n, got n={n}, k={k}")
    table = _qbinom_free(n, d)
    s = Scalar(FREE, table[k])
    return s if ring.mode == "free" else s.reduce(ring)


@lru_cache(maxsize=256)
def _qbinom_free(n: int, d: int) -> tuple[dict[int, Fraction], ...]:
    row: list[dict[int, int]] = [{0: 1}]
    for m in range(1, n + 1):
        new = []
        for k in range(m + 1):
            acc: dict[int, int] = {}
            if k < m:
                for e, c in row[k].items():
                    acc[e + d * k] = acc.get(e + d * k, 0) + c
            if k > 0:
                for e, c in row[k - 1].items():
                    acc[e + d * (k - m)] = acc.get(e + d * (k - m), 0) + c
            new.append(acc)
        row = new
    return tuple({e: Fraction(c) for e, c in r.items() if c} for r in row)

