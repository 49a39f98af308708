"""Finite fields ``F_{p^k}`` and exact dense linear algebra over them.

Elements are encoded as integers ``0 .. Q-1`` whose base-``p`` digits are the
coefficients of a polynomial modulo the field's irreducible modulus.
Matrices are tuples of row tuples.  Elimination runs through the kernels in
:mod:`hallcluster._kernels`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from . import _kernels
from .scalars import _is_prime

FMatrix = tuple  # tuple[tuple[int, ...], ...]

DEFAULT_FIELD_CAP = 512
DEFAULT_SUBSPACE_CAP = 10**6


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured cap."""

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what}: needs {needed} > cap {cap}")
        self.what, self.needed, self.cap = what, needed, cap


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    a = list(a)
    k = len(mod) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i] % p
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * mod[j]) % p
    return [x % p for x in a[:k]] + [0] * max(0, k - len(a))


def _is_irreducible(mod: Sequence[int], p: int) -> bool:
    k = len(mod) - 1
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            div = list(low) + [1]
            if not any(_poly_mod(mod, div, p)):
                return False
    return True


class FiniteField:
    """The field with ``p**k`` elements for a fixed modulus."""

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p, self.k = p, k
        self.modulus = tuple(modulus)
        self.order = Q = p**k
        digits = [self._digits(a) for a in range(Q)]
        self.add_t = [0] * (Q * Q)
        self.mul_t = [0] * (Q * Q)
        for a in range(Q):
            da = digits[a]
            for b in range(Q):
                db = digits[b]
                self.add_t[a * Q + b] = self._encode([(x + y) % p for x, y in zip(da, db)])
                if a and b:
                    prod = [0] * (2 * k - 1)
                    for i, x in enumerate(da):
                        if x:
                            for j, y in enumerate(db):
                                prod[i + j] += x * y
                    self.mul_t[a * Q + b] = self._encode(_poly_mod(prod, self.modulus, p))
        self.neg_t = [self._encode([(-x) % p for x in digits[a]]) for a in range(Q)]
        self.inv_t = [0] * Q
        for a in range(1, Q):
            for b in range(1, Q):
                if self.mul_t[a * Q + b] == 1:
                    self.inv_t[a] = b
                    break

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits: Sequence[int]) -> int:
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + d
        return v

    # scalar arithmetic
    def add(self, a: int, b: int) -> int:
        return self.add_t[a * self.order + b]

    def sub(self, a: int, b: int) -> int:
        return self.add_t[a * self.order + self.neg_t[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a * self.order + b]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self.inv_t[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def elements(self) -> range:
        return range(self.order)

    @property
    def tables(self):
        return self.order, self.add_t, self.mul_t, self.neg_t, self.inv_t

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FiniteField:
        field = make_field(obj["p"], obj["k"])
        if "modulus" in obj and tuple(obj["modulus"]) != field.modulus:
            if not _is_irreducible(obj["modulus"], obj["p"]):
                raise ValueError("serialized modulus is reducible")
            return FiniteField(obj["p"], obj["k"], obj["modulus"])
        return field


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, cap: int = DEFAULT_FIELD_CAP) -> FiniteField:
    """Field of order ``p**k``; the modulus is the first irreducible in
    the order ``c0 + c1 p + ... `` of its low coefficients."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p**k > cap:
        raise CapExceeded("field order", p**k, cap)
    if k == 1:
        return FiniteField(p, 1, (0, 1))
    for t in range(p**k):
        low = [(t // p**i) % p for i in range(k)]
        mod = low + [1]
        if low[0] and _is_irreducible(mod, p):
            return FiniteField(p, k, mod)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# matrices


def zeros(r: int, c: int) -> FMatrix:
    return tuple((0,) * c for _ in range(r))


def identity(n: int) -> FMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: FMatrix, ncols: int | None = None) -> FMatrix:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def mat_mul(F: FiniteField, A: FMatrix, B: FMatrix, inner: int | None = None, ncols: int | None = None) -> FMatrix:
    """``A @ B``; ``inner``/``ncols`` disambiguate shapes with zero extent."""
    Q, add, mul = F.order, F.add_t, F.mul_t
    n = ncols if ncols is not None else (len(B[0]) if B else 0)
    Bt = list(zip(*B)) if B and n else [()] * n
    out = []
    for row in A:
        r = []
        for col in Bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = add[s * Q + mul[x * Q + y]]
            r.append(s)
        out.append(tuple(r))
    return tuple(out)


def mat_add(F: FiniteField, A: FMatrix, B: FMatrix) -> FMatrix:
    Q, add = F.order, F.add_t
    return tuple(tuple(add[x * Q + y] for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(F: FiniteField, A: FMatrix, B: FMatrix) -> FMatrix:
    Q, add, neg = F.order, F.add_t, F.neg_t
    return tuple(tuple(add[x * Q + neg[y]] for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(F: FiniteField, c: int, A: FMatrix) -> FMatrix:
    Q, mul = F.order, F.mul_t
    return tuple(tuple(mul[c * Q + x] for x in row) for row in A)


def rref(F: FiniteField, A: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(R, pivots)`` with ``R`` the nonzero rows of the RREF."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A or not ncols:
        return [], []
    Q, add, mul, neg, inv = F.tables
    return _kernels.rref(A, ncols, Q, add, mul, neg, inv)


def rank(F: FiniteField, A: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return len(rref(F, A, ncols)[1])


def det(F: FiniteField, A: Sequence[Sequence[int]]) -> int:
    """Determinant of a square matrix by elimination."""
    n = len(A)
    M = [list(r) for r in A]
    out = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            out = F.neg(out)
        out = F.mul(out, M[c][c])
        ic = F.inv(M[c][c])
        for r in range(c + 1, n):
            if M[r][c]:
                f = F.mul(M[r][c], ic)
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return out


def kernel(F: FiniteField, A: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{x : A x = 0}`` (vectors of length ``ncols``)."""
    R, piv = rref(F, A, ncols)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, piv):
            if row[f]:
                v[pc] = F.neg_t[row[f]]
        basis.append(v)
    return basis


def solve(F: FiniteField, A: Sequence[Sequence[int]], b: Sequence[int], ncols: int):
    """One solution of ``A x = b`` or ``None`` when inconsistent."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(F, aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [0] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


def inverse(F: FiniteField, A: FMatrix) -> FMatrix:
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(F, aug, 2 * n)
    if len(piv) < n or (n and piv[n - 1] != n - 1):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in R)


def row_space(F: FiniteField, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    return rref(F, rows, ncols)[0]


def complement(F: FiniteField, rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Unit vectors spanning a complement of the row space of ``rows``."""
    _, piv = rref(F, rows, n)
    ps = set(piv)
    return [[int(j == c) for j in range(n)] for c in range(n) if c not in ps]


def linalg(F: FiniteField, op: str, A, b=None, ncols: int | None = None):
    """Dispatcher: ``rref`` | ``kernel`` | ``solve`` | ``rank``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if op == "rref":
        return rref(F, A, ncols)
    if op == "kernel":
        return kernel(F, A, ncols)
    if op == "solve":
        if len(b) != len(A):
            raise ValueError("shape mismatch between A and b")
        return solve(F, A, b, ncols)
    if op == "rank":
        return rank(F, A, ncols)
    raise ValueError(f"unknown linalg op {op!r}")


# ---------------------------------------------------------------------------
# subspaces


def gaussian_binomial(n: int, d: int, Q: int) -> int:
    if d < 0 or d > n:
        return 0
    num = den = 1
    for i in range(d):
        num *= Q ** (n - i) - 1
        den *= Q ** (i + 1) - 1
    return num // den


def enum_subspaces(F: FiniteField, n: int, d: int, cap: int = DEFAULT_SUBSPACE_CAP) -> Iterator[FMatrix]:
    """Yield every ``d``-dimensional subspace of ``F^n`` once, as its RREF
    row basis (``d x n``)."""
    total = gaussian_binomial(n, d, F.order)
    if total > cap:
        raise CapExceeded(f"subspaces Gr({d},{n}) over {F!r}", total, cap)
    if d == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), d):
        pset = set(pivots)
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pset]
        for vals in itertools.product(range(F.order), repeat=len(slots)):
            rows = [[0] * n for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)
