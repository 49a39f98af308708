"""Quiver combinatorics: exchange matrices, Euler form, reflections, and
construction of compatible skew-symmetric forms.

Vertices are 0-based internally and 1-based in JSON.  A quiver has ``m``
vertices, the first ``n`` of which are principal (mutable); the remaining
ones are frozen.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from fractions import Fraction
from functools import cached_property
from typing import Sequence

Matrix = tuple  # tuple of row tuples of ints


class QuiverError(ValueError):
    pass


class NoCompatiblePair(ValueError):
    """No skew-symmetric integer matrix is compatible with the exchange matrix."""


class Quiver:
    """An acyclic quiver with ``n`` principal vertices out of ``m``."""

    def __init__(self, m: int, n: int, arrows: Sequence[tuple[int, int]]):
        if not 1 <= n <= m:
            raise QuiverError(f"need 1 <= n <= m, got n={n}, m={m}")
        arrows = tuple((int(s), int(t)) for s, t in arrows)
        for s, t in arrows:
            if not (0 <= s < m and 0 <= t < m):
                raise QuiverError(f"arrow {(s + 1, t + 1)} out of range for {m} vertices")
            if s == t:
                raise QuiverError(f"loop at vertex {s + 1}")
        self.m, self.n, self.arrows = m, n, arrows
        if self.topological_order() is None:
            raise QuiverError("quiver has an oriented cycle")

    # -- basic structure -------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Quiver)
            and (self.m, self.n) == (other.m, other.n)
            and Counter(self.arrows) == Counter(other.arrows)
        )

    def __hash__(self):
        return hash((self.m, self.n, tuple(sorted(self.arrows))))

    def __repr__(self):
        arr = ", ".join(f"{s + 1}->{t + 1}" for s, t in self.arrows)
        return f"Quiver(m={self.m}, n={self.n}, [{arr}])"

    def topological_order(self) -> list[int] | None:
        indeg = [0] * self.m
        for _, t in self.arrows:
            indeg[t] += 1
        order, ready = [], [v for v in range(self.m) if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
        return order if len(order) == self.m else None

    def out_arrows(self, v: int) -> list[int]:
        return [a for a, (s, _) in enumerate(self.arrows) if s == v]

    def in_arrows(self, v: int) -> list[int]:
        return [a for a, (_, t) in enumerate(self.arrows) if t == v]

    def is_sink(self, v: int) -> bool:
        return not self.out_arrows(v)

    def is_source(self, v: int) -> bool:
        return not self.in_arrows(v)

    def principal_arrows(self) -> list[tuple[int, int]]:
        return [(s, t) for s, t in self.arrows if s < self.n and t < self.n]

    def is_principal_sink(self, v: int) -> bool:
        return all(s != v for s, _ in self.principal_arrows())

    def is_principal_source(self, v: int) -> bool:
        return all(t != v for _, t in self.principal_arrows())

    def is_bipartite(self) -> bool:
        """Every principal vertex is a sink or a source of the principal part."""
        return all(self.is_principal_sink(v) or self.is_principal_source(v) for v in range(self.n))

    def underlying_graph(self) -> Counter:
        return Counter(frozenset(a) for a in self.arrows)

    def principal_part(self) -> Quiver:
        return Quiver(self.n, self.n, self.principal_arrows())

    # -- matrices ---------------------------------------------------------
    def _count(self, i: int, j: int) -> int:
        return sum(1 for a in self.arrows if a == (i, j))

    @cached_property
    def Btilde(self) -> Matrix:
        return tuple(tuple(self._count(i, j) - self._count(j, i) for j in range(self.n)) for i in range(self.m))

    @cached_property
    def B(self) -> Matrix:
        return self.Btilde[: self.n]

    @cached_property
    def Rtilde(self) -> Matrix:
        # r_ij = #arrows j -> i = dim Ext^1(S_j, S_i)
        return tuple(tuple(self._count(j, i) for j in range(self.n)) for i in range(self.m))

    @cached_property
    def Rtilde_tr(self) -> Matrix:
        # R of the opposite quiver: #arrows i -> j
        return tuple(tuple(self._count(i, j) for j in range(self.n)) for i in range(self.m))

    @cached_property
    def Itilde(self) -> Matrix:
        return tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.m))

    @cached_property
    def exponent_shift(self) -> Matrix:
        """``Itilde - Rtilde_tr`` (m x n)."""
        return tuple(
            tuple(a - b for a, b in zip(ri, rr)) for ri, rr in zip(self.Itilde, self.Rtilde_tr)
        )

    @cached_property
    def euler_full(self) -> Matrix:
        """Matrix ``C`` with ``<a, b> = a^T C b`` on ``Z^m``."""
        return tuple(tuple(int(i == j) - self._count(i, j) for j in range(self.m)) for i in range(self.m))

    @cached_property
    def euler_principal(self) -> Matrix:
        return tuple(row[: self.n] for row in self.euler_full[: self.n])

    def euler(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Euler form of ``k Q~`` on dimension vectors (padded with zeros)."""
        a = list(a) + [0] * (self.m - len(a))
        b = list(b) + [0] * (self.m - len(b))
        val = sum(x * y for x, y in zip(a, b))
        for s, t in self.arrows:
            val -= a[s] * b[t]
        return val

    # -- paths ------------------------------------------------------------
    def paths(self, start: int) -> list[tuple[int, ...]]:
        """All paths from ``start`` as arrow-index tuples (including the trivial one)."""
        out = [()]
        frontier = [((), start)]
        while frontier:
            nxt = []
            for path, v in frontier:
                for a in self.out_arrows(v):
                    p = path + (a,)
                    out.append(p)
                    nxt.append((p, self.arrows[a][1]))
            frontier = nxt
        return out

    def path_end(self, start: int, path: tuple[int, ...]) -> int:
        return self.arrows[path[-1]][1] if path else start

    def path_count(self, i: int, j: int) -> int:
        return sum(1 for p in self.paths(i) if self.path_end(i, p) == j)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"vertices": self.m, "principal": self.n, "arrows": [[s + 1, t + 1] for s, t in self.arrows]}

    @classmethod
    def from_json(cls, obj: dict) -> Quiver:
        m = obj["vertices"]
        return cls(m, obj.get("principal", m), [(s - 1, t - 1) for s, t in obj["arrows"]])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_quiver(m: int, n: int, arrows: Sequence[tuple[int, int]], one_based: bool = True) -> Quiver:
    """Construct a quiver; arrows are 1-based pairs unless ``one_based=False``."""
    if one_based:
        arrows = [(s - 1, t - 1) for s, t in arrows]
    return Quiver(m, n, arrows)


def kronecker() -> Quiver:
    return Quiver(2, 2, [(0, 1), (0, 1)])


def type_a(orientation: str) -> Quiver:
    """Type A_n quiver from an orientation string such as ``"><"``.

    Character ``i`` gives the arrow between vertices ``i`` and ``i+1``:
    ``>`` for ``i -> i+1`` and ``<`` for ``i+1 -> i``.
    """
    arrows = [(i, i + 1) if c == ">" else (i + 1, i) for i, c in enumerate(orientation)]
    n = len(orientation) + 1
    return Quiver(n, n, arrows)


def reflect_quiver(Q: Quiver, i: int) -> Quiver:
    """Reverse every arrow incident to the principal sink/source ``i``."""
    if not 0 <= i < Q.n:
        raise QuiverError(f"vertex {i + 1} is not principal")
    if not (Q.is_principal_sink(i) or Q.is_principal_source(i)):
        raise QuiverError(f"vertex {i + 1} is neither a sink nor a source")
    arrows = [(t, s) if i in (s, t) else (s, t) for s, t in Q.arrows]
    return Quiver(Q.m, Q.n, arrows)


def principal_framing(Q: Quiver) -> Quiver:
    """Add frozen vertex ``n+i`` with one arrow ``n+i -> i`` per principal ``i``."""
    if Q.m != Q.n:
        raise QuiverError("principal framing needs a quiver without frozen vertices")
    n = Q.n
    return Quiver(2 * n, n, list(Q.arrows) + [(n + i, i) for i in range(n)])


def quiver_from_B(Btilde: Matrix) -> Quiver:
    """The quiver with exchange matrix ``Btilde`` (frozen-frozen arrows omitted)."""
    m, n = len(Btilde), len(Btilde[0])
    arrows = []
    for i in range(m):
        for j in range(n):
            b = Btilde[i][j]
            if b > 0 and (i >= n or i < j):
                arrows += [(i, j)] * b
            elif b < 0 and (i >= n or i < j):
                arrows += [(j, i)] * (-b)
    return Quiver(m, n, arrows)


# ---------------------------------------------------------------------------
# compatible pairs


def _solve_rational(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    rows = [list(r) + [bi] for r, bi in zip(A, b)]
    ncols = len(A[0]) if A else 0
    piv, r = [], 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] for row in rows):
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(rows, piv):
        x[c] = row[-1]
    return x


def _rank_rational(M: Matrix) -> int:
    rows = [[Fraction(x) for x in r] for r in M]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def compatibility(Btilde: Matrix, Lambda: Matrix) -> Matrix:
    """``Btilde^T Lambda`` (n x m)."""
    m, n = len(Btilde), len(Btilde[0])
    return tuple(
        tuple(sum(Btilde[i][k] * Lambda[i][j] for i in range(m)) for j in range(m)) for k in range(n)
    )


def is_compatible(Btilde: Matrix, Lambda: Matrix) -> tuple[int, ...] | None:
    """Return the diagonal of ``D`` when ``Btilde^T Lambda = (D|0)`` with ``D > 0``."""
    m, n = len(Btilde), len(Btilde[0])
    if any(Lambda[i][j] != -Lambda[j][i] for i in range(m) for j in range(m)):
        return None
    C = compatibility(Btilde, Lambda)
    for k in range(n):
        for j in range(m):
            if j != k and C[k][j]:
                return None
        if C[k][k] <= 0:
            return None
    return tuple(C[k][k] for k in range(n))


def find_lambda(Btilde: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """A skew-symmetric integer ``Lambda`` with ``Btilde^T Lambda = (dI | 0)``.

    ``d`` is the least positive integer clearing denominators of the rational
    solution with ``d = 1``; returns ``(Lambda, D)``.
    """
    m, n = len(Btilde), len(Btilde[0])
    if _rank_rational(Btilde) < n:
        raise NoCompatiblePair("exchange matrix is not of full rank")
    if m == 2 * n and all(Btilde[n + i][j] == int(i == j) for i in range(n) for j in range(n)):
        B = Btilde[:n]
        Lam = [[0] * m for _ in range(m)]
        for i in range(n):
            Lam[i][n + i] = -1
            Lam[n + i][i] = 1
            for j in range(n):
                Lam[n + i][n + j] = -B[i][j]
        Lam = tuple(tuple(r) for r in Lam)
        return Lam, is_compatible(Btilde, Lam)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    A, rhs = [], []
    for k in range(n):
        for j in range(m):
            row = [Fraction(0)] * len(pairs)
            for v, (a, b) in enumerate(pairs):
                # Lambda[a][b] = x, Lambda[b][a] = -x
                if b == j:
                    row[v] += Btilde[a][k]
                if a == j:
                    row[v] -= Btilde[b][k]
            A.append(row)
            rhs.append(Fraction(int(j == k)))
    sol = _solve_rational(A, rhs)
    if sol is None:
        raise NoCompatiblePair("no skew-symmetric solution of Btilde^T Lambda = (I|0)")
    d = 1
    for x in sol:
        d = d * x.denominator // math.gcd(d, x.denominator)
    Lam = [[0] * m for _ in range(m)]
    for x, (a, b) in zip(sol, pairs):
        Lam[a][b] = int(x * d)
        Lam[b][a] = -int(x * d)
    Lam = tuple(tuple(r) for r in Lam)
    D = is_compatible(Btilde, Lam)
    assert D is not None and set(D) == {d}
    return Lam, D
