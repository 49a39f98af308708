"""Quiver representations over finite fields and the counting routines built
on them.

A representation of a quiver with ``m`` vertices stores a dimension vector and
one matrix per arrow; arrow ``a: i -> j`` carries a ``dims[j] x dims[i]``
matrix acting on column vectors.  Modules of the principal part are simply
representations vanishing on frozen vertices.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from . import _kernels
from .finfield import (
    DEFAULT_SUBSPACE_CAP,
    CapExceeded,
    FiniteField,
    enum_subspaces,
    gaussian_binomial,
    kernel,
    rank,
    rref,
)
from .quiver import Quiver, reflect_quiver

DEFAULT_ENUM_CAP = 1 << 20


class RepresentationError(ValueError):
    pass


class NotInjective(RepresentationError):
    pass


def _mat(rows: int, cols: int, data) -> tuple:
    out = tuple(tuple(int(x) for x in r) for r in data)
    if len(out) != rows or any(len(r) != cols for r in out):
        raise RepresentationError(f"expected a {rows}x{cols} matrix")
    return out


class Representation:
    """Finite-dimensional representation; immutable and hashable by value."""

    __slots__ = ("quiver", "field", "dims", "maps", "_hash", "__weakref__")

    def __init__(self, quiver: Quiver, field: FiniteField, dims: Sequence[int], maps: Sequence):
        dims = tuple(int(d) for d in dims)
        if len(dims) != quiver.m or any(d < 0 for d in dims):
            raise RepresentationError(f"bad dimension vector {dims} for {quiver.m} vertices")
        if len(maps) != len(quiver.arrows):
            raise RepresentationError("one matrix per arrow is required")
        Q = field.order
        fixed = []
        for (s, t), A in zip(quiver.arrows, maps):
            A = _mat(dims[t], dims[s], A)
            if any(x < 0 or x >= Q for r in A for x in r):
                raise RepresentationError("matrix entry outside the field")
            fixed.append(A)
        self.quiver, self.field, self.dims, self.maps = quiver, field, dims, tuple(fixed)
        self._hash = None

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.dims == other.dims
            and self.maps == other.maps
            and self.quiver == other.quiver
            and self.field == other.field
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dims, self.maps))
        return self._hash

    def __repr__(self):
        return f"Representation(dims={self.dims}, maps={self.maps})"

    @property
    def dim(self) -> tuple[int, ...]:
        return self.dims

    def principal_dim(self) -> tuple[int, ...]:
        return self.dims[: self.quiver.n]

    def is_zero(self) -> bool:
        return not any(self.dims)

    def is_principal(self) -> bool:
        return not any(self.dims[self.quiver.n:])

    def total_dim(self) -> int:
        return sum(self.dims)

    def apply(self, a: int, v: Sequence[int]) -> list[int]:
        F = self.field
        Q, add, mul = F.order, F.add_t, F.mul_t
        out = []
        for row in self.maps[a]:
            s = 0
            for x, y in zip(row, v):
                if x and y:
                    s = add[s * Q + mul[x * Q + y]]
            out.append(s)
        return out

    def arrow_ranks(self) -> tuple[int, ...]:
        return _arrow_ranks(self)

    def direct_sum(self, other: Representation) -> Representation:
        _same_category(self, other)
        maps = []
        for (s, t), A, B in zip(self.quiver.arrows, self.maps, other.maps):
            ds1, ds2 = self.dims[s], other.dims[s]
            rows = [tuple(r) + (0,) * ds2 for r in A] + [(0,) * ds1 + tuple(r) for r in B]
            maps.append(rows)
        return Representation(self.quiver, self.field, [a + b for a, b in zip(self.dims, other.dims)], maps)

    def base_change(self, g: Sequence) -> Representation:
        """Conjugate by invertible matrices ``g[i]``: ``M_a -> g_t M_a g_s^-1``."""
        from .finfield import inverse, mat_mul

        F = self.field
        ginv = [inverse(F, gi) if gi else () for gi in g]
        maps = []
        for (s, t), A in zip(self.quiver.arrows, self.maps):
            if not self.dims[s] or not self.dims[t]:
                maps.append(A)
                continue
            maps.append(mat_mul(F, mat_mul(F, g[t], A), ginv[s]))
        return Representation(self.quiver, self.field, self.dims, maps)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {str(a): [list(r) for r in A] for a, A in enumerate(self.maps)},
            "field": self.field.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict, quiver: Quiver, field: FiniteField | None = None) -> Representation:
        if field is None:
            field = FiniteField.from_json(obj["field"])
        dims = obj["dims"]
        maps = []
        for a, (s, t) in enumerate(quiver.arrows):
            A = obj.get("maps", {}).get(str(a))
            maps.append(A if A is not None else [[0] * dims[s] for _ in range(dims[t])])
        return cls(quiver, field, dims, maps)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@lru_cache(maxsize=200_000)
def _arrow_ranks(M: Representation) -> tuple[int, ...]:
    return tuple(rank(M.field, A, M.dims[s]) for (s, _), A in zip(M.quiver.arrows, M.maps))


@lru_cache(maxsize=200_000)
def iso_invariants(M: Representation) -> tuple:
    """Cheap isomorphism invariants: dimensions, arrow ranks, ``dim End`` and,
    for each pair of parallel arrows ``a, b``, the ranks of ``M_a + l M_b``
    for every field element ``l`` (the pencil ranks).  Square pencils also
    record ``det(M_a + l M_b)`` and ``det M_b`` up to a common scalar."""
    from .finfield import det, mat_add, mat_scale

    F = M.field
    pencil = []
    arrows = M.quiver.arrows
    for a in range(len(arrows)):
        for b in range(a + 1, len(arrows)):
            if arrows[a] != arrows[b]:
                continue
            s = arrows[a][0]
            if not M.dims[s] or not M.dims[arrows[a][1]]:
                continue
            A, B = M.maps[a], M.maps[b]
            pens = [mat_add(F, A, mat_scale(F, lam, B)) for lam in range(1, F.order)]
            pencil.append(tuple(rank(F, P, M.dims[s]) for P in pens))
            if M.dims[s] == M.dims[arrows[a][1]]:
                vals = [det(F, P) for P in [A, B] + pens]
                lead = next((v for v in vals if v), None)
                if lead is not None:
                    il = F.inv(lead)
                    pencil.append(tuple(F.mul(v, il) for v in vals))
    return (M.dims, M.arrow_ranks(), end_dim(M), tuple(pencil))


def zero_rep(quiver: Quiver, field: FiniteField) -> Representation:
    return Representation(quiver, field, (0,) * quiver.m, [() for _ in quiver.arrows])


def _same_category(M: Representation, N: Representation):
    if M.quiver != N.quiver:
        raise RepresentationError("representations of different quivers")
    if M.field != N.field:
        raise RepresentationError("representations over different fields")


# ---------------------------------------------------------------------------
# Hom and Ext


class HomData:
    """Hom(M, N) as the kernel of ``d: (+)_i Hom(M_i,N_i) -> (+)_a Hom(M_i,N_j)``.

    ``d(f)_a = N_a f_i - f_j M_a``.  Unknowns are laid out vertex by vertex,
    each block ``N_i x M_i`` row-major.
    """

    def __init__(self, M: Representation, N: Representation):
        _same_category(M, N)
        F, Q = M.field, M.field.order
        add, neg = F.add_t, F.neg_t
        q = M.quiver
        self.offsets, off = [], 0
        for i in range(q.m):
            self.offsets.append(off)
            off += N.dims[i] * M.dims[i]
        self.nunk = off
        self.target_offsets, toff = [], 0
        rows = []
        for a, (i, j) in enumerate(q.arrows):
            self.target_offsets.append(toff)
            mi, nj, ni, mj = M.dims[i], N.dims[j], N.dims[i], M.dims[j]
            Na, Ma = N.maps[a], M.maps[a]
            oi, oj = self.offsets[i], self.offsets[j]
            for r in range(nj):
                for c in range(mi):
                    row = [0] * off
                    for s in range(ni):
                        x = Na[r][s]
                        if x:
                            k = oi + s * mi + c
                            row[k] = add[row[k] * Q + x]
                    for t in range(mj):
                        x = Ma[t][c]
                        if x:
                            k = oj + r * mj + t
                            row[k] = add[row[k] * Q + neg[x]]
                    rows.append(row)
            toff += nj * mi
        self.ntarget = toff
        self.d_rows = rows
        self.basis = kernel(F, rows, off) if off else []
        self.rank_d = off - len(self.basis)
        self.M, self.N = M, N

    @property
    def hom_dim(self) -> int:
        return len(self.basis)

    @property
    def ext_dim(self) -> int:
        return self.ntarget - self.rank_d

    def blocks(self) -> list[tuple[int, int]]:
        return [(self.offsets[i], self.M.dims[i]) for i in range(self.M.quiver.m)]

    def unflatten(self, vec: Sequence[int]) -> tuple:
        """Flat vector -> tuple of matrices ``f_i`` (``N_i x M_i``)."""
        out = []
        for i in range(self.M.quiver.m):
            mi, ni, o = self.M.dims[i], self.N.dims[i], self.offsets[i]
            out.append(tuple(tuple(vec[o + r * mi: o + (r + 1) * mi]) for r in range(ni)))
        return tuple(out)

    def cokernel_complement(self) -> list[int]:
        """Target coordinates whose unit vectors span a complement of ``im d``."""
        cols = [list(c) for c in zip(*self.d_rows)] if self.d_rows else []
        _, piv = rref(self.M.field, cols, self.ntarget) if cols else ([], [])
        ps = set(piv)
        return [c for c in range(self.ntarget) if c not in ps]


@lru_cache(maxsize=200_000)
def hom_data(M: Representation, N: Representation) -> HomData:
    return HomData(M, N)


def hom_space(M: Representation, N: Representation) -> list[tuple]:
    """Basis of Hom(M, N) as tuples of per-vertex matrices."""
    h = hom_data(M, N)
    return [h.unflatten(v) for v in h.basis]


def hom_dim(M: Representation, N: Representation) -> int:
    return hom_data(M, N).hom_dim


def ext1_dim(M: Representation, N: Representation) -> int:
    """dim Ext^1(M, N) from the cokernel of ``d``; checked against
    ``hom - <dim M, dim N>``."""
    h = hom_data(M, N)
    via_euler = h.hom_dim - M.quiver.euler(M.dims, N.dims)
    if via_euler != h.ext_dim:
        raise AssertionError(f"Ext^1 mismatch: cokernel {h.ext_dim} vs Euler {via_euler}")
    return h.ext_dim


def end_dim(M: Representation) -> int:
    return hom_dim(M, M)


# ---------------------------------------------------------------------------
# isomorphism, decomposition, automorphisms


def _scan(h: HomData, mode: int, cap: int, what: str):
    F = h.M.field
    Q = F.order
    total = Q ** h.hom_dim
    if total > cap:
        raise CapExceeded(what, total, cap)
    return _kernels.scan(h.basis, h.blocks(), Q, F.add_t, F.mul_t, F.neg_t, F.inv_t, mode)


def is_isomorphic(M: Representation, N: Representation, cap: int = DEFAULT_ENUM_CAP) -> bool:
    """Exact isomorphism test.

    Cheap invariants first, then a search for an invertible element of
    Hom(M, N); large Hom spaces go through Krull-Schmidt decompositions.
    """
    _same_category(M, N)
    if M.dims != N.dims:
        return False
    if M == N:
        return True
    if iso_invariants(M) != iso_invariants(N):
        return False
    h = hom_data(M, N)
    if h.hom_dim != end_dim(M):
        return False
    Q = M.field.order
    if Q ** h.hom_dim <= min(cap, 1 << 16) or h.hom_dim <= 2:
        return _scan(h, _kernels.MODE_FIRST_INVERTIBLE, cap, "Hom enumeration for isomorphism") is not None
    dm, dn = decompose(M, cap), decompose(N, cap)
    if len(dm) != len(dn):
        return False
    used = [False] * len(dn)
    for X in dm:
        for k, Y in enumerate(dn):
            if not used[k] and X.dims == Y.dims and is_isomorphic(X, Y, cap):
                used[k] = True
                break
        else:
            return False
    return True


def _is_nilpotent(F: FiniteField, A) -> bool:
    from .finfield import mat_mul

    d = len(A)
    P = A
    for _ in range(d):
        if not any(any(r) for r in P):
            return True
        P = mat_mul(F, P, A)
    return not any(any(r) for r in P)


def _splits(M: Representation, f) -> bool:
    F = M.field
    inv = all(rank(F, fi, len(fi)) == len(fi) for fi in f if fi)
    if inv:
        return False
    return not all(_is_nilpotent(F, fi) for fi in f if fi)


def _matrix_power(F, A, k):
    from .finfield import identity, mat_mul

    out = identity(len(A))
    for _ in range(k):
        out = mat_mul(F, out, A)
    return out


def _column_basis(F, A, nrows: int) -> list[list[int]]:
    cols = [list(c) for c in zip(*A)] if A and A[0] else []
    return rref(F, cols, nrows)[0] if cols else []


def coordinates(F: FiniteField, basis: Sequence[Sequence[int]], targets: Sequence[Sequence[int]], n: int):
    """Coordinates of each target w.r.t. the independent vectors ``basis``."""
    k = len(basis)
    if not targets:
        return []
    if k == 0:
        if any(any(t) for t in targets):
            raise RepresentationError("vector outside the subspace")
        return [[] for _ in targets]
    # rows: coordinates r of F^n; columns: basis vectors then targets
    rows = [[basis[c][r] for c in range(k)] + [t[r] for t in targets] for r in range(n)]
    R, piv = rref(F, rows, k + len(targets))
    if len(piv) > k and piv[k] < k + len(targets) and any(p >= k for p in piv):
        raise RepresentationError("vector outside the subspace")
    if piv[:k] != list(range(k)):
        raise RepresentationError("basis vectors are dependent")
    return [[R[r][k + t] for r in range(k)] for t in range(len(targets))]


def restrict(M: Representation, bases: Sequence[Sequence[Sequence[int]]]) -> Representation:
    """Subrepresentation spanned by ``bases[i]`` at each vertex."""
    F = M.field
    maps = []
    for a, (s, t) in enumerate(M.quiver.arrows):
        imgs = [M.apply(a, v) for v in bases[s]]
        co = coordinates(F, bases[t], imgs, M.dims[t])
        maps.append(tuple(tuple(co[c][r] for c in range(len(bases[s]))) for r in range(len(bases[t]))))
    return Representation(M.quiver, F, [len(b) for b in bases], maps)


def quotient(M: Representation, bases: Sequence[Sequence[Sequence[int]]]) -> Representation:
    """``M / V`` with ``V`` spanned by ``bases[i]``; coordinates on a unit-vector complement."""
    F = M.field
    comps = []
    for i in range(M.quiver.m):
        d = M.dims[i]
        _, piv = rref(F, bases[i], d) if bases[i] else ([], [])
        ps = set(piv)
        comps.append([[int(j == c) for j in range(d)] for c in range(d) if c not in ps])
    maps = []
    for a, (s, t) in enumerate(M.quiver.arrows):
        full = list(bases[t]) + comps[t]
        imgs = [M.apply(a, v) for v in comps[s]]
        co = coordinates(F, full, imgs, M.dims[t])
        k = len(bases[t])
        maps.append(tuple(tuple(co[c][k + r] for c in range(len(comps[s]))) for r in range(len(comps[t]))))
    return Representation(M.quiver, F, [len(c) for c in comps], maps)


def fitting_split(M: Representation, f) -> tuple[Representation, Representation]:
    """``M = im f^r (+) ker f^r`` for an endomorphism ``f``."""
    F = M.field
    im_b, ker_b = [], []
    for i, fi in enumerate(f):
        d = M.dims[i]
        if not d:
            im_b.append([])
            ker_b.append([])
            continue
        g = _matrix_power(F, fi, d)
        im_b.append(_column_basis(F, g, d))
        ker_b.append(kernel(F, g, d))
    return restrict(M, im_b), restrict(M, ker_b)


@lru_cache(maxsize=50_000)
def _decompose(M: Representation, cap: int) -> tuple[Representation, ...]:
    if M.is_zero():
        return ()
    h = hom_data(M, M)
    if h.hom_dim <= 1:
        return (M,)
    f = None
    for v in h.basis:
        cand = h.unflatten(v)
        if _splits(M, cand):
            f = cand
            break
    if f is None:
        vec = _scan(h, _kernels.MODE_FIRST_SPLITTING, cap, "End enumeration for decomposition")
        if vec is None:
            return (M,)
        f = h.unflatten(vec)
    X, Y = fitting_split(M, f)
    return _decompose(X, cap) + _decompose(Y, cap)


def decompose(M: Representation, cap: int = DEFAULT_ENUM_CAP) -> list[Representation]:
    """Indecomposable direct summands (Krull-Schmidt), via Fitting splits."""
    return list(_decompose(M, cap))


def is_indecomposable(M: Representation, cap: int = DEFAULT_ENUM_CAP) -> bool:
    return not M.is_zero() and len(decompose(M, cap)) == 1


def _gl_order(n: int, s: int) -> int:
    out = 1
    for i in range(n):
        out *= s**n - s**i
    return out


@lru_cache(maxsize=50_000)
def _aut_direct(M: Representation, cap: int) -> int:
    if M.is_zero():
        return 1
    return _scan(hom_data(M, M), _kernels.MODE_COUNT_INVERTIBLE, cap, "End enumeration for |Aut|")


def aut_count_structural(M: Representation, cap: int = DEFAULT_ENUM_CAP) -> int:
    """|Aut M| from the Krull-Schmidt decomposition.

    With ``M = (+) X_i^n_i`` and ``End(X_i)/rad = F_{Q^d_i}``:
    ``|Aut M| = Q^(dim End M - sum n_i^2 d_i) * prod |GL_{n_i}(Q^d_i)|``.
    """
    Q = M.field.order
    classes: list[list] = []
    for X in decompose(M, cap):
        for c in classes:
            if c[0].dims == X.dims and is_isomorphic(c[0], X, cap):
                c[1] += 1
                break
        else:
            classes.append([X, 1])
    exp = end_dim(M)
    out = 1
    for X, n in classes:
        hx = end_dim(X)
        units = _aut_direct(X, cap)
        nonunits = Q**hx - units
        dx = hx
        while Q ** (hx - dx) < nonunits:
            dx -= 1
        assert Q ** (hx - dx) == nonunits, "End of an indecomposable must be local"
        exp -= n * n * dx
        out *= _gl_order(n, Q**dx)
    return Q**exp * out


def aut_count(M: Representation, cap: int = DEFAULT_ENUM_CAP) -> int:
    """|Aut M|: direct count of invertible endomorphisms when small."""
    Q = M.field.order
    if Q ** end_dim(M) <= min(cap, 1 << 14):
        return _aut_direct(M, cap)
    return aut_count_structural(M, cap)


# ---------------------------------------------------------------------------
# iso-class tables


class IsoClassTable:
    """``(representative, payload)`` pairs with pairwise non-isomorphic keys.

    Keys may be single representations or tuples of them (compared
    componentwise).
    """

    def __init__(self, cap: int = DEFAULT_ENUM_CAP):
        self.entries: list[list] = []
        self._buckets: dict = {}
        self.cap = cap

    @staticmethod
    def _sig(key):
        reps = key if isinstance(key, tuple) else (key,)
        return tuple(iso_invariants(r) for r in reps)

    def _iso(self, a, b) -> bool:
        if isinstance(a, tuple):
            return all(is_isomorphic(x, y, self.cap) for x, y in zip(a, b))
        return is_isomorphic(a, b, self.cap)

    def find(self, key) -> int | None:
        for idx in self._buckets.get(self._sig(key), []):
            if self._iso(self.entries[idx][0], key):
                return idx
        return None

    def add(self, key, payload, merge: Callable = lambda a, b: a + b) -> int:
        idx = self.find(key)
        if idx is None:
            self.entries.append([key, payload])
            idx = len(self.entries) - 1
            self._buckets.setdefault(self._sig(key), []).append(idx)
        else:
            self.entries[idx][1] = merge(self.entries[idx][1], payload)
        return idx

    def __iter__(self):
        return iter((k, v) for k, v in self.entries)

    def __len__(self):
        return len(self.entries)

    def items(self):
        return [(k, v) for k, v in self.entries]


# ---------------------------------------------------------------------------
# quiver Grassmannians


def _preimage(M: Representation, i: int, chosen: dict) -> list[list[int]]:
    """``{v in M_i : M_a v in V_j for every arrow a: i -> j}``."""
    F = M.field
    d = M.dims[i]
    rows = []
    for a in M.quiver.out_arrows(i):
        j = M.quiver.arrows[a][1]
        Vj = chosen[j]
        if len(Vj) == M.dims[j]:
            continue
        ann = kernel(F, Vj, M.dims[j]) if Vj else [[int(r == c) for c in range(M.dims[j])] for r in range(M.dims[j])]
        A = M.maps[a]
        for phi in ann:
            rows.append([_dot(F, phi, [A[r][c] for r in range(M.dims[j])]) for c in range(d)])
    if not rows:
        return [[int(r == c) for c in range(d)] for r in range(d)]
    return kernel(F, rows, d)


def _dot(F, x, y) -> int:
    Q, add, mul = F.order, F.add_t, F.mul_t
    s = 0
    for a, b in zip(x, y):
        if a and b:
            s = add[s * Q + mul[a * Q + b]]
    return s


def _image_sum(M: Representation, j: int, chosen: dict) -> list[list[int]]:
    F = M.field
    vecs = []
    for a in M.quiver.in_arrows(j):
        i = M.quiver.arrows[a][0]
        vecs += [M.apply(a, v) for v in chosen[i]]
    return rref(F, vecs, M.dims[j])[0] if vecs else []


def _combine(F, U, basis) -> list[list[int]]:
    out = []
    n = len(basis[0]) if basis else 0
    for row in U:
        v = [0] * n
        for c, b in zip(row, basis):
            if c:
                v = [F.add_t[x * F.order + F.mul_t[c * F.order + y]] for x, y in zip(v, b)]
        out.append(v)
    return out


def _subspace_total(n: int, Q: int) -> int:
    return sum(gaussian_binomial(n, d, Q) for d in range(n + 1))


@lru_cache(maxsize=20_000)
def gr_counts(M: Representation, cap: int = DEFAULT_SUBSPACE_CAP) -> dict[tuple[int, ...], int]:
    """``{e: |Gr_e M|}`` for every sub-dimension vector with a nonzero count.

    Vertices are visited either forwards (``V_j`` must contain the images of
    its predecessors; sinks are counted by a Gaussian binomial) or backwards
    (``V_i`` lies in the preimage of its successors; sources are counted in
    closed form), whichever enumerates fewer subspaces.
    """
    q, F, Q = M.quiver, M.field, M.field.order
    order = q.topological_order()
    fwd_enum = [v for v in order if q.out_arrows(v) and M.dims[v]]
    bwd_enum = [v for v in reversed(order) if q.in_arrows(v) and M.dims[v]]
    cost_f = 1
    for v in fwd_enum:
        cost_f *= _subspace_total(M.dims[v], Q)
    cost_b = 1
    for v in bwd_enum:
        cost_b *= _subspace_total(M.dims[v], Q)
    forward = cost_f <= cost_b
    if min(cost_f, cost_b) > cap:
        raise CapExceeded(f"quiver Grassmannian enumeration for dims {M.dims}", min(cost_f, cost_b), cap)
    seq = fwd_enum if forward else bwd_enum
    closed = [v for v in range(q.m) if v not in seq]
    result: dict[tuple[int, ...], int] = {}

    def finish(chosen, e):
        # closed-form vertices: gaussian binomials, independent of each other
        dists = []
        for v in closed:
            d = M.dims[v]
            if forward:
                w = len(_image_sum(M, v, chosen)) if d else 0
                dists.append([(k, gaussian_binomial(d - w, k - w, Q)) for k in range(w, d + 1)])
            else:
                p = len(_preimage(M, v, chosen)) if d else 0
                dists.append([(k, gaussian_binomial(p, k, Q)) for k in range(0, p + 1)])
        for combo in itertools.product(*dists):
            ee = list(e)
            cnt = 1
            for v, (k, c) in zip(closed, combo):
                ee[v] = k
                cnt *= c
            key = tuple(ee)
            result[key] = result.get(key, 0) + cnt

    def rec(idx, chosen, e):
        if idx == len(seq):
            finish(chosen, e)
            return
        v = seq[idx]
        d = M.dims[v]
        if forward:
            W = _image_sum(M, v, chosen)
            comp = [[int(j == c) for j in range(d)] for c in range(d) if c not in set(rref(F, W, d)[1])] if W else [
                [int(j == c) for j in range(d)] for c in range(d)
            ]
            for k in range(len(W), d + 1):
                for U in enum_subspaces(F, d - len(W), k - len(W), cap):
                    chosen[v] = W + _combine(F, U, comp)
                    e[v] = k
                    rec(idx + 1, chosen, e)
        else:
            P = _preimage(M, v, chosen)
            for k in range(0, len(P) + 1):
                for U in enum_subspaces(F, len(P), k, cap):
                    chosen[v] = _combine(F, U, P)
                    e[v] = k
                    rec(idx + 1, chosen, e)
        chosen.pop(v, None)

    rec(0, {v: [] for v in range(q.m) if not M.dims[v]}, [0] * q.m)
    return result


def gr_count(M: Representation, e: Sequence[int], cap: int = DEFAULT_SUBSPACE_CAP) -> int:
    e = tuple(e) + (0,) * (M.quiver.m - len(e))
    if any(x < 0 or x > d for x, d in zip(e, M.dims)):
        return 0
    return gr_counts(M, cap).get(e, 0)


def subrepresentations(M: Representation, e: Sequence[int], cap: int = DEFAULT_SUBSPACE_CAP) -> Iterator[list]:
    """Brute force: every arrow-stable tuple of subspaces with dimension ``e``."""
    F = M.field
    spaces = [list(enum_subspaces(F, M.dims[i], e[i], cap)) for i in range(M.quiver.m)]
    for combo in itertools.product(*spaces):
        ok = True
        for a, (s, t) in enumerate(M.quiver.arrows):
            if not combo[s]:
                continue
            if len(combo[t]) == M.dims[t]:
                continue
            imgs = [M.apply(a, v) for v in combo[s]]
            if rank(F, list(combo[t]) + imgs, M.dims[t]) > len(combo[t]):
                ok = False
                break
        if ok:
            yield [list(map(list, c)) for c in combo]


# ---------------------------------------------------------------------------
# extensions and Hom strata


def extension_rep(M: Representation, N: Representation, h: HomData, zeta: Sequence[int]) -> Representation:
    """Middle term of the class ``zeta`` (target-space vector of ``d``):
    ``E_i = N_i (+) M_i``, ``E_a = [[N_a, zeta_a], [0, M_a]]``."""
    maps = []
    for a, (s, t) in enumerate(M.quiver.arrows):
        ns, ms, nt, mt = N.dims[s], M.dims[s], N.dims[t], M.dims[t]
        o = h.target_offsets[a]
        rows = []
        for r in range(nt):
            rows.append(tuple(N.maps[a][r]) + tuple(zeta[o + r * ms + c] for c in range(ms)))
        for r in range(mt):
            rows.append((0,) * ns + tuple(M.maps[a][r]))
        maps.append(rows)
    return Representation(M.quiver, M.field, [a + b for a, b in zip(N.dims, M.dims)], maps)


def ext_middle_terms(M: Representation, N: Representation, cap: int = DEFAULT_ENUM_CAP) -> IsoClassTable:
    """Middle terms of ``0 -> N -> E -> M -> 0`` with ``eps^E_{MN}``.

    Classes of Ext^1(M, N) are enumerated through a unit-vector complement of
    ``im d``; the split class is enumerated first.
    """
    h = hom_data(M, N)
    comp = h.cokernel_complement()
    Q = M.field.order
    if Q ** len(comp) > cap:
        raise CapExceeded(f"Ext^1 enumeration for dims {M.dims}, {N.dims}", Q ** len(comp), cap)
    table = IsoClassTable(cap)
    for vals in itertools.product(range(Q), repeat=len(comp)):
        zeta = [0] * h.ntarget
        for c, v in zip(comp, vals):
            zeta[c] = v
        table.add(extension_rep(M, N, h, zeta), 1)
    return table


def kernel_rep(M: Representation, f) -> Representation:
    F = M.field
    return restrict(M, [kernel(F, fi, M.dims[i]) if M.dims[i] else [] for i, fi in enumerate(f)])


def cokernel_rep(N: Representation, f, M: Representation) -> Representation:
    F = N.field
    images = []
    for i, fi in enumerate(f):
        if not N.dims[i] or not M.dims[i]:
            images.append([])
        else:
            images.append(_column_basis(F, fi, N.dims[i]))
    return quotient(N, images)


def socle_dim(M: Representation) -> tuple[int, ...]:
    F = M.field
    out = []
    for i in range(M.quiver.m):
        d = M.dims[i]
        rows = [r for a in M.quiver.out_arrows(i) for r in M.maps[a]]
        out.append(d - rank(F, rows, d) if rows and d else d)
    return tuple(out)


def top_dim(M: Representation) -> tuple[int, ...]:
    F = M.field
    out = []
    for j in range(M.quiver.m):
        vecs = []
        for a in M.quiver.in_arrows(j):
            A = M.maps[a]
            vecs += [list(c) for c in zip(*A)] if A and A[0] else []
        out.append(M.dims[j] - (rank(F, vecs, M.dims[j]) if vecs else 0))
    return tuple(out)


def is_injective(I: Representation) -> bool:
    """``I`` is injective iff ``dim I = sum_i soc_i * dim I_i``."""
    from .catalog import injective_dim

    soc = socle_dim(I)
    target = [0] * I.quiver.m
    for i, s in enumerate(soc):
        if s:
            for j, x in enumerate(injective_dim(I.quiver, i)):
                target[j] += s * x
    return tuple(target) == I.dims


def hom_to_injective_strata(M: Representation, I: Representation, cap: int = DEFAULT_ENUM_CAP):
    """Strata of Hom(M, I) by ``(ker f, coker f)`` up to isomorphism.

    Returns ``(table, flags)``: an IsoClassTable keyed by ``(B, I')`` with
    counts, and a list of non-injective cokernels (expected empty).
    """
    if not is_injective(I):
        raise NotInjective(f"dims {I.dims} with socle {socle_dim(I)} is not injective")
    h = hom_data(M, I)
    Q = M.field.order
    if Q ** h.hom_dim > cap:
        raise CapExceeded(f"Hom enumeration for strata, dims {M.dims}, {I.dims}", Q ** h.hom_dim, cap)
    table = IsoClassTable(cap)
    flags = []
    for vals in itertools.product(range(Q), repeat=h.hom_dim):
        vec = [0] * h.nunk
        for c, b in zip(vals, h.basis):
            if c:
                vec = [M.field.add(x, M.field.mul(c, y)) for x, y in zip(vec, b)]
        f = h.unflatten(vec)
        B = kernel_rep(M, f)
        C = cokernel_rep(I, f, M)
        if not is_injective(C):
            flags.append(C)
        table.add((B, C), 1)
    return table, flags


# ---------------------------------------------------------------------------
# BGP reflection


def bgp_reflect(M: Representation, i: int, direction: str = "+") -> Representation:
    """Sigma_i^+ at a sink (``"+"``) or Sigma_i^- at a source (``"-"``).

    The result lives on ``reflect_quiver(Q, i)`` with the same arrow indices.
    """
    q, F = M.quiver, M.field
    Qr = reflect_quiver(q, i)
    if direction == "+":
        if q.out_arrows(i):
            raise RepresentationError(f"vertex {i + 1} is not a sink")
        inc = q.in_arrows(i)
        sizes = [M.dims[q.arrows[a][0]] for a in inc]
        total = sum(sizes)
        d = M.dims[i]
        # h = [M_a1 | M_a2 | ...] : (+) M_s(a) -> M_i
        hrows = [sum((list(M.maps[a][r]) for a in inc), []) for r in range(d)]
        K = kernel(F, hrows, total) if d else [[int(r == c) for c in range(total)] for r in range(total)]
        maps = list(M.maps)
        off = 0
        for a, sz in zip(inc, sizes):
            maps[a] = tuple(tuple(v[off + r] for v in K) for r in range(sz))
            off += sz
        dims = list(M.dims)
        dims[i] = len(K)
        return Representation(Qr, F, dims, maps)
    if direction == "-":
        if q.in_arrows(i):
            raise RepresentationError(f"vertex {i + 1} is not a source")
        out = q.out_arrows(i)
        sizes = [M.dims[q.arrows[a][1]] for a in out]
        total = sum(sizes)
        d = M.dims[i]
        # image of M_i -> (+) M_t(a), v -> (M_a v)_a
        cols = [sum((list(M.apply(a, [int(r == c) for r in range(d)])) for a in out), []) for c in range(d)]
        img = rref(F, cols, total)[0] if cols else []
        piv = set(rref(F, img, total)[1]) if img else set()
        comp = [c for c in range(total) if c not in piv]
        maps = list(M.maps)
        off = 0
        for a, sz in zip(out, sizes):
            cols_a = []
            for r in range(sz):
                e = [0] * total
                e[off + r] = 1
                co = coordinates(F, img + [[int(j == c) for j in range(total)] for c in comp], [e], total)[0]
                cols_a.append(co[len(img):])
            maps[a] = tuple(tuple(cols_a[r][k] for r in range(sz)) for k in range(len(comp)))
            off += sz
        dims = list(M.dims)
        dims[i] = len(comp)
        return Representation(Qr, F, dims, maps)
    raise ValueError("direction must be '+' or '-'")


def random_rep(quiver: Quiver, field: FiniteField, dims: Sequence[int], rng) -> Representation:
    maps = []
    for s, t in quiver.arrows:
        maps.append([[rng.randrange(field.order) for _ in range(dims[s])] for _ in range(dims[t])])
    return Representation(quiver, field, dims, maps)
