"""Standard modules: simples, indecomposable projectives and injectives,
Kronecker normal forms, type-A interval modules, and a small descriptor
language used by the command line (``"M(3)"``, ``"R(1)@lambda=0"``, ``"I2"``).
"""

from __future__ import annotations

import json
import re
from typing import Sequence

from .finfield import FiniteField
from .quiver import Quiver
from .reps import Representation, RepresentationError


def _zero_maps(q: Quiver, dims: Sequence[int]) -> list:
    return [[[0] * dims[s] for _ in range(dims[t])] for s, t in q.arrows]


def simple(q: Quiver, F: FiniteField, i: int) -> Representation:
    dims = [int(j == i) for j in range(q.m)]
    return Representation(q, F, dims, _zero_maps(q, dims))


def projective(q: Quiver, F: FiniteField, i: int) -> Representation:
    """``P_i``: basis of ``(P_i)_j`` are the paths ``i -> j``; arrows extend paths."""
    paths = q.paths(i)
    at = [[p for p in paths if q.path_end(i, p) == j] for j in range(q.m)]
    dims = [len(x) for x in at]
    maps = _zero_maps(q, dims)
    for a, (s, t) in enumerate(q.arrows):
        for c, p in enumerate(at[s]):
            maps[a][at[t].index(p + (a,))][c] = 1
    return Representation(q, F, dims, maps)


def injective_dim(q: Quiver, i: int) -> tuple[int, ...]:
    return tuple(q.path_count(j, i) for j in range(q.m))


def injective(q: Quiver, F: FiniteField, i: int) -> Representation:
    """``I_i``: basis of ``(I_i)_j`` are the paths ``j -> i``; an arrow ``a``
    sends ``a p'`` to ``p'`` and kills paths not starting with ``a``."""
    at = [[p for p in q.paths(j) if q.path_end(j, p) == i] for j in range(q.m)]
    dims = [len(x) for x in at]
    maps = _zero_maps(q, dims)
    for a, (s, t) in enumerate(q.arrows):
        for c, p in enumerate(at[s]):
            if p and p[0] == a:
                maps[a][at[t].index(p[1:])][c] = 1
    return Representation(q, F, dims, maps)


def direct_sum(reps: Sequence[Representation]) -> Representation:
    out = reps[0]
    for r in reps[1:]:
        out = out.direct_sum(r)
    return out


# ---------------------------------------------------------------------------
# Kronecker quiver 1 => 2 (arrows 0 and 1)


def _kron_check(q: Quiver):
    if q.m < 2 or sorted(a for a in q.arrows if a[0] < 2 and a[1] < 2) != [(0, 1), (0, 1)]:
        raise RepresentationError("Kronecker normal forms need the quiver 1 => 2")


def _kron(q, F, d1, d2, A, B) -> Representation:
    dims = [d1, d2] + [0] * (q.m - 2)
    maps = _zero_maps(q, dims)
    k = 0
    for a, (s, t) in enumerate(q.arrows):
        if (s, t) == (0, 1):
            maps[a] = A if k == 0 else B
            k += 1
    return Representation(q, F, dims, maps)


def kron_preprojective(q: Quiver, F: FiniteField, n: int) -> Representation:
    """``M(n)``, dims ``(n-1, n)``, maps ``[I; 0]`` and ``[0; I]``."""
    _kron_check(q)
    if n < 1:
        raise ValueError("M(n) needs n >= 1")
    A = [[int(r == c) for c in range(n - 1)] for r in range(n)]
    B = [[int(r == c + 1) for c in range(n - 1)] for r in range(n)]
    return _kron(q, F, n - 1, n, A, B)


def kron_preinjective(q: Quiver, F: FiniteField, n: int) -> Representation:
    """``N(n)``, dims ``(n, n-1)``, maps ``[I 0]`` and ``[0 I]``."""
    _kron_check(q)
    if n < 1:
        raise ValueError("N(n) needs n >= 1")
    A = [[int(c == r) for c in range(n)] for r in range(n - 1)]
    B = [[int(c == r + 1) for c in range(n)] for r in range(n - 1)]
    return _kron(q, F, n, n - 1, A, B)


def kron_regular(q: Quiver, F: FiniteField, n: int, lam) -> Representation:
    """``R_lambda(n)``: maps ``I`` and a Jordan block; ``lam=None`` is the
    point at infinity (maps ``J_n(0)`` and ``I``)."""
    _kron_check(q)
    ident = [[int(r == c) for c in range(n)] for r in range(n)]
    if lam is None:
        J = [[int(c == r + 1) for c in range(n)] for r in range(n)]
        return _kron(q, F, n, n, J, ident)
    J = [[lam if r == c else int(c == r + 1) for c in range(n)] for r in range(n)]
    return _kron(q, F, n, n, ident, J)


def kron_v(q: Quiver, F: FiniteField, m: int) -> Representation | None:
    """Module whose character is the cluster variable ``X_m``:
    ``N(m-2)`` for ``m >= 3``, ``M(1-m)`` for ``m <= 0``; initial variables
    (``m = 1, 2``) have none."""
    if m >= 3:
        return kron_preinjective(q, F, m - 2)
    if m <= 0:
        return kron_preprojective(q, F, 1 - m)
    return None


def kronecker_catalog(q: Quiver, F: FiniteField, max_dim=(3, 3)) -> dict[str, Representation]:
    """Named Kronecker indecomposables with dimension vector at most ``max_dim``
    (preprojectives, preinjectives, and ``R_lambda(1)`` for every point)."""
    out: dict[str, Representation] = {}
    n = 1
    while True:
        M = kron_preprojective(q, F, n)
        if M.dims[0] > max_dim[0] or M.dims[1] > max_dim[1]:
            break
        out[f"M({n})"] = M
        n += 1
    n = 1
    while True:
        N = kron_preinjective(q, F, n)
        if N.dims[0] > max_dim[0] or N.dims[1] > max_dim[1]:
            break
        out[f"N({n})"] = N
        n += 1
    if max_dim[0] >= 1 and max_dim[1] >= 1:
        for lam in range(F.order):
            out[f"R(1)@lambda={lam}"] = kron_regular(q, F, 1, lam)
        out["R(1)@lambda=inf"] = kron_regular(q, F, 1, None)
    return out


# ---------------------------------------------------------------------------
# type A


def interval_module(q: Quiver, F: FiniteField, i: int, j: int) -> Representation:
    """Thin module supported on the consecutive vertices ``i..j`` (0-based)."""
    dims = [int(i <= v <= j) for v in range(q.m)]
    maps = _zero_maps(q, dims)
    for a, (s, t) in enumerate(q.arrows):
        if dims[s] and dims[t]:
            maps[a] = [[1]]
    return Representation(q, F, dims, maps)


def type_a_indecomposables(q: Quiver, F: FiniteField) -> list[Representation]:
    """Indecomposable modules of a type-A principal part (interval modules)."""
    n = q.n
    return [interval_module(q, F, i, j) for i in range(n) for j in range(i, n)]


# ---------------------------------------------------------------------------
# descriptors

_DESC = re.compile(r"^\s*([A-Za-z]+)\s*(?:\(\s*(-?\d+)\s*\))?\s*(\d+)?\s*(?:@\s*lambda\s*=\s*(\w+))?\s*$")


def parse_module(desc, q: Quiver, F: FiniteField) -> Representation:
    """Build a module from a descriptor string or an explicit JSON object.

    Strings: ``S<i>``, ``P<i>``, ``I<i>`` (1-based vertices), Kronecker
    ``M(n)``, ``N(n)``, ``R(n)@lambda=<element|inf>``, ``V(m)``, and
    ``[i,j]`` for interval modules.  Anything starting with ``{`` is read
    as representation JSON.
    """
    if isinstance(desc, dict):
        return Representation.from_json(desc, q, F)
    s = desc.strip()
    if s.startswith("{"):
        return Representation.from_json(json.loads(s), q, F)
    iv = re.match(r"^\[\s*(\d+)\s*,\s*(\d+)\s*\]$", s)
    if iv:
        return interval_module(q, F, int(iv.group(1)) - 1, int(iv.group(2)) - 1)
    m = _DESC.match(s)
    if not m:
        raise ValueError(f"unrecognised module descriptor {desc!r}")
    kind, arg, idx, lam = m.groups()
    kind = kind.upper()
    if kind in ("S", "P", "I") and idx is not None and arg is None:
        v = int(idx) - 1
        if not 0 <= v < q.m:
            raise ValueError(f"vertex {idx} out of range")
        return {"S": simple, "P": projective, "I": injective}[kind](q, F, v)
    if arg is None:
        raise ValueError(f"unrecognised module descriptor {desc!r}")
    n = int(arg)
    if kind == "M":
        return kron_preprojective(q, F, n)
    if kind == "N":
        return kron_preinjective(q, F, n)
    if kind == "V":
        V = kron_v(q, F, n)
        if V is None:
            raise ValueError(f"V({n}) is an initial cluster variable and has no module")
        return V
    if kind == "R":
        if lam is None:
            raise ValueError("R(n) needs @lambda=<value>")
        if lam.lower() in ("inf", "infinity"):
            return kron_regular(q, F, n, None)
        val = int(lam)
        if not 0 <= val < F.order:
            raise ValueError(f"lambda={val} is not an element of {F!r}")
        return kron_regular(q, F, n, val)
    raise ValueError(f"unrecognised module descriptor {desc!r}")
