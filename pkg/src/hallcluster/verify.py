"""Named verification suites.

Each suite runs exact checks over a (seed, field) pair and returns a
:class:`SuiteReport`.  A check is ``pass``, ``fail`` (with both sides
serialized as a witness) or ``inconclusive`` (an enumeration cap was hit).
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

from .catalog import (
    injective,
    kron_regular,
    kron_v,
    kronecker_catalog,
    projective,
    simple,
    type_a_indecomposables,
)
from .characters import CCContext, cc_character, cc_character_shifted
from .finfield import CapExceeded, make_field
from .hall import delta, hall_exponent, hall_star, psi
from .mutation import (
    frame_expand,
    initial_seed,
    kronecker_cluster_variables,
    matrix_mutate,
    seed_mutate,
    transport,
)
from .qtorus import NotDivisible, TorusContext, t_exact_div
from .quiver import compatibility, is_compatible, kronecker, principal_framing, reflect_quiver, type_a
from .reps import (
    DEFAULT_ENUM_CAP,
    aut_count,
    bgp_reflect,
    ext1_dim,
    ext_middle_terms,
    hom_data,
    hom_dim,
    hom_to_injective_strata,
    is_isomorphic,
    quotient,
    random_rep,
    restrict,
    socle_dim,
    subrepresentations,
    top_dim,
    zero_rep,
)
from .scalars import FREE, qbinom

SUITES = (
    "torus-axioms",
    "qbinom",
    "compat",
    "euler",
    "multi1",
    "multi2",
    "hall-assoc",
    "psi-hom",
    "kronecker-recursion",
    "rank2",
    "rank2-kro",
    "preimages",
    "bgp",
    "ext-drop",
    "expansion",
    "shift-monomials",
)

KRONECKER_ONLY = {"kronecker-recursion", "rank2", "rank2-kro", "preimages"}

SEEDS = ("kronecker", "A2", "A3")


class UnknownSuite(KeyError):
    pass


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)

    @property
    def status(self) -> str:
        states = {c["status"] for c in self.checks}
        if "fail" in states:
            return "fail"
        if "inconclusive" in states:
            return "inconclusive"
        return "pass"

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "inconclusive": 0}
        for c in self.checks:
            out[c["status"]] += 1
        return out

    def failures(self) -> list:
        return [c for c in self.checks if c["status"] == "fail"]

    def to_json(self) -> dict:
        return {"suite": self.suite, "params": self.params, "checks": self.checks, "status": self.status}

    def param_hash(self) -> str:
        return params_hash(self.suite, self.params)

    def summary(self) -> str:
        c = self.counts()
        return (
            f"{self.suite:20s} {_param_label(self.params):24s} {self.status:12s} "
            f"pass={c['pass']} fail={c['fail']} inconclusive={c['inconclusive']}"
        )


def _param_label(params: dict) -> str:
    f = params.get("field")
    fl = f"F{f[0] ** f[1]}" if f else "-"
    return f"{params.get('seed', '-')}/{fl}"


def params_hash(suite: str, params: dict) -> str:
    blob = json.dumps({"suite": suite, "params": params}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class _Recorder:
    def __init__(self, report: SuiteReport):
        self.report = report

    def add(self, sid: str, instance: str, ok: bool, witness=None):
        entry = {"id": sid, "instance": instance, "status": "pass" if ok else "fail"}
        if not ok:
            entry["witness"] = witness
        self.report.checks.append(entry)

    def run(self, sid: str, instance: str, fn: Callable):
        """``fn() -> (ok, witness)``; caps become inconclusive, NotDivisible a failure."""
        try:
            ok, witness = fn()
        except CapExceeded as exc:
            self.report.checks.append({"id": sid, "instance": instance, "status": "inconclusive", "reason": str(exc)})
            return
        except NotDivisible as exc:
            ok, witness = False, {"error": f"NotDivisible: {exc}"}
        self.add(sid, instance, ok, witness)


def _both(lhs, rhs) -> dict:
    return {"lhs": lhs.to_json(), "rhs": rhs.to_json()}


# ---------------------------------------------------------------------------
# environments


class Env:
    """Everything a suite needs for one (seed, field) pair."""

    def __init__(self, seed_name: str, p: int, k: int, cap: int):
        self.name = seed_name
        self.cap = cap
        if seed_name == "kronecker":
            self.quiver = kronecker()
        elif seed_name == "A2":
            self.quiver = principal_framing(type_a(">"))
        elif seed_name == "A3":
            self.quiver = principal_framing(type_a("<>"))
        else:
            raise ValueError(f"unknown seed {seed_name!r}; expected one of {SEEDS}")
        self.field = make_field(p, k)
        self.Q = self.field.order
        self.seed = initial_seed(self.quiver)
        self.Lambda, self.D = self.seed.Lambda, self.seed.D
        self.ctx = CCContext(self.quiver, self.Lambda, self.D, self.field, cap=max(cap, 10**6))
        self.ring = self.ctx.ring
        self.d = self.ctx.d

    @property
    def is_kronecker(self) -> bool:
        return self.name == "kronecker"

    def catalog(self) -> dict:
        """Named indecomposables used for pair and triple checks."""
        q, F = self.quiver, self.field
        if self.is_kronecker:
            return kronecker_catalog(q, F, (2, 2))
        return {f"[{self._interval(M)}]": M for M in type_a_indecomposables(q, F)}

    @staticmethod
    def _interval(M) -> str:
        sup = [i + 1 for i, d in enumerate(M.dims) if d]
        return f"{sup[0]},{sup[-1]}"

    def pairs(self) -> list:
        cat = list(self.catalog().items())
        out = []
        for (a, M), (b, N) in itertools.product(cat, repeat=2):
            if self.is_kronecker and (M.dims[0] + N.dims[0] > 3 or M.dims[1] + N.dims[1] > 3):
                continue
            out.append((a, M, b, N))
        return out

    def triples(self, max_total: int = 4) -> list:
        cat = list(self.catalog().items())
        out = []
        for trip in itertools.product(cat, repeat=3):
            if sum(X.total_dim() for _, X in trip) <= max_total:
                out.append(trip)
        return out

    def injectives(self) -> list:
        return [(f"I{i + 1}", injective(self.quiver, self.field, i)) for i in range(self.quiver.m)]

    def related_seed(self):
        return initial_seed(self.quiver, self.ring, self.Lambda, self.D)

    def X(self, M):
        return cc_character(self.ctx, M)

    def u(self, k: int):
        return self.ring.u_power(k)

    def shift_form(self, m, n) -> int:
        return self.ctx.torus.form(self.ctx.shifted(m), self.ctx.shifted(n))


@lru_cache(maxsize=64)
def _env(seed_name: str, p: int, k: int, cap: int) -> Env:
    return Env(seed_name, p, k, cap)


@lru_cache(maxsize=8)
def _kron_vars(lo: int, hi: int) -> dict:
    return kronecker_cluster_variables(lo, hi, FREE)


# ---------------------------------------------------------------------------
# suites


def _suite_torus(env: Env, rec: _Recorder, params: dict):
    rng = random.Random(params.get("rng_seed", 0))
    for ring_name, ring in (("free", FREE), ("related", env.ring)):
        ctx = TorusContext(env.Lambda, ring)
        m = ctx.m
        gens = ctx.gens()

        def rand_el(terms=3):
            out = ctx.zero()
            for _ in range(terms):
                e = tuple(rng.randint(-2, 2) for _ in range(m))
                out = out + ctx.mono(e, ring.u_power(rng.randint(-3, 3)) * rng.randint(1, 3))
            return out

        for i, j in itertools.product(range(m), repeat=2):
            lhs = gens[i] * gens[j]
            rhs = gens[j] * gens[i] * ring.u_power(2 * env.Lambda[i][j])
            rec.add("commutation", f"{ring_name}: X{i + 1} X{j + 1} = q^lambda X{j + 1} X{i + 1}", lhs == rhs, _both(lhs, rhs))
        for t in range(6):
            a, b, c = rand_el(), rand_el(), rand_el()
            lhs, rhs = (a * b) * c, a * (b * c)
            rec.add("associativity", f"{ring_name}: random triple {t}", lhs == rhs, _both(lhs, rhs))
            lhs, rhs = a * (b + c), a * b + a * c
            rec.add("distributivity", f"{ring_name}: random triple {t}", lhs == rhs, _both(lhs, rhs))
            e = tuple(rng.randint(-3, 3) for _ in range(m))
            f = tuple(rng.randint(-3, 3) for _ in range(m))
            lhs = ctx.mono(e) * ctx.mono(f)
            rhs = ctx.mono(tuple(x + y for x, y in zip(e, f)), ring.u_power(ctx.form(e, f)))
            rec.add("twist", f"{ring_name}: X^{e} X^{f}", lhs == rhs, _both(lhs, rhs))
            inv = ctx.mono(e) ** -1
            rec.add("monomial-inverse", f"{ring_name}: X^{e}", inv * ctx.mono(e) == ctx.one(), None)
            if not a.is_zero() and not b.is_zero():
                for side in ("left", "right"):
                    prod = a * b if side == "left" else b * a
                    got = t_exact_div(prod, b, side)
                    rec.add("exact-division", f"{ring_name}: ({side}) random pair {t}", got == a, _both(got, a))


def _suite_qbinom(env: Env, rec: _Recorder, params: dict):
    from .scalars import Scalar

    u = FREE.u_power
    for d in (1, 2):
        for n in range(0, 7):
            for k in range(0, n + 1):
                b = qbinom(n, k, d)
                rec.add("symmetry", f"[{n} {k}]_{d}", b == qbinom(n, n - k, d), None)
                rec.add("bar-invariance", f"[{n} {k}]_{d}", b == b.bar(), None)
                rec.add("classical-limit", f"[{n} {k}]_{d} at u=1", b.at_one() == _binom(n, k), None)
                if 0 < k < n:
                    p1 = qbinom(n - 1, k, d) * u(d * k) + qbinom(n - 1, k - 1, d) * u(d * (k - n))
                    p2 = qbinom(n - 1, k, d) * u(-d * k) + qbinom(n - 1, k - 1, d) * u(d * (n - k))
                    rec.add("pascal", f"[{n} {k}]_{d} both recurrences", b == p1 == p2, None)
                # product formula: [n k] prod_{i<=k}(v^i - v^-i) = prod_{i<=k}(v^(n-k+i) - v^-(n-k+i))
                lhs: Scalar = b
                rhs: Scalar = FREE.one()
                for i in range(1, k + 1):
                    lhs = lhs * (u(d * i) - u(-d * i))
                    rhs = rhs * (u(d * (n - k + i)) - u(-d * (n - k + i)))
                rec.add("product-formula", f"[{n} {k}]_{d}", lhs == rhs, {"lhs": lhs.to_json(), "rhs": rhs.to_json()})
    # counting: |Gr(k, n)(F_Q)| = v^(k(n-k)) [n k]_v at v = sqrt(Q)
    from .finfield import enum_subspaces

    F = env.field
    Q = F.order
    for n in range(0, 4):
        for k in range(0, n + 1):
            count = sum(1 for _ in enum_subspaces(F, n, k))
            shift = k * (n - k)
            val = sum(c * Fraction(Q) ** ((e + shift) // 2) for e, c in qbinom(n, k, 1).terms.items())
            rec.add("subspace-count", f"|Gr({k},{n})(F{Q})|", val == count, {"count": count, "value": str(val)})


def _binom(n, k):
    from math import comb

    return comb(n, k)


def _suite_compat(env: Env, rec: _Recorder, params: dict):
    Bt, Lam, D = env.quiver.Btilde, env.Lambda, env.D
    comp = compatibility(Bt, Lam)
    rec.add("initial", f"{env.name}: Btilde^T Lambda = (D|0)", is_compatible(Bt, Lam) == D, {"product": [list(r) for r in comp]})
    depth = params.get("depth", 6)
    n = env.quiver.n
    seqs = [tuple((s + i) % n for i in range(depth)) for s in range(n)]
    for seq in seqs:
        seed = env.seed
        for step, k in enumerate(seq):
            nxt = seed_mutate(seed, k)
            label = f"{env.name}: seq {[x + 1 for x in seq[: step + 1]]}"
            rec.add("compatibility-preserved", label, nxt.is_compatible(), {"D": list(nxt.D)})
            back = seed_mutate(nxt, k)
            rec.add("involution", label, back == seed, None)
            Bm, Lm = matrix_mutate(*matrix_mutate(seed.Btilde, seed.Lambda, k), k)
            rec.add("matrix-involution", label, (Bm, Lm) == (seed.Btilde, seed.Lambda), None)
            ek = tuple(int(i == k) for i in range(seed.m))
            fe = frame_expand(seed, ek, k)
            rec.add("exchange-vs-expansion", label, fe == nxt.cluster[k], _both(fe, nxt.cluster[k]))
            for c in itertools.product(range(0, 3), repeat=min(seed.m, 3)):
                c = tuple(c) + (0,) * (seed.m - len(c))
                lhs, rhs = frame_expand(seed, c, k), nxt.value(c)
                rec.add("frame-expansion", f"{label} c={c}", lhs == rhs, _both(lhs, rhs))
            seed = nxt


def _suite_euler(env: Env, rec: _Recorder, params: dict):
    rng = random.Random(params.get("rng_seed", 0))
    q, F = env.quiver, env.field
    mods = list(env.catalog().items())
    principal = [i for i in range(q.n)]
    for t in range(params.get("random_reps", 8)):
        dims = [rng.randint(0, 2) if i in principal else 0 for i in range(q.m)]
        mods.append((f"random#{t}{tuple(dims)}", random_rep(q, F, dims, rng)))
    for (a, M), (b, N) in itertools.product(mods, repeat=2):
        h = hom_data(M, N)
        lhs = q.euler(M.dims, N.dims)
        rhs = h.hom_dim - h.ext_dim
        rec.add("euler-form", f"<{a}, {b}>", lhs == rhs, {"euler": lhs, "hom": h.hom_dim, "ext": h.ext_dim})
    for i, j in itertools.product(range(q.m), repeat=2):
        Si, Sj = simple(q, F, i), simple(q, F, j)
        arrows = sum(1 for s, t in q.arrows if (s, t) == (i, j))
        rec.add("ext-simples", f"Ext^1(S{i + 1}, S{j + 1})", ext1_dim(Si, Sj) == arrows, None)


def _g_count(E, M, N, cap) -> int:
    """``|{R subset E : R ~ N, E/R ~ M}|`` by brute force."""
    total = 0
    for bases in subrepresentations(E, N.dims, cap):
        R = restrict(E, bases)
        if is_isomorphic(R, N, cap) and is_isomorphic(quotient(E, bases), M, cap):
            total += 1
    return total


def multi1_terms(env: Env, M, N, cap) -> list:
    """``X_M X_N = sum c_E X_E`` with ``c_E = u^(Lambda(Sm,Sn) - 2d [M,N]^1) eps``."""
    ext = ext1_dim(M, N)
    tw = env.u(env.shift_form(M.dims, N.dims) - 2 * env.d * ext)
    return [(E, tw * eps) for E, eps in ext_middle_terms(M, N, cap)]


def _suite_multi1(env: Env, rec: _Recorder, params: dict):
    cap = env.cap
    for a, M, b, N in env.pairs():
        label = f"({a}, {b})"

        def identity(M=M, N=N):
            ext = ext1_dim(M, N)
            lhs = env.X(M) * env.X(N) * env.u(2 * env.d * ext)
            rhs = env.ctx.torus.zero()
            for E, eps in ext_middle_terms(M, N, cap):
                rhs = rhs + env.X(E) * eps
            rhs = rhs * env.u(env.shift_form(M.dims, N.dims))
            return lhs == rhs, _both(lhs, rhs)

        rec.run("multi1", label, identity)

        def eps_sum(M=M, N=N):
            table = ext_middle_terms(M, N, cap)
            total = sum(v for _, v in table)
            return total == env.Q ** ext1_dim(M, N), {"sum": total, "ext": ext1_dim(M, N)}

        rec.run("eps-sum", label, eps_sum)

        if params.get("riedtmann_peng", True):

            def rp(M=M, N=N):
                hom = hom_dim(M, N)
                bad = []
                for E, eps in ext_middle_terms(M, N, cap):
                    g = _g_count(E, M, N, cap)
                    if eps * aut_count(E, cap) != g * aut_count(M, cap) * aut_count(N, cap) * env.Q**hom:
                        bad.append({"E": E.to_json(), "eps": eps, "g": g})
                return not bad, {"mismatches": bad}

            rec.run("riedtmann-peng", label, rp)


def _suite_multi2(env: Env, rec: _Recorder, params: dict):
    cap = env.cap
    max_hom = params.get("max_hom", 6)
    mods = list(env.catalog().items()) + [("0", zero_rep(env.quiver, env.field))]
    for (a, M), (b, I) in itertools.product(mods, env.injectives()):
        h = hom_dim(M, I)
        if h > max_hom:
            continue
        label = f"({a}, {b})"

        def law(M=M, I=I, h=h):
            table, flags = hom_to_injective_strata(M, I, cap)
            soc = socle_dim(I)
            lhs = env.X(M) * cc_character_shifted(env.ctx, None, I) * env.u(2 * env.d * h)
            rhs = env.ctx.torus.zero()
            for (B, C), cnt in table:
                rhs = rhs + cc_character_shifted(env.ctx, B, C) * cnt
            rhs = rhs * env.u(env.ctx.torus.form(env.ctx.shifted(M.dims), tuple(-x for x in soc)))
            w = _both(lhs, rhs)
            if flags:
                w["non_injective_cokernels"] = [C.to_json() for C in flags]
            return lhs == rhs, w

        rec.run("multi2", label, law)

        def strata_sum(M=M, I=I, h=h):
            table, flags = hom_to_injective_strata(M, I, cap)
            total = sum(v for _, v in table)
            return total == env.Q**h and not flags, {"sum": total, "hom": h, "non_injective": len(flags)}

        rec.run("strata-sum", label, strata_sum)


def _suite_hall_assoc(env: Env, rec: _Recorder, params: dict):
    ctx = env.ctx
    for (a, M), (b, N), (c, L) in env.triples(params.get("max_total", 4)):
        label = f"({a}, {b}, {c})"

        def assoc(M=M, N=N, L=L):
            dM, dN, dL = delta(ctx, M), delta(ctx, N), delta(ctx, L)
            lhs = hall_star(hall_star(dM, dN), dL)
            rhs = hall_star(dM, hall_star(dN, dL))
            return lhs == rhs, {"lhs": lhs.to_json(), "rhs": rhs.to_json()}

        rec.run("associativity", label, assoc)
        m, n, l_ = M.dims, N.dims, L.dims
        mn = tuple(x + y for x, y in zip(m, n))
        nl = tuple(x + y for x, y in zip(n, l_))
        lhs = hall_exponent(ctx, m, n) + hall_exponent(ctx, mn, l_)
        rhs = hall_exponent(ctx, m, nl) + hall_exponent(ctx, n, l_)
        rec.add("bilinear-exponent", label, lhs == rhs, {"lhs": lhs, "rhs": rhs})


def _suite_psi_hom(env: Env, rec: _Recorder, params: dict):
    ctx = env.ctx
    for a, M, b, N in env.pairs():

        def hom(M=M, N=N):
            lhs = psi(hall_star(delta(ctx, M), delta(ctx, N)))
            rhs = psi(delta(ctx, M)) * psi(delta(ctx, N))
            return lhs == rhs, _both(lhs, rhs)

        rec.run("psi-homomorphism", f"({a}, {b})", hom)
    rec.add("psi-unit", "psi(delta_0) = 1", psi(delta(ctx, zero_rep(env.quiver, env.field))) == ctx.torus.one(), None)


def _suite_recursion(env: Env, rec: _Recorder, params: dict):
    lo, hi = params.get("range", [-6, 9])
    X = _kron_vars(lo - 1, hi + 1)
    q = FREE.u_power(2)
    for m in range(lo, hi + 1):
        lhs = X[m - 1] * X[m + 1]
        rhs = X[m] * X[m] * q + 1
        rec.add("recursion", f"X_{m - 1} X_{m + 1} = q X_{m}^2 + 1", lhs == rhs, _both(lhs, rhs))


def _related_var(env: Env, m: int, lo: int, hi: int):
    return _kron_vars(lo, hi)[m].reduce(env.ring)


def _suite_rank2(env: Env, rec: _Recorder, params: dict):
    ms = params.get("m_values", list(range(-4, 1)) + list(range(3, 8)))
    lo, hi = min(ms + [1]), max(ms + [2])
    for m in ms:

        def check(m=m):
            lhs = _related_var(env, m, lo, hi)
            rhs = env.X(kron_v(env.quiver, env.field, m))
            return lhs == rhs, _both(lhs, rhs)

        rec.run("rank2", f"X_{m} = X_V({m})", check)


def _points(env: Env) -> list:
    return [(str(lam), lam) for lam in range(env.Q)] + [("inf", None)]


def _suite_rank2_kro(env: Env, rec: _Recorder, params: dict):
    lo, hi = params.get("range", [-3, 6])
    for name, lam in _points(env):
        XR = env.X(kron_regular(env.quiver, env.field, 1, lam))
        for n in range(lo, hi + 1):
            Xn = _related_var(env, n, lo - 1, hi + 1)
            lhs = Xn * XR
            rhs = _related_var(env, n - 1, lo - 1, hi + 1) * env.u(-1) + _related_var(env, n + 1, lo - 1, hi + 1) * env.u(1)
            rec.add("rank2-kro", f"X_{n} X_R(lambda={name})", lhs == rhs, _both(lhs, rhs))


def _suite_preimages(env: Env, rec: _Recorder, params: dict):
    q, F, ctx = env.quiver, env.field, env.ctx
    X1, X2 = (_related_var(env, i, -1, 4) for i in (1, 2))
    for name, lam in _points(env):
        R = delta(ctx, kron_regular(q, F, 1, lam))

        def first(R=R):
            h = hall_star(delta(ctx, kron_v(q, F, 0)), R) * env.u(-1) - delta(ctx, kron_v(q, F, -1), env.u(-2))
            got = psi(h)
            return got == X1, _both(got, X1)

        def second(R=R):
            h = hall_star(delta(ctx, kron_v(q, F, 3)), R) * env.u(1) - delta(ctx, kron_v(q, F, 4), env.u(2))
            got = psi(h)
            return got == X2, _both(got, X2)

        rec.run("preimage-X1", f"lambda={name}", first)
        rec.run("preimage-X2", f"lambda={name}", second)


def bgp_sinks(env: Env) -> list[int]:
    q = env.quiver
    return [i for i in range(q.n) if q.is_sink(i)]


def _suite_bgp(env: Env, rec: _Recorder, params: dict):
    q, F = env.quiver, env.field
    max_dim = params.get("max_dim", 2)
    base = env.related_seed()
    for i in bgp_sinks(env):
        q2 = reflect_quiver(q, i)
        mutated = seed_mutate(base, i)
        if mutated.Btilde != q2.Btilde:
            rec.add("reflection-is-mutation", f"sink {i + 1}", False, {"mutated": mutated.Btilde, "reflected": q2.Btilde})
            continue
        rec.add("reflection-is-mutation", f"sink {i + 1}", True)
        ctx2 = CCContext(q2, mutated.Lambda, mutated.D, F, env.ring, env.ctx.cap)

        def carry(X2, X1, label):
            got = transport(mutated.cluster, mutated.Lambda, X2.sorted_terms(), base.ctx)
            rec.add("transport", f"sink {i + 1}: {label}", got == X1, _both(got, X1))

        Si = simple(q, F, i)
        for name, M in env.catalog().items():
            if max(M.dims) > max_dim:
                continue

            def one(M=M, name=name):
                if is_isomorphic(M, Si):
                    # S_i goes to P_i[1], whose character is X'^{e_i}
                    X2 = cc_character_shifted(ctx2, None, injective(q2, F, i))
                else:
                    X2 = cc_character(ctx2, bgp_reflect(M, i, "+"))
                got = transport(mutated.cluster, mutated.Lambda, X2.sorted_terms(), base.ctx)
                X1 = env.X(M)
                return got == X1, _both(got, X1)

            rec.run("transport", f"sink {i + 1}: {name}", one)
        # shifted projectives: P_j[1] stays, P_i[1] goes to S_i
        for j in range(q.n):
            X1 = cc_character_shifted(env.ctx, None, injective(q, F, j))
            if j == i:
                X2 = cc_character(ctx2, simple(q2, F, i))
            else:
                X2 = cc_character_shifted(ctx2, None, injective(q2, F, j))
            carry(X2, X1, f"P{j + 1}[1]")


def _ext_c(X, Y) -> int:
    return ext1_dim(X, Y) + ext1_dim(Y, X)


def _suite_ext_drop(env: Env, rec: _Recorder, params: dict):
    cap = env.cap
    for a, M, b, N in env.pairs():

        def drop(M=M, N=N):
            S = M.direct_sum(N)
            bound = _ext_c(S, S)
            split = N.direct_sum(M)
            bad = []
            for E, _ in ext_middle_terms(M, N, cap):
                if is_isomorphic(E, split, cap):
                    continue
                if not _ext_c(E, E) < bound:
                    bad.append({"E": E.to_json(), "ext": _ext_c(E, E), "bound": bound})
            return not bad, {"violations": bad}

        rec.run("ext-drop", f"({a}, {b})", drop)


def _suite_expansion(env: Env, rec: _Recorder, params: dict):
    """Products of characters expand as ``u^n X_L + sum f_E X_E`` with
    ``Ext_C(E,E)`` strictly below ``Ext_C(L,L)``, by iterated multi1."""
    cap = env.cap
    combos = [((a, M), (b, N)) for a, M, b, N in env.pairs()]
    combos += [t for t in env.triples(params.get("max_total", 3))]
    for combo in combos:
        names = ", ".join(n for n, _ in combo)

        def expand(combo=combo):
            mods = [M for _, M in combo]
            L = mods[0]
            for X in mods[1:]:
                L = L.direct_sum(X)
            bound = _ext_c(L, L)
            terms = [(mods[0], env.ring.one())]
            for X in mods[1:]:
                nxt = []
                for E, c in terms:
                    for E2, c2 in multi1_terms(env, E, X, cap):
                        nxt.append((E2, c * c2))
                terms = nxt
            lhs = env.ctx.torus.one()
            for M in mods:
                lhs = lhs * env.X(M)
            rhs = env.ctx.torus.zero()
            lead = env.ring.zero()
            bad = []
            for E, c in terms:
                rhs = rhs + env.X(E) * c
                if is_isomorphic(E, L, cap):
                    lead = lead + c
                elif not _ext_c(E, E) < bound:
                    bad.append({"E": E.to_json(), "ext": _ext_c(E, E), "bound": bound})
            ok = lhs == rhs and not bad and _is_u_power(lead)
            w = _both(lhs, rhs)
            w["violations"] = bad
            w["leading"] = lead.to_json()
            return ok, w

        rec.run("expansion", names, expand)


def _is_u_power(s) -> bool:
    if s.is_zero():
        return False
    ring = s.ring
    for k in range(-4 * ring.N if ring.N else -64, (4 * ring.N if ring.N else 64) + 1):
        if s == ring.u_power(k):
            return True
    return False


def _suite_shift(env: Env, rec: _Recorder, params: dict):
    q, F, ctx = env.quiver, env.field, env.ctx
    for i in range(q.m):
        I = injective(q, F, i)
        soc = socle_dim(I)
        got = cc_character_shifted(ctx, None, I)
        want = ctx.torus.mono(soc)
        rec.add("shift-monomial", f"X_I{i + 1}[-1] = X^soc", got == want, _both(got, want))
        P = projective(q, F, i)
        rec.add("top-equals-socle", f"dim P{i + 1}/rad = dim soc I{i + 1}", top_dim(P) == soc, {"top": top_dim(P), "soc": soc})


_RUNNERS = {
    "torus-axioms": _suite_torus,
    "qbinom": _suite_qbinom,
    "compat": _suite_compat,
    "euler": _suite_euler,
    "multi1": _suite_multi1,
    "multi2": _suite_multi2,
    "hall-assoc": _suite_hall_assoc,
    "psi-hom": _suite_psi_hom,
    "kronecker-recursion": _suite_recursion,
    "rank2": _suite_rank2,
    "rank2-kro": _suite_rank2_kro,
    "preimages": _suite_preimages,
    "bgp": _suite_bgp,
    "ext-drop": _suite_ext_drop,
    "expansion": _suite_expansion,
    "shift-monomials": _suite_shift,
}


def default_params(seed: str = "kronecker", field=(2, 2), cap: int = DEFAULT_ENUM_CAP) -> dict:
    return {"seed": seed, "field": list(field), "cap": cap}


def run_suite(name: str, params: dict | None = None) -> SuiteReport:
    if name not in _RUNNERS:
        raise UnknownSuite(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    params = dict(default_params(), **(params or {}))
    report = SuiteReport(name, params)
    if name in KRONECKER_ONLY and params["seed"] != "kronecker":
        raise ValueError(f"suite {name!r} only applies to the Kronecker seed")
    p, k = params["field"]
    try:
        env = _env(params["seed"], p, k, params["cap"])
    except CapExceeded as exc:
        report.checks.append({"id": "setup", "instance": "field", "status": "inconclusive", "reason": str(exc)})
        return report
    rec = _Recorder(report)
    try:
        _RUNNERS[name](env, rec, params)
    except CapExceeded as exc:
        report.checks.append({"id": "suite", "instance": name, "status": "inconclusive", "reason": str(exc)})
    return report


# suites whose content is independent of the field run once per seed
_FIELD_FREE = {"torus-axioms", "compat", "kronecker-recursion"}


def default_config() -> dict:
    """The shipped matrix: Kronecker over F4 and F9, A2 and A3 over F2, F3, F5."""
    text = resources.files("hallcluster").joinpath("data", "verify_default.json").read_text()
    return json.loads(text)


def run_all(config: dict | None = None, progress: Callable | None = None) -> list[SuiteReport]:
    """Run every suite over the (seed, field) matrix of ``config``.

    ``None`` means the default matrix; an empty dict yields no reports.
    """
    if config is None:
        config = default_config()
    matrix = config.get("matrix", [])
    suites = config.get("suites", list(SUITES))
    cap = config.get("cap", DEFAULT_ENUM_CAP)
    extra = config.get("params", {})
    reports = []
    seen_free = set()
    for seed, fld in matrix:
        for name in suites:
            if name in KRONECKER_ONLY and seed != "kronecker":
                continue
            if name in _FIELD_FREE:
                if (name, seed) in seen_free:
                    continue
                seen_free.add((name, seed))
            params = dict(extra.get(name, {}), seed=seed, field=list(fld), cap=cap)
            rep = run_suite(name, params)
            reports.append(rep)
            if progress:
                progress(rep)
    return reports


def write_golden(reports: list[SuiteReport], directory: str, version: str = "v1") -> list[str]:
    """Store reports as ``<directory>/<version>/<suite>-<param hash>.json``."""
    out_dir = os.path.join(directory, version)
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for rep in reports:
        path = os.path.join(out_dir, f"{rep.suite}-{rep.param_hash()}.json")
        with open(path, "w") as fh:
            json.dump(rep.to_json(), fh, sort_keys=True, indent=1)
        paths.append(path)
    return paths


def read_golden(directory: str, suite: str, params: dict, version: str = "v1") -> dict | None:
    path = os.path.join(directory, version, f"{suite}-{params_hash(suite, params)}.json")
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        return json.load(fh)


__all__ = [
    "SUITES",
    "SuiteReport",
    "default_config",
    "default_params",
    "read_golden",
    "run_all",
    "run_suite",
    "write_golden",
]
