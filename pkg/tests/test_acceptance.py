"""Acceptance gate: ten exact criteria, each with a runtime budget.

Every criterion prints one ``PASS``/``FAIL`` line with its wall time; the
lines are repeated in the pytest terminal summary.  Caches are cleared
before each criterion so timings are cold.
"""

import functools
import gc
import sys
import time

from hallcluster import characters, finfield, hall, qtorus, reps, scalars, verify
from hallcluster.catalog import injective, kron_v
from hallcluster.characters import CCContext, cc_character, cc_character_shifted
from hallcluster.finfield import make_field
from hallcluster.mutation import kronecker_cluster_variables
from hallcluster.quiver import build_quiver, find_lambda, principal_framing, type_a
from hallcluster.reps import socle_dim
from hallcluster.scalars import FREE, make_ring

RESULTS: list[str] = []

A_FIELDS = [(2, 1), (3, 1), (5, 1)]


def _cold():
    for mod in (qtorus, characters, finfield, hall, reps, scalars, verify):
        for obj in vars(mod).values():
            if isinstance(obj, functools._lru_cache_wrapper):
                obj.cache_clear()
    gc.collect()


def criterion(number: int, title: str, budget: float):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            _cold()
            t0 = time.perf_counter()
            err = None
            try:
                fn()
            except AssertionError as exc:
                err = exc
            dt = time.perf_counter() - t0
            ok = err is None and dt < budget
            why = "" if ok else (f" ({err})" if err else f" (over budget {budget:g} s)")
            line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d} {title}: {dt:.2f} s / {budget:g} s{why}"
            RESULTS.append(line)
            print(line, file=sys.stderr)
            if err is not None:
                raise err
            assert dt < budget, line

        return run

    return wrap


def _suite_ok(name, seed, field, **extra):
    rep = verify.run_suite(name, dict(extra, seed=seed, field=list(field)))
    bad = [c for c in rep.checks if c["status"] != "pass"]
    assert rep.checks, f"{name} on {seed}/{field} ran no checks"
    assert not bad, f"{name} on {seed}/{field}: {bad[:2]}"
    return rep


@criterion(1, "Kronecker seed", 1.0)
def test_criterion_01_kronecker_seed():
    q = build_quiver(2, 2, [(1, 2), (1, 2)])
    assert q.B == ((0, 2), (-2, 0))
    Lam, D = find_lambda(q.Btilde)
    assert Lam == ((0, 1), (-1, 0))
    assert D == (2, 2)


@criterion(2, "Kronecker recursion m in [-6, 9], free ring", 10.0)
def test_criterion_02_recursion():
    X = kronecker_cluster_variables(-7, 10, FREE)
    q = FREE.u_power(2)
    for m in range(-6, 10):
        assert X[m - 1] * X[m + 1] == X[m] * X[m] * q + 1, f"m={m}"


@criterion(3, "cluster variables are characters of V(m) over F4, F9", 120.0)
def test_criterion_03_rank2():
    X = kronecker_cluster_variables(-4, 7, FREE)
    q = build_quiver(2, 2, [(1, 2), (1, 2)])
    Lam, D = find_lambda(q.Btilde)
    for p, k in ((2, 2), (3, 2)):
        t0 = time.perf_counter()
        F = make_field(p, k)
        ctx = CCContext(q, Lam, D, F, make_ring("related", 4, F.order))
        for m in list(range(-4, 1)) + list(range(3, 8)):
            assert X[m].reduce(ctx.ring) == cc_character(ctx, kron_v(q, F, m)), f"m={m} over F{F.order}"
        assert time.perf_counter() - t0 < 60, f"F{F.order} over 60 s"


@criterion(4, "multiplication formula (1), Kronecker F4 and A2/A3 over F2/F3/F5", 300.0)
def test_criterion_04_multi1():
    runs = [("kronecker", (2, 2))] + [(s, f) for s in ("A2", "A3") for f in A_FIELDS]
    for seed, fld in runs:
        rep = _suite_ok("multi1", seed, fld, riedtmann_peng=False)
        assert any(c["id"] == "multi1" for c in rep.checks)


@criterion(5, "multiplication formula (2), Kronecker F4", 120.0)
def test_criterion_05_multi2():
    rep = _suite_ok("multi2", "kronecker", (2, 2))
    assert sum(c["id"] == "multi2" for c in rep.checks) >= 10


@criterion(6, "Psi homomorphism and Hall associativity", 300.0)
def test_criterion_06_psi_assoc():
    runs = [("kronecker", (2, 2))] + [(s, f) for s in ("A2", "A3") for f in A_FIELDS]
    for seed, fld in runs:
        _suite_ok("psi-hom", seed, fld)
        _suite_ok("hall-assoc", seed, fld)


@criterion(7, "Psi-preimages of X1, X2 and the regular product rule, F4 and F9", 120.0)
def test_criterion_07_preimages():
    for fld in ((2, 2), (3, 2)):
        _suite_ok("preimages", "kronecker", fld)
        _suite_ok("rank2-kro", "kronecker", fld, range=[-3, 6])


@criterion(8, "reflection functors vs mutation, Kronecker and A3 over F2/F3", 180.0)
def test_criterion_08_bgp():
    for seed in ("kronecker", "A3"):
        for fld in ((2, 1), (3, 1)):
            rep = _suite_ok("bgp", seed, fld, max_dim=2)
            sinks = {c["instance"].split(":")[0] for c in rep.checks if c["id"] == "transport"}
            assert len(sinks) == (1 if seed == "kronecker" else 2), sinks


@criterion(9, "full default matrix, zero failures", 600.0)
def test_criterion_09_run_all():
    reports = verify.run_all()
    assert len({r.suite for r in reports}) == 16
    bad = [r.summary() for r in reports if r.status != "pass"]
    assert not bad, bad


@criterion(10, "shifted injectives are socle monomials", 1.0)
def test_criterion_10_shift_monomials():
    quivers = [
        ("kronecker", build_quiver(2, 2, [(1, 2), (1, 2)]), [(2, 2), (3, 2)]),
        ("A2", principal_framing(type_a(">")), A_FIELDS),
        ("A3", principal_framing(type_a("<>")), A_FIELDS),
    ]
    for name, q, fields in quivers:
        Lam, D = find_lambda(q.Btilde)
        for fld in fields:
            F = make_field(*fld)
            ctx = CCContext(q, Lam, D, F)
            for i in range(q.m):
                I = injective(q, F, i)
                assert cc_character_shifted(ctx, None, I) == ctx.torus.mono(socle_dim(I)), f"{name} I{i + 1}"

