"""Command-line interface.

Subcommands: ``char``, ``hall-star``, ``psi``, ``mutate``, ``expand``,
``verify``, ``catalog`` and ``replay``.  Vertices and mutation directions
are 1-based on the command line.  Exit codes: 0 success, 1 verification
failure, 2 usage error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import os
import random
import sys
from contextlib import redirect_stdout
from importlib import resources

from . import __version__
from .catalog import injective, kronecker_catalog, parse_module, projective, simple, type_a_indecomposables
from .characters import CCContext, cc_character, cc_character_shifted, character_json
from .finfield import CapExceeded, make_field
from .hall import HallElement, delta, psi
from .mutation import QuantumSeed, frame_expand, initial_seed, mutate_sequence, parse_sequence
from .qtorus import NotDivisible
from .quiver import Quiver, QuiverError, find_lambda
from .reps import DEFAULT_ENUM_CAP, RepresentationError, random_rep
from .scalars import FREE, make_ring

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def load_quiver(source: str) -> Quiver:
    """A JSON file path, or the name of a shipped quiver (``kronecker``,
    ``A2``, ``A3``, optionally with ``.json``)."""
    if os.path.exists(source):
        with open(source) as fh:
            return Quiver.from_json(json.load(fh))
    name = os.path.basename(source)
    if name.endswith(".json"):
        name = name[:-5]
    for cand in (name, name.upper(), name.lower()):
        res = resources.files("hallcluster").joinpath("data", f"{cand}.json")
        if res.is_file():
            return Quiver.from_json(json.loads(res.read_text()))
    raise UsageError(f"no quiver file or shipped quiver named {source!r}")


def parse_field(text: str):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --field {text!r}; expected p,k") from None
    if len(parts) == 1:
        parts.append(1)
    if len(parts) != 2:
        raise UsageError(f"bad --field {text!r}; expected p,k")
    try:
        return make_field(*parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_ring(text: str | None, Q0: int | None):
    if text is None:
        return None
    if text == "free":
        return FREE
    if text.startswith("related:"):
        if Q0 is None:
            raise UsageError("--ring related:N needs --field to fix Q0")
        try:
            N = int(text.split(":", 1)[1])
            return make_ring("related", N, Q0)
        except ValueError as exc:
            raise UsageError(f"bad --ring {text!r}: {exc}") from None
    raise UsageError(f"bad --ring {text!r}; expected free or related:N")


def _context(args) -> CCContext:
    q = load_quiver(args.quiver)
    F = parse_field(args.field)
    Lambda, D = find_lambda(q.Btilde)
    ring = parse_ring(args.ring, F.order)
    return CCContext(q, Lambda, D, F, ring, cap=args.cap)


def _seed(args) -> QuantumSeed:
    if args.seed:
        with open(args.seed) as fh:
            return QuantumSeed.from_json(json.load(fh))
    q = load_quiver(args.quiver)
    Q0 = parse_field(args.field).order if args.field else None
    ring = parse_ring(args.ring, Q0) or FREE
    return initial_seed(q, ring)


def _module(ctx: CCContext, desc: str):
    try:
        return parse_module(desc, ctx.quiver, ctx.field)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"module {desc!r}: {exc}") from None


def _emit(args, obj, text: str):
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_char(args) -> int:
    ctx = _context(args)
    M = _module(ctx, args.module) if args.module else None
    if args.injective:
        I = _module(ctx, args.injective)
        X = cc_character_shifted(ctx, M, I)
    else:
        if M is None:
            raise UsageError("char needs --module and/or --injective")
        I = None
        X = cc_character(ctx, M)
    if M is None:
        from .reps import zero_rep

        M = zero_rep(ctx.quiver, ctx.field)
    _emit(args, character_json(ctx, X, M, I), repr(X))
    return EXIT_OK


def _product_of(ctx: CCContext, descs) -> HallElement:
    out = None
    for d in descs:
        x = delta(ctx, _module(ctx, d))
        out = x if out is None else out * x
    return out


def cmd_hall_star(args) -> int:
    ctx = _context(args)
    if len(args.module) < 2:
        raise UsageError("hall-star needs at least two --module arguments")
    h = _product_of(ctx, args.module)
    _emit(args, h.to_json(), repr(h))
    return EXIT_OK


def cmd_psi(args) -> int:
    ctx = _context(args)
    if not args.module:
        raise UsageError("psi needs at least one --module argument")
    X = psi(_product_of(ctx, args.module))
    _emit(args, X.to_json(), repr(X))
    return EXIT_OK


def cmd_mutate(args) -> int:
    seed = _seed(args)
    try:
        seq = parse_sequence(args.seq or "")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        out = mutate_sequence(seed, seq)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"Btilde = {[list(r) for r in out.Btilde]}", f"Lambda = {[list(r) for r in out.Lambda]}"]
    lines += [f"X{i + 1} = {x!r}" for i, x in enumerate(out.cluster)]
    _emit(args, out.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_expand(args) -> int:
    seed = _seed(args)
    try:
        seed = mutate_sequence(seed, parse_sequence(args.seq or ""))
        c = [int(x) for x in args.vector.split(",")]
        k = int(args.direction) - 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(c) != seed.m or not 0 <= k < seed.n:
        raise UsageError(f"--vector needs {seed.m} entries and --direction must lie in 1..{seed.n}")
    try:
        X = frame_expand(seed, c, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, X.to_json(), repr(X))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES, UnknownSuite, default_config, run_all, run_suite, write_golden

    if args.all:
        if args.config:
            with open(args.config) as fh:
                config = json.load(fh)
        else:
            config = default_config()
        if args.cap is not None:
            config["cap"] = args.cap
        reports = run_all(config, progress=None if args.json else lambda r: print(r.summary(), flush=True))
    else:
        if not args.suite:
            raise UsageError(f"verify needs --suite NAME or --all; suites: {', '.join(SUITES)}")
        params = {"seed": args.seed_name}
        if args.field:
            p, k = (int(x) for x in (args.field.split(",") + ["1"])[:2])
            params["field"] = [p, k]
        if args.cap is not None:
            params["cap"] = args.cap
        try:
            rep = run_suite(args.suite, params)
        except (UnknownSuite, ValueError) as exc:
            raise UsageError(str(exc.args[0] if exc.args else exc)) from None
        reports = [rep]
        if not args.json:
            print(rep.summary())
    if args.golden:
        write_golden(reports, args.golden)
    if args.json:
        print(json.dumps([r.to_json() for r in reports], sort_keys=True))
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return EXIT_FAIL
    if "inconclusive" in statuses:
        return EXIT_CAP
    return EXIT_OK


def _is_type_a(q: Quiver) -> bool:
    edges = sorted(tuple(sorted(a)) for a in q.principal_arrows())
    return edges == [(i, i + 1) for i in range(q.n - 1)]


def cmd_catalog(args) -> int:
    ctx_q = load_quiver(args.quiver)
    F = parse_field(args.field)
    entries = {}
    if args.random:
        dims = [int(x) for x in args.random.split(",")]
        if len(dims) != ctx_q.m:
            raise UsageError(f"--random needs {ctx_q.m} dimensions")
        entries["random"] = random_rep(ctx_q, F, dims, random.Random(args.rng_seed))
    else:
        for i in range(ctx_q.m):
            entries[f"S{i + 1}"] = simple(ctx_q, F, i)
            entries[f"P{i + 1}"] = projective(ctx_q, F, i)
            entries[f"I{i + 1}"] = injective(ctx_q, F, i)
        if sorted(ctx_q.arrows) == [(0, 1), (0, 1)]:
            entries.update(kronecker_catalog(ctx_q, F, (3, 3)))
        elif _is_type_a(ctx_q):
            for M in type_a_indecomposables(ctx_q, F):
                sup = [i + 1 for i, d in enumerate(M.dims) if d]
                entries[f"[{sup[0]},{sup[-1]}]"] = M
    obj = {name: M.to_json() for name, M in entries.items()}
    text = "\n".join(f"{name:18s} dims={list(M.dims)}" for name, M in entries.items())
    _emit(args, obj, text)
    return EXIT_OK


def cmd_replay(args) -> int:
    with open(args.dump) as fh:
        dump = json.load(fh)
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(dump["argv"])
    out = buf.getvalue()
    sys.stdout.write(out)
    digest = hashlib.sha256(out.encode()).hexdigest()
    if code != dump["exit_code"] or digest != dump["output_sha256"]:
        print(f"replay mismatch: exit {code} vs {dump['exit_code']}, sha {digest} vs {dump['output_sha256']}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", default="kronecker", help="quiver JSON path or shipped name (kronecker, A2, A3)")
    common.add_argument("--field", default=None, help="finite field F_{p^k} as p,k")
    common.add_argument("--ring", default=None, help="scalar ring: free or related:N")
    common.add_argument("--cap", type=int, default=None, help="enumeration cap")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--rng-seed", type=int, default=0, help="seed for randomized helpers")
    common.add_argument("--seed-dump", default=None, help="write a replay record of this invocation")

    p = argparse.ArgumentParser(prog="hallcluster", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hallcluster {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("char", parents=[common], help="quantum CC character of a module or shifted injective")
    s.add_argument("--module", help="module descriptor (M(2), S1, R(1)@lambda=0, [1,2], JSON)")
    s.add_argument("--injective", help="injective I for M (+) I[-1]")
    s.set_defaults(func=cmd_char)

    s = sub.add_parser("hall-star", parents=[common], help="dual Hall product of delta functions")
    s.add_argument("--module", action="append", default=[], help="factor, in order (repeat)")
    s.set_defaults(func=cmd_hall_star)

    s = sub.add_parser("psi", parents=[common], help="image under Psi of a product of delta functions")
    s.add_argument("--module", action="append", default=[], help="factor, in order (repeat)")
    s.set_defaults(func=cmd_psi)

    s = sub.add_parser("mutate", parents=[common], help="mutate the initial (or a stored) quantum seed")
    s.add_argument("--seq", default="", help="1-based directions, e.g. 1,2,1")
    s.add_argument("--seed", default=None, help="seed JSON to start from")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("expand", parents=[common], help="frame expansion M'(c) after mutating in a direction")
    s.add_argument("--seq", default="", help="mutations applied before the expansion")
    s.add_argument("--seed", default=None, help="seed JSON to start from")
    s.add_argument("--vector", required=True, help="c as comma-separated integers")
    s.add_argument("--direction", required=True, help="1-based direction k")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--suite", help="suite name")
    g.add_argument("--all", action="store_true", help="every suite over the shipped matrix (data/verify_default.json)")
    s.add_argument("--seed-name", default="kronecker", help="kronecker, A2 or A3 (with --suite)")
    s.add_argument("--config", default=None, help="run_all config JSON (with --all)")
    s.add_argument("--golden", default=None, help="directory for golden report files")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("catalog", parents=[common], help="standard modules of a quiver")
    s.add_argument("--random", default=None, help="instead, one random representation of these dims")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("replay", help="re-run a --seed-dump record and compare its output")
    s.add_argument("dump")
    s.set_defaults(func=cmd_replay)
    return p


def _defaults(args):
    if getattr(args, "field", None) is None and args.command in ("char", "hall-star", "psi", "catalog"):
        args.field = "2,2"
    if getattr(args, "cap", None) is None and args.command in ("char", "hall-star", "psi"):
        args.cap = DEFAULT_ENUM_CAP


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    _defaults(args)
    dump_path = getattr(args, "seed_dump", None)
    buf = io.StringIO()
    try:
        with redirect_stdout(buf):
            code = args.func(args)
    except CapExceeded as exc:
        code = EXIT_CAP
        print(f"cap exceeded: {exc}", file=sys.stderr)
    except NotDivisible as exc:
        code = EXIT_FAIL
        print(f"exact division failed: {exc}", file=sys.stderr)
    except (UsageError, QuiverError, RepresentationError, ValueError, OSError) as exc:
        code = EXIT_USAGE
        print(f"error: {exc}", file=sys.stderr)
    out = buf.getvalue()
    sys.stdout.write(out)
    if dump_path:
        replay_argv = [a for i, a in enumerate(argv) if a != "--seed-dump" and (i == 0 or argv[i - 1] != "--seed-dump")]
        replay_argv = [a for a in replay_argv if not a.startswith("--seed-dump=")]
        record = {
            "argv": replay_argv,
            "version": __version__,
            "exit_code": code,
            "output_sha256": hashlib.sha256(out.encode()).hexdigest(),
        }
        with open(dump_path, "w") as fh:
            json.dump(record, fh, sort_keys=True, indent=1)
    return code


if __name__ == "__main__":
    sys.exit(main())
