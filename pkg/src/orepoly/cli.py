"""Command line front end: ``orepoly <verb> --field SPEC operands...``."""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time

import numpy as np

from . import combinatorics, factorizer, skew_ring
from .centre_norm import reduced_norm
from .errors import OrePolyError, ParseError
from .field_tower import format_field_spec, parse_field_spec
from .skew_ring import MUL_ALGORITHMS, SkewPolynomial

SCHEMA = "v1"

ARITY = {
    "mul": 2, "divmod-right": 2, "divmod-left": 2,
    "rgcd": 2, "llcm": 2, "lgcd": 2, "rlcm": 2,
    "norm": 1, "irreducible": 1, "similar": 2, "type": 1,
    "factor": 1, "count": 1, "sample": 1,
}

BENCH_FIELDS = ("GF(2^2;frob=1)", "GF(3^2;frob=1)", "GF(2^4;frob=1)", "GF(2^8;frob=1)")
BENCH_DEGREES = (32, 128, 512)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"orepoly: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser():
    parser = _Parser(prog="orepoly", description="Arithmetic and factorization in skew polynomial rings k[X, sigma].")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, arity in ARITY.items():
        p = sub.add_parser(verb)
        p.add_argument("--field", required=True, help='e.g. "GF(2^2; frob=1)"')
        p.add_argument("operands", nargs=arity, metavar="POLY")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized steps")
        p.add_argument("--mul-algo", choices=sorted(MUL_ALGORITHMS), default=None,
                       help="force one multiplication algorithm (mul only)")
        p.add_argument("--budget", type=int, default=None, help="retry budget for randomized steps")
        if verb == "sample":
            p.add_argument("--count", type=int, default=1, help="number of samples")
    b = sub.add_parser("bench")
    b.add_argument("--field", action="append", default=None, help="repeatable; default: a fixed set")
    b.add_argument("--degrees", default=",".join(map(str, BENCH_DEGREES)))
    b.add_argument("--algos", default=",".join(sorted(MUL_ALGORITHMS)))
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    return parser


def _emit(args, text, data):
    if getattr(args, "json", False):
        print(json.dumps({"schema": SCHEMA, **data}, sort_keys=True))
    else:
        print(text)


def _run(args):
    ctx = parse_field_spec(args.field)
    polys = [SkewPolynomial.parse(ctx, s) for s in args.operands]
    rng = np.random.default_rng(args.seed)
    verb = args.verb
    field = format_field_spec(ctx)

    if verb == "mul":
        A, B = polys
        P = MUL_ALGORITHMS[args.mul_algo](A, B) if args.mul_algo else A * B
        _emit(args, str(P), {"field": field, "result": str(P)})
    elif verb in ("divmod-right", "divmod-left"):
        fn = skew_ring.right_divmod if verb == "divmod-right" else skew_ring.left_divmod
        q, r = fn(*polys)
        _emit(args, f"{q}\n{r}", {"field": field, "quotient": str(q), "remainder": str(r)})
    elif verb in ("rgcd", "llcm", "lgcd", "rlcm"):
        P = getattr(skew_ring, verb)(*polys)
        _emit(args, str(P), {"field": field, "result": str(P)})
    elif verb == "norm":
        unit, N = reduced_norm(polys[0])
        full = N * N.__class__._wrap(ctx, [unit.value])
        _emit(args, str(full), {"field": field, "unit": str(unit), "norm": str(N)})
    elif verb == "irreducible":
        ok = factorizer.is_irreducible(polys[0])
        _emit(args, str(ok).lower(), {"field": field, "result": ok})
    elif verb == "similar":
        ok = factorizer.are_similar(*polys)
        _emit(args, str(ok).lower(), {"field": field, "result": ok})
    elif verb == "type":
        prof = factorizer.type_profile(polys[0])
        lines = [f"{t.norm}: e={list(t.e_seq)} dual={list(t.dual_seq)}" for t in prof]
        _emit(args, "\n".join(lines), {"field": field, "type": prof.to_json()})
    elif verb == "factor":
        res = factorizer.skew_factorization(polys[0], rng, args.budget)
        print(json.dumps({"schema": SCHEMA, "field": field, **res.to_json()}, sort_keys=True))
    elif verb == "count":
        n = combinatorics.count_factorizations(polys[0])
        _emit(args, str(n), {"field": field, "count": str(n)})
    elif verb == "sample":
        sampler = combinatorics.FactorizationSampler(polys[0])
        for _ in range(args.count):
            res = sampler.sample(rng)
            print(json.dumps({"schema": SCHEMA, "field": field, **res.to_json()}, sort_keys=True))


def _bench(args):
    fields = args.field or list(BENCH_FIELDS)
    degrees = [int(d) for d in args.degrees.split(",") if d]
    algos = [a for a in args.algos.split(",") if a]
    for a in algos:
        if a not in MUL_ALGORITHMS:
            raise ParseError(f"unknown algorithm {a!r}")
    rng = np.random.default_rng(args.seed)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["algo", "degree", "r", "median_ns"])
    for spec in fields:
        ctx = parse_field_spec(spec)
        for d in degrees:
            pairs = [(SkewPolynomial.random(ctx, d, rng, monic=True),
                      SkewPolynomial.random(ctx, d, rng, monic=True)) for _ in range(args.trials)]
            for a in algos:
                fn = MUL_ALGORITHMS[a]
                fn(*pairs[0])
                times = []
                for A, B in pairs:
                    t0 = time.perf_counter_ns()
                    fn(A, B)
                    times.append(time.perf_counter_ns() - t0)
                out.writerow([a, d, ctx.r, int(statistics.median(times))])


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "bench":
            _bench(args)
        else:
            _run(args)
    except ParseError as exc:
        print(f"orepoly: parse error: {exc}", file=sys.stderr)
        return 2
    except (OrePolyError, ValueError, ArithmeticError) as exc:
        print(f"orepoly: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
