"""Command line entry point: ``weilrel <subcommand> ...``.

Exit codes: 0 success, 2 invalid input or config, 3 cap exceeded,
4 internal invariant violation (including a survey record contradicting the
certificate/relation consistency check).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import InvalidInput, InvariantViolation, TooLarge, WeilrelError

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(",") if c)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="RNG seed")
    parser.add_argument("--bits", type=int, default=d(256), help="working precision in bits")
    parser.add_argument("--ell-budget", type=int, default=d(200), help="largest auxiliary prime for certificates")
    parser.add_argument("--height", type=int, default=d(0), help="brute-force relation height (0 = off)")
    parser.add_argument("--out", default=d(None), help="write output here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default=d("json"))
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes for surveys")


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2, sort_keys=True, default=str, ensure_ascii=False))


# ---------------------------------------------------------------------------
# subcommands


def cmd_count(args) -> int:
    from .zeta import CurveSpec, curve_count

    spec = CurveSpec(args.f, args.t, args.p, args.e)
    _dump(args, {"f": list(args.f), "p": args.p, "e": args.e, "t": args.t,
                 "counts": {n: curve_count(spec, n) for n in range(1, args.n + 1)}})
    return EXIT_OK


def cmd_lpoly(args) -> int:
    from .zeta import CurveSpec, lpolynomial

    P = lpolynomial(CurveSpec(args.f, args.t, args.p, args.e))
    _dump(args, {"q": P.q, "g": P.g, "coefficients": list(P.coeffs), "polynomial": str(P)})
    return EXIT_OK


def cmd_rh_check(args) -> int:
    from .weil import QSymplecticPoly, real_weil_transform, rh_check

    P = QSymplecticPoly(args.poly, args.q)
    _dump(args, {"q": args.q, "coefficients": list(P.coeffs), "real_weil_transform": real_weil_transform(P),
                 "rh": rh_check(P)})
    return EXIT_OK


def _polys(args):
    from .weil import QSymplecticPoly

    return [QSymplecticPoly(c, args.q) for c in args.poly]


def cmd_cert(args) -> int:
    from .galois.cert import maximality_certificate, tuple_certificate

    polys = _polys(args)
    if len(polys) == 1:
        cert = maximality_certificate(polys[0], args.ell_budget)
    else:
        cert = tuple_certificate(polys, args.ell_budget, extended=args.extended)
    _dump(args, cert.to_dict())
    return EXIT_OK


def cmd_relations(args) -> int:
    from .relations import independence_report, small_relations, verify_additive_exact, verify_multiplicative_exact

    polys = _polys(args)
    if args.verify:
        fn = verify_additive_exact if args.kind == "additive" else verify_multiplicative_exact
        _dump(args, fn(polys, args.verify).to_dict())
        return EXIT_OK
    report = independence_report(polys, ell_budget=args.ell_budget, bits=args.bits)
    out = report.to_dict()
    if args.height:
        out["small_relations"] = {k: small_relations(polys, k, args.height) for k in ("additive", "multiplicative")}
    _dump(args, out)
    return EXIT_OK


def _survey_config(args):
    from .survey import SurveyConfig, load_config

    if args.config:
        cfg = load_config(args.config)
    else:
        if args.f is None or args.p is None:
            raise InvalidInput("survey needs --config or both --f and --p")
        cfg = SurveyConfig(args.f, args.p, args.e, args.k)
    # command-line globals override the file only when given explicitly
    for name in ("seed", "bits", "ell_budget", "height", "jobs"):
        if name in args.explicit:
            setattr(cfg, name, getattr(args, name))
    if args.timing:
        cfg.timing = True
    cfg.validate()
    return cfg


def cmd_survey(args) -> int:
    from .survey import export, run_survey

    cfg = _survey_config(args)
    report = run_survey(cfg)
    if cfg.out_json:
        export(report.records, "json", cfg.out_json, report.aggregate)
    if cfg.out_csv:
        export(report.records, "csv", cfg.out_csv)
    if args.out:
        export(report.records, args.format, args.out, report.aggregate)
    sys.stdout.write(json.dumps(report.aggregate, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    if report.violations():
        sys.stderr.write(f"{len(report.violations())} record(s) contradict the consistency check\n")
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_honda_tate(args) -> int:
    from .constructions import honda_tate_d1, honda_tate_d3

    system = honda_tate_d1(args.p) if args.d == 1 else honda_tate_d3(args.p)
    _dump(args, system.to_dict())
    return EXIT_OK


def cmd_fermat(args) -> int:
    from .constructions import fermat_relation_system, fermat_verify_kernel

    out = fermat_relation_system(args.m).to_dict()
    if args.q:
        out["verification"] = fermat_verify_kernel(args.m, args.q, args.bits)
    _dump(args, out)
    return EXIT_OK


def cmd_distribution(args) -> int:
    from . import distribution as dist

    ks = None
    if args.poly:
        polys = _polys(args)
        g_model = polys[0].g
        if len(polys) == 1:
            values = dist.deviation_sequence(polys[0], args.N)
        else:
            values = dist.diff_sequence(polys[0], polys[1], args.N)
            ks = dist.ks_compare(values, g_model, args.reference, args.seed)
    else:
        g_model = args.g
        values = dist.mu_g_sample(args.g, args.N, args.seed)
    if args.format == "csv":
        _emit(args, dist.histogram_csv(values, args.bins))
        return EXIT_OK
    out = {"g": g_model, "n": len(values), "mean": float(values.mean()), "variance": float(values.var()),
           "seed": args.seed}
    if ks is not None:
        out["ks"] = ks
        out["reference_size"] = args.reference
        out["sign_bias"] = float((values < 0).mean())
    _dump(args, out)
    return EXIT_OK


def cmd_sieve_bound(args) -> int:
    from .sieve import comparison_csv, comparison_rows

    if args.format == "csv":
        _emit(args, comparison_csv(args.g, args.k, args.q, c_g=args.c_g))
    else:
        _dump(args, comparison_rows(args.g, args.k, args.q, c_g=args.c_g))
    return EXIT_OK


def cmd_export(args) -> int:
    from .survey import export, parse_records

    src_fmt = args.input_format or Path(args.input).suffix.lstrip(".")
    records = parse_records(Path(args.input).read_text(), src_fmt)
    text = export(records, args.format)
    _emit(args, text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weilrel", description="Relations among zeros of curve zeta functions.")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    def curve_args(p):
        p.add_argument("--f", type=_ints, required=True, help="monic f, coefficients low degree first")
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--e", type=int, default=1)
        p.add_argument("--t", type=int, required=True, help="element code of t in F_q")

    def poly_args(p, many=True):
        p.add_argument("poly", type=_ints, nargs="+" if many else 1, help="coefficients 1,c_1,...,q^g")
        p.add_argument("--q", type=int, required=True)

    p = add("count", cmd_count, "point counts of y^2 = f(x)(x - t) over F_{q^n}")
    curve_args(p)
    p.add_argument("--n", type=int, default=1, help="largest extension degree")

    curve_args(add("lpoly", cmd_lpoly, "L-polynomial of y^2 = f(x)(x - t)"))

    p = add("rh-check", cmd_rh_check, "exact check that all inverse roots have modulus sqrt q")
    p.add_argument("poly", type=_ints)
    p.add_argument("--q", type=int, required=True)

    p = add("cert", cmd_cert, "Galois maximality certificate for one polynomial or a tuple")
    poly_args(p)
    p.add_argument("--extended", action="store_true", help="allow products with k g <= 4")

    p = add("relations", cmd_relations, "independence report or exact verification of one relation")
    poly_args(p)
    p.add_argument("--verify", type=_ints, help="exponent vector on the roots to prove or refute")
    p.add_argument("--kind", choices=("additive", "multiplicative"), default="multiplicative")

    p = add("survey", cmd_survey, "run a family survey")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--f", type=_ints)
    p.add_argument("--p", type=int)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="record wall times (breaks byte-stable output)")

    p = add("honda-tate", cmd_honda_tate, "Honda-Tate trace systems with d = 1 or 3")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, choices=(1, 3), default=3)

    p = add("fermat", cmd_fermat, "Fermat curve relation matrix, kernel and Gauss-sum check")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, help="verify kernel vectors numerically over F_q")

    p = add("distribution", cmd_distribution, "normalized count sequences and mu_g samples")
    p.add_argument("poly", type=_ints, nargs="*")
    p.add_argument("--q", type=int)
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--N", type=int, default=10_000)
    p.add_argument("--reference", type=int, default=100_000)
    p.add_argument("--bins", type=int, default=50)

    p = add("sieve-bound", cmd_sieve_bound, "compare sieve exponents over a grid")
    p.add_argument("--g", type=_ints, default=(1, 2, 3))
    p.add_argument("--k", type=_ints, default=(1, 2))
    p.add_argument("--q", type=_ints, default=(5**8, 10**6, 10**12))
    p.add_argument("--c-g", dest="c_g", type=float, help="sieve constant c_g in (0, 1]")

    p = add("export", cmd_export, "convert survey records between json and csv")
    p.add_argument("input")
    p.add_argument("--input-format", choices=("json", "csv"))
    return parser


def _explicit(argv: list[str]) -> set[str]:
    names = set()
    for tok in argv:
        if tok.startswith("--"):
            names.add(tok[2:].split("=", 1)[0].replace("-", "_"))
    return names


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.explicit = _explicit(argv)
    if args.command == "distribution" and args.poly and args.q is None:
        parser.error("--q is required with polynomials")
    try:
        return args.func(args)
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except TooLarge as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except (InvalidInput, WeilrelError, ValueError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
