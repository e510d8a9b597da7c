"""Command-line interface.

Subcommands: gamma, semigroup, conormal, transform, normalize,
equivalent, verify-generic, upsilon.  Reports go to stdout and are
byte-stable for fixed arguments; diagnostics go to stderr.  Exit codes:
0 success, 2 invalid input, 3 non-generic curve, 4 insufficient
precision.  Randomized commands draw trial k of a run seeded with S
from random.Random(S * 1000003 + k); rerunning with the same seed
reproduces every report byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys

from .documents import dump_curve, load_curve
from .errors import (
    InsufficientPrecisionError,
    LegcurveError,
    NonGenericCurveError,
    ValidationError,
)
from .contact import act_on_curve, solve_contact
from .expansion import ExpansionContext, determinant
from .expressions import format_scalar, parse_germ
from .moduli import equivalent_curves, normal_form
from .oracle import conormal_semigroup
from .sampling import random_curve, trial_rng
from .semigroups import (
    generic_semigroup_descent,
    moduli_dimension,
    try_s_invariant,
)

Y_MONO = (0, 1, 0)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _format_set(values) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


def _read_curve(path: str):
    if path == "-":
        return load_curve(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        raise ValidationError(f"cannot read {path}: {err}") from None
    return load_curve(text)


def _strongly_generic(n: int, m: int) -> bool:
    return m >= 2 * n + 1


# -- gamma -----------------------------------------------------------------------


def cmd_gamma(args) -> int:
    semigroup, trajectory = generic_semigroup_descent(args.n, args.m)
    s = try_s_invariant(args.n, args.m)
    dimension = moduli_dimension(args.n, args.m)
    if args.json:
        _emit_json(
            {
                "schema": "legcurve/gamma/1",
                "n": args.n,
                "m": args.m,
                "gaps": list(semigroup.gaps),
                "conductor": semigroup.conductor,
                "s": s,
                "dimension": dimension,
                "trajectories": [
                    {
                        "i": step.i,
                        "sharp": step.sharp,
                        "omega": step.omega,
                        "tau": list(step.tau),
                    }
                    for step in trajectory
                ],
            }
        )
        return 0
    _emit(f"generic semigroup for ({args.n}, {args.m})")
    _emit(f"gaps: {_format_set(semigroup.gaps)}")
    _emit(f"conductor: {semigroup.conductor}")
    _emit(f"generators: {_format_set(semigroup.generators())}")
    _emit(f"s: {s if s is not None else 'none'}")
    _emit(f"dimension: {dimension}")
    _emit("trajectory:")
    for step in trajectory:
        _emit(
            f"  i={step.i} sharp={step.sharp} omega={step.omega} "
            f"tau={_format_set(step.tau)}"
        )
    return 0


# -- semigroup / conormal ----------------------------------------------------------


def cmd_semigroup(args) -> int:
    curve = _read_curve(args.curve)
    semigroup = conormal_semigroup(curve)
    n, m = curve.n, curve.m
    generic = None
    if _strongly_generic(n, m):
        generic = semigroup == generic_semigroup_descent(n, m)[0]
    if args.json:
        _emit_json(
            {
                "schema": "legcurve/semigroup/1",
                "n": n,
                "m": m,
                "gaps": list(semigroup.gaps),
                "conductor": semigroup.conductor,
                "generators": list(semigroup.generators()),
                "generic": generic,
            }
        )
        return 0
    _emit(f"curve type: ({n}, {m})")
    _emit(f"semigroup gaps: {_format_set(semigroup.gaps)}")
    _emit(f"conductor: {semigroup.conductor}")
    _emit(f"generators: {_format_set(semigroup.generators())}")
    if generic is None:
        _emit("matches generic semigroup: not defined for this type")
    else:
        _emit(f"matches generic semigroup: {'yes' if generic else 'no'}")
    return 0


def cmd_conormal(args) -> int:
    curve = _read_curve(args.curve)
    series = curve.p_series()
    items = list(series.items())
    if args.json:
        _emit_json(
            {
                "schema": "legcurve/conormal/1",
                "n": curve.n,
                "terms": [{"e": e, "c": format_scalar(c)} for e, c in items],
                "precision": int(series.accuracy),
            }
        )
        return 0
    _emit(f"conormal p-series for the curve of type ({curve.n}, {curve.m})")
    for e, c in items:
        _emit(f"  t^{e}: {format_scalar(c)}")
    _emit(f"precision: {int(series.accuracy)}")
    return 0


# -- transform ----------------------------------------------------------------------


def cmd_transform(args) -> int:
    curve = _read_curve(args.curve)
    n, m = curve.n, curve.m
    alpha = parse_germ(args.alpha, n, m)
    beta0 = parse_germ(args.beta0, n, m)
    if any(mono[2] for mono in beta0.coeffs):
        raise ValidationError("beta0 must not involve p")
    if beta0.coeffs.get(Y_MONO):
        raise ValidationError("the y-derivative of beta0 must vanish at the origin")
    phi = solve_contact(alpha, beta0, curve.accuracy)
    image = act_on_curve(phi, curve)
    sys.stdout.write(dump_curve(image))
    return 0


# -- normalize / equivalent ----------------------------------------------------------


def cmd_normalize(args) -> int:
    curve = _read_curve(args.curve)
    reduced = normal_form(curve)
    point = reduced.moduli_point()
    if args.json:
        _emit_json(
            {
                "schema": "legcurve/normalize/1",
                "curve": {
                    "n": reduced.curve.n,
                    "terms": [
                        {"e": e, "c": format_scalar(c)}
                        for e, c in sorted(reduced.curve.coefficients.items())
                    ],
                    "precision": int(reduced.curve.accuracy),
                },
                "unit": format_scalar(reduced.unit),
                "steps": [
                    {"order": step.order, "scale": format_scalar(step.scale)}
                    for step in reduced.steps
                ],
                "free": list(reduced.free),
                "point": {str(e): format_scalar(c) for e, c in sorted(point.items())},
            }
        )
        return 0
    _emit(f"short form of the curve of type ({reduced.curve.n}, {reduced.curve.m})")
    for e, c in sorted(reduced.curve.coefficients.items()):
        _emit(f"  t^{e}: {format_scalar(c)}")
    _emit(f"precision: {int(reduced.curve.accuracy)}")
    _emit(f"y-unit applied first: {format_scalar(reduced.unit)}")
    if reduced.steps:
        _emit("reduction steps (order, added coefficient):")
        for step in reduced.steps:
            _emit(f"  {step.order}: {format_scalar(step.scale)}")
    else:
        _emit("reduction steps: none")
    _emit(f"free exponents: {_format_set(reduced.free)}")
    for e, c in sorted(point.items()):
        _emit(f"moduli coordinate a_{e}: {format_scalar(c)}")
    return 0


def cmd_equivalent(args) -> int:
    first = _read_curve(args.first)
    second = _read_curve(args.second)
    verdict, witness = equivalent_curves(first, second)
    if args.json:
        _emit_json(
            {
                "schema": "legcurve/equivalent/1",
                "equivalent": verdict,
                "witness": witness,
            }
        )
        return 0
    if verdict:
        _emit("equivalent: yes")
        _emit(f"witness root-of-unity exponent: {witness}")
    else:
        _emit("equivalent: no")
    return 0


# -- verify-generic -------------------------------------------------------------------


def cmd_verify_generic(args) -> int:
    expected = generic_semigroup_descent(args.n, args.m)[0]
    failures = []
    for trial in range(args.trials):
        rng = trial_rng(args.seed, trial)
        curve = random_curve(args.n, args.m, rng, spread=args.range)
        actual = conormal_semigroup(curve)
        if actual != expected:
            failures.append((trial, curve, actual))
    passes = args.trials - len(failures)
    if args.json:
        _emit_json(
            {
                "schema": "legcurve/verify-generic/1",
                "n": args.n,
                "m": args.m,
                "trials": args.trials,
                "seed": args.seed,
                "range": args.range,
                "passes": passes,
                "failures": [
                    {
                        "trial": trial,
                        "coefficients": {
                            str(e): format_scalar(c)
                            for e, c in sorted(curve.coefficients.items())
                        },
                        "gaps": list(actual.gaps),
                        "expected_gaps": list(expected.gaps),
                    }
                    for trial, curve, actual in failures
                ],
            }
        )
        return 0
    _emit(
        f"verify-generic ({args.n}, {args.m}): trials={args.trials} "
        f"seed={args.seed} range={args.range}"
    )
    _emit(f"pass: {passes}/{args.trials}")
    for trial, curve, actual in failures:
        _emit(f"trial {trial} FAILED")
        for e, c in sorted(curve.coefficients.items()):
            _emit(f"  a_{e} = {format_scalar(c)}")
        _emit(f"  semigroup gaps: {_format_set(actual.gaps)}")
        _emit(f"  expected gaps: {_format_set(expected.gaps)}")
    return 0


# -- upsilon ---------------------------------------------------------------------------


def _upsilon_indices(ctx: ExpansionContext, need_x: bool = False):
    """Monomial indices with non-negative entries and valuation below the
    cutoff; need_x restricts to i >= 1 and l >= 1 for the derivative check."""
    n, m = ctx.n, ctx.m
    wp = m - n
    bound = ctx.cutoff - 1
    out = []
    for l in range(bound // wp + 1):
        for j in range((bound - wp * l) // m + 1):
            rest = bound - m * j - wp * l
            for i in range(rest // n + 1):
                if need_x and (i < 1 or l < 1):
                    continue
                out.append((i, j, l))
    return sorted(out)


def _check_direct_vs_closed(ctx: ExpansionContext):
    checked = 0
    for index in _upsilon_indices(ctx):
        for k in range(ctx.m, ctx.cutoff):
            if ctx.entry(index, k) != ctx.entry_closed_form(index, k):
                return checked, {"index": list(index), "k": k}
            checked += 1
    return checked, None


def _check_mu_derivative(ctx: ExpansionContext):
    checked = 0
    for index in _upsilon_indices(ctx, need_x=True):
        for k in range(ctx.m, ctx.cutoff):
            if not ctx.mu_derivative_matches(index, k):
                return checked, {"index": list(index), "k": k}
            checked += 1
    return checked, None


def _check_det_invariance(ctx: ExpansionContext, seed: int, selections: int = 50):
    checked = 0
    for trial in range(selections):
        rng = trial_rng(seed, trial)
        while True:
            count = rng.randint(1, 3)
            q = rng.randint(-2, 2)
            valuation = ctx.n * q + ctx.m * count
            low = max(valuation, ctx.m)
            if valuation >= 0 and ctx.cutoff - low >= count + 1:
                break
        columns = sorted(rng.sample(range(low, ctx.cutoff), count + 1))
        det = ctx.family_determinant(q, count, columns)
        det_zero = determinant(ctx.family_matrix(q, count, columns, mu_value=0))
        det_m = determinant(ctx.family_matrix(q, count, columns, mu_value=ctx.m))
        if det.degree_in("mu") or det != det_zero or det != det_m:
            return checked, {"q": q, "count": count, "columns": columns}
        checked += 1
    return checked, None


def cmd_upsilon(args) -> int:
    ctx = ExpansionContext(args.n, args.m)
    if args.check == "direct-vs-closed":
        checked, counterexample = _check_direct_vs_closed(ctx)
    elif args.check == "mu-derivative":
        checked, counterexample = _check_mu_derivative(ctx)
    else:
        checked, counterexample = _check_det_invariance(ctx, args.seed)
    ok = counterexample is None
    if args.json:
        _emit_json(
            {
                "schema": "legcurve/upsilon/1",
                "n": args.n,
                "m": args.m,
                "check": args.check,
                "checked": checked,
                "pass": ok,
                "counterexample": counterexample,
            }
        )
        return 0
    _emit(f"upsilon ({args.n}, {args.m}) check={args.check}")
    _emit(f"checked: {checked}")
    _emit(f"result: {'pass' if ok else 'FAIL'}")
    if counterexample is not None:
        _emit(f"first counterexample: {json.dumps(counterexample)}")
    return 0


# -- wiring -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legcurve",
        description="Exact computations with Legendrian curve germs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--table",
            action="store_true",
            help="human-readable output (the default)",
        )

    p = sub.add_parser("gamma", help="generic semigroup of a type (n, m)")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    add_json(p)
    p.set_defaults(handler=cmd_gamma)

    p = sub.add_parser("semigroup", help="conormal semigroup of a curve file")
    p.add_argument("curve", help="path to a curve document, or - for stdin")
    add_json(p)
    p.set_defaults(handler=cmd_semigroup)

    p = sub.add_parser("conormal", help="conormal p-series of a curve file")
    p.add_argument("curve", help="path to a curve document, or - for stdin")
    add_json(p)
    p.set_defaults(handler=cmd_conormal)

    p = sub.add_parser("transform", help="apply a contact transformation to a curve")
    p.add_argument("curve", help="path to a curve document, or - for stdin")
    p.add_argument("--alpha", required=True, help="x-displacement expression")
    p.add_argument("--beta0", required=True, help="y-displacement at p = 0")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("normalize", help="reduce a generic curve to short form")
    p.add_argument("curve", help="path to a curve document, or - for stdin")
    add_json(p)
    p.set_defaults(handler=cmd_normalize)

    p = sub.add_parser("equivalent", help="decide contact equivalence of two curves")
    p.add_argument("first")
    p.add_argument("second")
    add_json(p)
    p.set_defaults(handler=cmd_equivalent)

    p = sub.add_parser(
        "verify-generic",
        help="Monte-Carlo check that random curves have the generic semigroup",
    )
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=int, default=10**6)
    add_json(p)
    p.set_defaults(handler=cmd_verify_generic)

    p = sub.add_parser("upsilon", help="symbolic identities of the coefficient matrix")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument(
        "--check",
        required=True,
        choices=["direct-vs-closed", "mu-derivative", "det-invariance"],
    )
    p.add_argument("--seed", type=int, default=0)
    add_json(p)
    p.set_defaults(handler=cmd_upsilon)

    return parser


def _join_expression_flags(argv: list[str]) -> list[str]:
    # expressions may start with '-', which argparse would read as a flag
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in ("--alpha", "--beta0") and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_expression_flags(list(argv)))
    try:
        return args.handler(args)
    except NonGenericCurveError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except InsufficientPrecisionError as err:
        print(f"error: {err}", file=sys.stderr)
        return 4
    except LegcurveError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
