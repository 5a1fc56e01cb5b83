"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 curve not immersed,
4 base curve unusable for deformation, 5 survey invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from random import Random

from .curve import validate
from .deform import (
    BaseCurveError,
    DeformationSpec,
    check_base,
    compare,
    lift_is_degenerate,
    predicted_splitting,
)
from .exactfield import DEFAULT_PRIME, FieldSpec
from .io import (
    CurveFileError,
    curve_to_json,
    dumps,
    forms_from_json,
    format_scalar,
    load_json,
    read_curve,
    rows_to_csv,
)
from .splitting import splitting_type
from .strata import (
    InvariantViolation,
    random_lifting_forms,
    random_nonzero,
    remark_test,
    survey_deform,
    survey_fiber,
    survey_leading,
    survey_splitting,
    trial_seed,
)

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_NOT_IMMERSED = 3
EXIT_BAD_BASE = 4
EXIT_INVARIANT = 5


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _field_arg(raw: str) -> FieldSpec:
    if raw in ("rational", "Q"):
        return FieldSpec.rationals()
    if raw == "prime":
        return FieldSpec.prime(DEFAULT_PRIME)
    if raw.startswith("prime:"):
        return FieldSpec.prime(int(raw.split(":", 1)[1]))
    raise argparse.ArgumentTypeError(f"field must be 'rational', 'prime' or 'prime:P', got {raw!r}")


def cmd_validate(args) -> int:
    c = read_curve(args.file)
    rep = validate(c)
    sys.stdout.write(dumps({"curve": curve_to_json(c), "report": rep.to_json()}))
    return EXIT_OK if rep.immersive and rep.base_point_free else EXIT_NOT_IMMERSED


def cmd_split(args) -> int:
    c = read_curve(args.file)
    rep = validate(c)
    if not rep.immersive:
        sys.stderr.write(f"curve is not immersed (witness {rep.witness})\n")
        return EXIT_NOT_IMMERSED
    prof: dict = {}
    st = splitting_type(c, prof)
    st.check()
    out = st.to_json()
    if args.profile:
        out["profile"] = {str(a): h for a, h in sorted(prof.items())}
    sys.stdout.write(dumps(out))
    return EXIT_OK


def _load_base_and_ts(args):
    g = read_curve(args.base)
    check_base(g)
    ts = []
    for path in args.t or []:
        ts.extend(forms_from_json(load_json(path), g.field, g.d))
    return g, tuple(ts)


def _eps(raw: str, rng: Random, field: FieldSpec):
    if raw == "random":
        return random_nonzero(rng, field)
    try:
        return field(Fraction(raw))
    except (ValueError, ZeroDivisionError) as exc:
        raise CurveFileError(f"bad --eps value {raw!r}") from exc


def cmd_predict(args) -> int:
    g, ts = _load_base_and_ts(args)
    if not ts:
        ts = random_lifting_forms(args.r, g.d, Random(trial_seed(args.seed, 0)), g.field)
    prof: dict = {}
    st = predicted_splitting(g, ts, prof)
    degenerate = lift_is_degenerate(DeformationSpec(g, ts, g.field.one()))
    sys.stdout.write(dumps({
        "status": "degenerate-lift" if degenerate else "ok",
        "r": len(ts),
        "ts": [[format_scalar(x, g.field) for x in t.coeffs] for t in ts],
        "predicted": st.to_json(),
        "profile": {str(a): h for a, h in sorted(prof.items())},
    }))
    return EXIT_OK


def cmd_compare(args) -> int:
    g, fixed_ts = _load_base_and_ts(args)
    trials = []
    for i in range(args.trials):
        rng = Random(trial_seed(args.seed, i))
        ts = fixed_ts or random_lifting_forms(args.r, g.d, rng, g.field)
        eps = _eps(args.eps, rng, g.field)
        rep = compare(DeformationSpec(g, ts, eps))
        trials.append({
            "trial": i,
            "eps": format_scalar(eps, g.field),
            "ts": [[format_scalar(x, g.field) for x in t.coeffs] for t in ts],
            **rep.to_json(),
        })
    matched = [t["match"] for t in trials if t["status"] == "ok"]
    sys.stdout.write(dumps({
        "seed": args.seed,
        "trials": trials,
        "all_match": bool(matched) and all(matched),
    }))
    return EXIT_OK


def _survey_columns(mode: str) -> list[str] | None:
    return {
        "splitting": ["trial", "seed", "status", "type"],
        "deform": ["trial", "seed", "status", "predicted", "direct", "match", "witness",
                   "kernel_sum_equals_combined"],
        "leading": ["trial", "seed", "phi_rank", "c1_rank", "c1_kernel_dim", "leading_degree"],
        "fiber": ["trial", "seed", "modal_type", "hit_rate", "fiber_dim"],
    }.get(mode)


def cmd_survey(args) -> int:
    field = args.field
    if args.mode == "splitting":
        rep = survey_splitting(args.n, args.d, args.count, args.seed, field)
    elif args.mode == "deform":
        rep = survey_deform(args.d, args.r, args.count, args.seed, field)
    elif args.mode == "leading":
        rep = survey_leading(args.d, args.count, args.seed, field)
    else:
        rep = survey_fiber(args.d, args.r, args.count, args.seed, field)
    if args.output == "csv":
        _emit(rows_to_csv(rep.trials, _survey_columns(args.mode)), args.out)
    else:
        _emit(dumps(rep.to_json()), args.out)
    return EXIT_OK


def cmd_remark_test(args) -> int:
    rep = remark_test(args.d, (args.a_min if args.a_min is not None else args.d - 1,
                               args.a_max if args.a_max is not None else 3 * args.d - 2),
                      args.samples, args.seed, args.field)
    if args.output == "csv":
        _emit(rows_to_csv(rep.csv_rows(), ["l", "a", "count", "exact", "cech", "trunc"]), args.out)
    else:
        _emit(dumps(rep.to_json()), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="normcurve",
                                     description="Normal bundles of rational curves in projective space.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check base points, nondegeneracy and immersivity")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("split", help="splitting type of the normal bundle")
    p.add_argument("file")
    p.add_argument("--profile", action="store_true", help="include the h0 table per twist")
    p.set_defaults(func=cmd_split)

    for name, func in (("predict", cmd_predict), ("compare", cmd_compare)):
        p = sub.add_parser(name, help=f"{name} the splitting type of a lifted plane curve")
        p.add_argument("base", help="plane curve file")
        p.add_argument("--t", action="append", metavar="FORMS_FILE",
                       help="file of lifting forms; may be repeated (default: random)")
        p.add_argument("--r", type=int, default=1, help="number of random lifting forms")
        p.add_argument("--seed", type=int, default=0)
        if name == "compare":
            p.add_argument("--eps", default="random", help="scalar value or 'random'")
            p.add_argument("--trials", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("survey", help="seeded sampling surveys")
    p.add_argument("--mode", choices=["splitting", "deform", "leading", "fiber"], required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", type=_field_arg, default=FieldSpec.prime(DEFAULT_PRIME))
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="write to this path instead of stdout")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("remark-test", help="leading-degree kernel harness")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a-min", type=int)
    p.add_argument("--a-max", type=int)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", type=_field_arg, default=FieldSpec.prime(DEFAULT_PRIME))
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_remark_test)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CurveFileError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED
    except BaseCurveError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_BASE
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
