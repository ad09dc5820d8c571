"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 configuration error,
3 hypothesis violation, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    ArityMismatch,
    CharacteristicDividesExponent,
    ConfigError,
    DegreeOutOfRange,
    DegreeSharesCharacteristic,
    DimensionMismatch,
    EmptySet,
    FFDistError,
    IsoUnavailable,
    MixedFields,
    NonPrime,
    PolynomialSyntaxError,
    ReducibleModulus,
    RoundingDivergence,
    VariableOutOfRange,
    ZeroPolynomial,
)
from .harness import ExperimentConfig, run

_CONFIG_ERRORS = (
    ConfigError,
    NonPrime,
    ReducibleModulus,
    DegreeOutOfRange,
    PolynomialSyntaxError,
    VariableOutOfRange,
    ZeroPolynomial,
    ArityMismatch,
    DimensionMismatch,
    EmptySet,
    MixedFields,
)
_HYPOTHESIS_ERRORS = (
    CharacteristicDividesExponent,
    DegreeSharesCharacteristic,
    IsoUnavailable,
)
_NUMERIC_ERRORS = (RoundingDivergence,)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise UsageError(message)


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ffdist",
        description="Exact distance-set and character-sum experiments over F_q^d.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("field-check", "verify field arithmetic and character identities"),
        ("fourier-check", "round-trip and energy checks on random grids"),
        ("decay", "per-t fiber sizes and transform-decay constants"),
        ("weil", "one univariate character sum against its bound"),
        ("phase", "sweep sum_x chi(s*P(x) + m*x) over all s != 0, m"),
        ("distance", "distance set of two point sets, with verifier verdicts"),
        ("pinned", "per-pin distance counts and the large-pin fraction"),
        ("lift", "one-dimension-up lift: fiber sizes, restriction, products"),
        ("scan", "sweep target |E||F| products and locate verdict flips"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--q", type=int, help="field order (prime power)")
        sp.add_argument("--p", type=int, help="characteristic (with --n)")
        sp.add_argument("--n", type=int, default=1, help="extension degree")
        sp.add_argument(
            "--modulus",
            type=_int_list,
            help="modulus coefficients a0,a1,..,1 (constant first)",
        )
        sp.add_argument("--d", type=int, default=1, help="ambient dimension")
        sp.add_argument("--poly", help="polynomial text, e.g. 'x1^2+x2^2'")
        sp.add_argument("--setE", help="set specification for E")
        sp.add_argument("--setF", help="set specification for F, or 'same'")
        sp.add_argument("--setE2", help="1-d set specification (product experiments)")
        sp.add_argument("--setF2", help="1-d set specification (product experiments)")
        sp.add_argument("--t", type=int, help="restrict reports to one t")
        sp.add_argument("--seed", type=int, default=0, help="base seed (64-bit)")
        sp.add_argument("--trials", type=int, default=1, help="independent trials")
        sp.add_argument("--grid", type=_int_list, help="target |E||F| products")
        sp.add_argument("--kappa-sharp", dest="kappa_sharp", type=float, default=3.0)
        sp.add_argument("--kappa-fallback", dest="kappa_fallback", type=float, default=3.0)
        sp.add_argument("--C", dest="C", type=float, default=1.0)
        sp.add_argument("--rho", type=float, default=0.5)
        sp.add_argument("--rmin", dest="r_min", type=float, default=0.25)
        sp.add_argument("--out", help="output base path; writes <out>.csv/<out>.json")
        sp.add_argument(
            "--deterministic",
            action="store_true",
            help="suppress timestamps so identical runs are byte-identical",
        )
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        q=args.q,
        p=args.p,
        n=args.n,
        modulus=args.modulus,
        d=args.d,
        poly=args.poly,
        setE=args.setE,
        setF=args.setF,
        setE2=args.setE2,
        setF2=args.setF2,
        t=args.t,
        kappa_sharp=args.kappa_sharp,
        kappa_fallback=args.kappa_fallback,
        C=args.C,
        rho=args.rho,
        r_min=args.r_min,
        trials=args.trials,
        seed=args.seed,
        grid=args.grid,
        out=args.out,
        deterministic=args.deterministic,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        cfg = config_from_args(args)
        code, summary = run(args.command, cfg)
    except _HYPOTHESIS_ERRORS as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return 3
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except _CONFIG_ERRORS as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FFDistError as exc:  # anything unclassified is a config problem
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.out is None:
        print(json.dumps(summary, indent=2, sort_keys=True, default=_json_default))
    else:
        base = cfg.out
        for suffix in (".csv", ".json"):
            if base.endswith(suffix):
                base = base[: -len(suffix)]
        extra = "" if "rows_written" not in summary else f" and {base}.csv"
        print(f"wrote {base}.json{extra}")
    return code


def _json_default(obj):
    from .harness import _to_builtin

    return _to_builtin(obj)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
