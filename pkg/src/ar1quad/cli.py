"""Command-line front end: single evaluations, sweeps, and self-verification.

Exit codes: 0 success, 1 verification failure, 2 domain error, 64 usage
error.  Data goes to stdout (one JSON object per line, or CSV with a '.'
decimal separator); diagnostics go to stderr.  Floats are printed with 17
significant digits so that parsing the output reproduces them bit for bit.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .closed_form import ergodic_constants, normalized_transform, transform
from .errors import DomainError, ParameterError, SingularSequenceError
from .model import ModelParams
from .spectral import TransformPoint, domain_check
from .verify import run_all

_SWEEP_FIELDS = [
    "alpha_re",
    "alpha_im",
    "t",
    "log_L_re",
    "log_L_im",
    "normalized_re",
    "normalized_im",
    "Lambda_re",
    "rate",
    "error",
]


@dataclass(frozen=True)
class SweepSpec:
    """A grid evaluation request: every (alpha, t) pair at one (params, x)."""

    alpha_grid: list[complex]
    t_grid: list[int]
    x: float
    params: ModelParams
    output_format: str = "json"

    def __post_init__(self):
        if not self.alpha_grid or not self.t_grid:
            raise ValueError("alpha and t grids must be non-empty")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")


# stock argparse only treats plain decimals as negative numbers, which would
# reject values like "-1e-9" or "-0.3,-0.5" as unknown options
_NEGATIVE_VALUE = re.compile(
    r"^-(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?(,-?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)*$"
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; 2 is reserved for domain errors.
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_VALUE

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    """JSON-compatible scalar at 17 significant digits (exact round-trip)."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return f'"{value}"'
    if isinstance(value, int):
        return str(value)
    v = float(value)
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return format(v, ".17g")


def _json_line(pairs) -> str:
    return "{" + ", ".join(f'"{k}": {_fmt(v)}' for k, v in pairs) + "}"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return _fmt(value)


def _parse_t_grid(text: str) -> list[int]:
    """Comma-separated entries, each INT or START:STOP[:STEP] (inclusive)."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if ":" in item:
            parts = [int(p) for p in item.split(":")]
            if len(parts) == 2:
                start, stop, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                start, stop, step = parts
            else:
                raise ValueError(f"bad range {item!r}")
            if step <= 0:
                raise ValueError(f"range step must be positive in {item!r}")
            out.extend(range(start, stop + 1, step))
        else:
            out.append(int(item))
    return out


def _parse_alpha_grid(alpha_text: str, alpha_im_text: str | None) -> list[complex]:
    res = [float(a) for a in alpha_text.split(",")]
    if alpha_im_text is None:
        ims = [0.0] * len(res)
    else:
        ims = [float(b) for b in alpha_im_text.split(",")]
        if len(ims) != len(res):
            raise ValueError("--alpha and --alpha-im must have the same length")
    return [complex(a, b) for a, b in zip(res, ims)]


def cmd_transform(args) -> int:
    params = ModelParams(args.theta, args.m)
    point = TransformPoint(complex(args.alpha, args.alpha_im))
    tv = transform(params, point, args.x, args.t)
    sigma = tv.sigma_t
    print(
        _json_line(
            [
                ("log_value_re", tv.log_value.real),
                ("log_value_im", tv.log_value.imag),
                ("value_re", tv.value.real),
                ("value_im", tv.value.imag),
                ("sigma_re", None if sigma is None else sigma.real),
                ("sigma_im", None if sigma is None else sigma.imag),
                ("in_domain", domain_check(params, point)),
            ]
        )
    )
    return 0


def cmd_ergodic(args) -> int:
    params = ModelParams(args.theta, args.m)
    point = TransformPoint(complex(args.alpha, args.alpha_im))
    erg = ergodic_constants(params, point, args.x)
    print(
        _json_line(
            [
                ("Lambda_re", erg.lambda_of_alpha.real),
                ("Lambda_im", erg.lambda_of_alpha.imag),
                ("f_check_re", erg.f_check.real),
                ("f_check_im", erg.f_check.imag),
                ("rate", erg.rate),
            ]
        )
    )
    return 0


def _sweep_row(params: ModelParams, x: float, alpha: complex, t: int) -> dict:
    row = dict.fromkeys(_SWEEP_FIELDS)
    row["alpha_re"], row["alpha_im"], row["t"] = alpha.real, alpha.imag, t
    try:
        tv = transform(params, TransformPoint(alpha), x, t)
        norm = normalized_transform(params, TransformPoint(alpha), x, t)
        erg = ergodic_constants(params, TransformPoint(alpha), x)
    except (DomainError, SingularSequenceError):
        row["error"] = "out_of_domain"
        return row
    row["log_L_re"], row["log_L_im"] = tv.log_value.real, tv.log_value.imag
    row["normalized_re"], row["normalized_im"] = norm.real, norm.imag
    row["Lambda_re"] = erg.lambda_of_alpha.real
    row["rate"] = erg.rate
    return row


def run_sweep(spec: SweepSpec, threads: int = 1) -> list[dict]:
    """Evaluate every (alpha, t) pair; rows ordered by (alpha index, t index)
    regardless of execution order."""
    tasks = [(alpha, t) for alpha in spec.alpha_grid for t in spec.t_grid]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda at: _sweep_row(spec.params, spec.x, *at), tasks))
    return [_sweep_row(spec.params, spec.x, alpha, t) for alpha, t in tasks]


def cmd_sweep(args) -> int:
    spec = SweepSpec(
        alpha_grid=_parse_alpha_grid(args.alpha, args.alpha_im),
        t_grid=_parse_t_grid(args.t),
        x=args.x,
        params=ModelParams(args.theta, args.m),
        output_format=args.format,
    )
    rows = run_sweep(spec, threads=args.threads)
    if spec.output_format == "csv":
        print(",".join(_SWEEP_FIELDS))
        for row in rows:
            print(",".join(_csv_cell(row[k]) for k in _SWEEP_FIELDS))
    else:
        for row in rows:
            print(_json_line((k, row[k]) for k in _SWEEP_FIELDS))
    if args.strict and any(row["error"] for row in rows):
        return 2
    return 0


def cmd_verify(args) -> int:
    report = run_all(
        grid_size=args.grid_size,
        seed=args.seed,
        tolerance=args.tolerance,
        mc_samples=args.mc_samples,
    )
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        line = f"[{status}] {check.name:<22} error={check.error:.3e}  tolerance={check.tolerance:.3e}"
        if check.detail:
            line += f"  ({check.detail})"
        print(line)
    failed = sum(not c.passed for c in report.checks)
    print(f"{len(report.checks) - failed}/{len(report.checks)} checks passed")
    return 0 if report.all_passed else 1


def build_parser() -> _Parser:
    parser = _Parser(prog="ar1quad", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, with_point=True):
        p.add_argument("--theta", type=float, required=True, help="memory coefficient, 0 < |theta| < 1")
        p.add_argument("--m", type=float, default=0.0, help="level shift (default 0)")
        if with_point:
            p.add_argument("--x", type=float, required=True, help="conditioning start value X_0")

    p_tr = sub.add_parser("transform", help="evaluate L_t(alpha, x)")
    add_common(p_tr)
    p_tr.add_argument("--alpha", type=float, required=True, help="real part of alpha")
    p_tr.add_argument("--alpha-im", type=float, default=0.0, help="imaginary part of alpha")
    p_tr.add_argument("--t", type=int, required=True, help="horizon t >= 0")
    p_tr.set_defaults(func=cmd_transform)

    p_er = sub.add_parser("ergodic", help="evaluate Lambda(alpha) and f_check(alpha, x)")
    add_common(p_er)
    p_er.add_argument("--alpha", type=float, required=True)
    p_er.add_argument("--alpha-im", type=float, default=0.0)
    p_er.set_defaults(func=cmd_ergodic)

    p_sw = sub.add_parser("sweep", help="evaluate a grid of (alpha, t) pairs")
    add_common(p_sw)
    p_sw.add_argument("--alpha", required=True, help="comma-separated real parts")
    p_sw.add_argument("--alpha-im", default=None, help="comma-separated imaginary parts")
    p_sw.add_argument("--t", required=True, help="comma-separated horizons; START:STOP[:STEP] ranges allowed")
    p_sw.add_argument("--format", choices=("json", "csv"), default="json")
    p_sw.add_argument("--strict", action="store_true", help="exit 2 if any grid point is out of domain")
    p_sw.add_argument("--threads", type=int, default=1, help="parallelism cap (output order is unaffected)")
    p_sw.set_defaults(func=cmd_sweep)

    p_vf = sub.add_parser("verify", help="run the self-verification suite")
    p_vf.add_argument("--grid-size", type=int, default=3, help="values per parameter axis (1 = smoke run)")
    p_vf.add_argument("--seed", type=int, default=20240901, help="Monte Carlo seed")
    p_vf.add_argument("--tolerance", type=float, default=None, help="override the float-check tolerances")
    p_vf.add_argument("--mc-samples", type=int, default=1_000_000, help="Monte Carlo sample count")
    p_vf.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 64 on usage errors
    try:
        return args.func(args)
    except DomainError:
        print('{"error": "out_of_domain"}')
        return 2
    except SingularSequenceError:
        print('{"error": "singular_sequence"}')
        return 2
    except ParameterError as exc:
        print(f"ar1quad: error: {exc}", file=sys.stderr)
        return 64
    except ValueError as exc:
        print(f"ar1quad: error: {exc}", file=sys.stderr)
        return 64


def run() -> None:
    sys.exit(main())
