"""Command-line interface: run, sweep, and verify subcommands.

Scenarios come from a strict JSON config file (unknown keys are rejected);
sweep ranges come from flags.  Exit codes: 0 success, 1 invalid config or
range, 2 verification failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import decimal
import json
import math
import sys
from typing import Any

from .dynamics import NumericOptions
from .errors import ConfigError, PhotonBoxError, RangeError
from .operators import BoxParams, FreeFall, Harmonic, PhysConstants
from .oracle import OracleConfig
from .scenario import Measurement, Scenario, run_scenario, sweep, verify
from .states import Route

__all__ = ["main", "load_config", "sci", "sci17"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 2
EXIT_IO = 3

SWEEP_COLUMNS = (
    "t,chi_p_qcl,chi_q_qcl,dq,dp,dqcl,dm_p,dm_q,dE_p,dE_q,dT,"
    "prod_p,prod_q,bound_ET,valid,degenerate_p,degenerate_q"
)


# =============================================================================
# number formatting
# =============================================================================


def _nonfinite_token(x: float) -> str | None:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return None


def sci(x: float) -> str:
    """Shortest round-trip scientific notation with a bare exponent.

    Examples: 0.5 -> ``5e-1``, 2.0 -> ``2e0``, 0.5000000625 ->
    ``5.000000625e-1``.  Infinities serialize as ``inf``/``-inf``.
    """
    token = _nonfinite_token(x)
    if token is not None:
        return token
    if x == 0.0:
        return "0e0"
    sign, digits, exponent = decimal.Decimal(repr(float(x))).as_tuple()
    while len(digits) > 1 and digits[-1] == 0:
        digits = digits[:-1]
        exponent += 1
    sci_exp = exponent + len(digits) - 1
    mantissa = str(digits[0])
    if len(digits) > 1:
        mantissa += "." + "".join(str(d) for d in digits[1:])
    return ("-" if sign else "") + mantissa + "e" + str(sci_exp)


def sci17(x: float) -> str:
    """Fixed 17-significant-digit scientific notation with a bare exponent.

    Example: 0.5 -> ``5.0000000000000000e-1``.
    """
    token = _nonfinite_token(x)
    if token is not None:
        return token
    if x == 0.0:
        return "0.0000000000000000e0"
    mantissa, exponent = f"{x:.16e}".split("e")
    return f"{mantissa}e{int(exponent)}"


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def _jsonable(x: Any) -> Any:
    if isinstance(x, float) and not math.isfinite(x):
        return _nonfinite_token(x)
    return x


# =============================================================================
# config file
# =============================================================================


def _require_mapping(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path} must be an object")
    return value


def _check_keys(doc: dict, path: str, required: set[str], optional: set[str] = frozenset()) -> None:
    unknown = set(doc) - required - optional
    if unknown:
        raise ConfigError(f"unknown key(s) in {path}: {', '.join(sorted(unknown))}")
    missing = required - set(doc)
    if missing:
        raise ConfigError(f"missing key(s) in {path}: {', '.join(sorted(missing))}")


def _number(doc: dict, path: str, key: str, default: float | None = None) -> float:
    if key not in doc:
        if default is not None:
            return default
        raise ConfigError(f"missing key {path}.{key}")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{path}.{key} must be finite")
    return value


def _integer(doc: dict, path: str, key: str, default: int) -> int:
    if key not in doc:
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key} must be an integer")
    return value


def _reject_nonfinite(name: str) -> float:
    raise ConfigError(f"non-finite literal {name} is not allowed in config")


def load_config(path: str) -> Scenario:
    """Load and validate a scenario config file.

    Raises ConfigError for invalid content and OSError for unreadable
    files; the CLI maps those to exit codes 1 and 3.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text, parse_constant=_reject_nonfinite)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return build_scenario(doc)


def build_scenario(doc: Any) -> Scenario:
    """Build a Scenario from a parsed config document."""
    doc = _require_mapping(doc, "config")
    _check_keys(
        doc,
        "config",
        required={"constants", "box", "measurement", "time"},
        optional={"numeric", "oracle"},
    )

    consts_doc = _require_mapping(doc["constants"], "constants")
    _check_keys(consts_doc, "constants", required={"hbar", "c", "g"})
    box_doc = _require_mapping(doc["box"], "box")
    _check_keys(box_doc, "box", required={"M", "m", "potential"})
    pot_doc = _require_mapping(box_doc["potential"], "box.potential")
    pot_type = pot_doc.get("type")
    if pot_type == "free":
        _check_keys(pot_doc, "box.potential", required={"type"})
        potential: FreeFall | Harmonic = FreeFall()
    elif pot_type == "harmonic":
        _check_keys(pot_doc, "box.potential", required={"type", "k"})
        potential = _build(Harmonic, "box.potential", k=_number(pot_doc, "box.potential", "k"))
    else:
        raise ConfigError("box.potential.type must be 'free' or 'harmonic'")

    meas_doc = _require_mapping(doc["measurement"], "measurement")
    _check_keys(meas_doc, "measurement", required={"route", "device_dx", "device_dcl"})
    route_name = meas_doc["route"]
    if route_name not in ("p", "q"):
        raise ConfigError("measurement.route must be 'p' or 'q'")

    time_doc = _require_mapping(doc["time"], "time")
    _check_keys(time_doc, "time", required={"t_emit"})

    numeric_doc = _require_mapping(doc.get("numeric", {}), "numeric")
    _check_keys(numeric_doc, "numeric", required=set(), optional={"step"})

    oracle_cfg = None
    if "oracle" in doc:
        oracle_doc = _require_mapping(doc["oracle"], "oracle")
        _check_keys(oracle_doc, "oracle", required=set(), optional={"n", "buffer", "scale", "step"})
        oracle_cfg = _build(
            OracleConfig,
            "oracle",
            n=_integer(oracle_doc, "oracle", "n", 60),
            buffer=_integer(oracle_doc, "oracle", "buffer", 8),
            scale=_number(oracle_doc, "oracle", "scale", 1.0),
            step=_number(oracle_doc, "oracle", "step", 1e-3),
        )

    constants = _build(
        PhysConstants,
        "constants",
        hbar=_number(consts_doc, "constants", "hbar"),
        c=_number(consts_doc, "constants", "c"),
        g=_number(consts_doc, "constants", "g"),
    )
    box = _build(
        BoxParams,
        "box",
        M=_number(box_doc, "box", "M"),
        m=_number(box_doc, "box", "m"),
        potential=potential,
    )
    measurement = Measurement(
        route=Route(route_name),
        device_dx=_number(meas_doc, "measurement", "device_dx"),
        device_dcl=_number(meas_doc, "measurement", "device_dcl"),
    )
    numeric = _build(
        NumericOptions, "numeric", step=_number(numeric_doc, "numeric", "step", 1e-3)
    )
    return _build(
        Scenario,
        "config",
        constants=constants,
        box=box,
        measurement=measurement,
        t_emit=_number(time_doc, "time", "t_emit"),
        numeric=numeric,
        oracle=oracle_cfg,
    )


def _build(cls, path, **kwargs):
    try:
        return cls(**kwargs)
    except (ValueError, TypeError, PhotonBoxError) as exc:
        raise ConfigError(f"invalid {path}: {exc}") from exc


# =============================================================================
# subcommands
# =============================================================================


def _cmd_run(args: argparse.Namespace) -> int:
    s = load_config(args.config)
    result = run_scenario(s)
    report = result.report
    lines = [
        ("route", report.route.value),
        ("t_emit", sci(report.t)),
        ("dq", sci(result.dq)),
        ("dp", sci(result.dp)),
        ("dqcl", sci(result.dqcl)),
        ("chi_p_qcl", sci(result.chi_p_qcl)),
        ("chi_q_qcl", sci(result.chi_q_qcl)),
        ("dm", sci(report.dm)),
        ("dE", sci(report.dE)),
        ("dT", sci(report.dT)),
        ("product", sci(report.product)),
        ("bound", sci(report.bound)),
        ("ok", _fmt_bool(report.ok)),
        ("valid", _fmt_bool(report.valid)),
        ("degenerate", _fmt_bool(report.degenerate)),
    ]
    for key, value in lines:
        print(f"{key} = {value}")
    if args.out:
        payload = {
            "route": report.route.value,
            "t_emit": report.t,
            "spreads": {"dq": result.dq, "dp": result.dp, "dqcl": result.dqcl},
            "chi": {"p_qcl": result.chi_p_qcl, "q_qcl": result.chi_q_qcl},
            "dm": _jsonable(report.dm),
            "dE": _jsonable(report.dE),
            "dT": report.dT,
            "product": _jsonable(report.product),
            "bound": report.bound,
            "ok": report.ok,
            "valid": report.valid,
            "degenerate": report.degenerate,
        }
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    s = load_config(args.config)
    rows = sweep(s, args.t_min, args.t_max, args.steps)
    out_lines = [SWEEP_COLUMNS]
    for row in rows:
        out_lines.append(
            ",".join(
                [
                    sci17(row.t),
                    sci17(row.chi_p_qcl),
                    sci17(row.chi_q_qcl),
                    sci17(row.dq),
                    sci17(row.dp),
                    sci17(row.dqcl),
                    sci17(row.dm_p),
                    sci17(row.dm_q),
                    sci17(row.dE_p),
                    sci17(row.dE_q),
                    sci17(row.dT),
                    sci17(row.prod_p),
                    sci17(row.prod_q),
                    sci17(row.bound_ET),
                    _fmt_bool(row.valid),
                    _fmt_bool(row.degenerate_p),
                    _fmt_bool(row.degenerate_q),
                ]
            )
        )
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out_lines) + "\n")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    s = load_config(args.config)
    kwargs: dict[str, Any] = {"grid": args.grid, "use_oracle": args.oracle}
    if args.tol is not None:
        kwargs["tol"] = args.tol
        kwargs["oracle_tol"] = args.tol
    report = verify(s, **kwargs)
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        status = "pass" if c.passed else "FAIL"
        print(f"{c.name:<{width}}  max_dev={c.max_dev:.3e}  tol={c.tol:.1e}  {status}")
    if not report.all_passed:
        return EXIT_VERIFY
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors on the config exit code."""

    def error(self, message: str):  # noqa: D102 - argparse override
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="photonbox", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one scenario and print the inference report")
    run_p.add_argument("--config", required=True, help="path to the scenario JSON file")
    run_p.add_argument("--out", help="optional path for a JSON copy of the report")
    run_p.set_defaults(func=_cmd_run)

    sweep_p = sub.add_parser("sweep", help="sweep the emission time and write a CSV")
    sweep_p.add_argument("--config", required=True, help="path to the scenario JSON file")
    sweep_p.add_argument("--t-min", type=float, required=True, dest="t_min")
    sweep_p.add_argument("--t-max", type=float, required=True, dest="t_max")
    sweep_p.add_argument("--steps", type=int, required=True)
    sweep_p.add_argument("--out", required=True, help="output CSV path")
    sweep_p.set_defaults(func=_cmd_sweep)

    verify_p = sub.add_parser("verify", help="cross-check closed forms against independent routes")
    verify_p.add_argument("--config", required=True, help="path to the scenario JSON file")
    verify_p.add_argument("--grid", type=int, default=100, help="time-grid points (default 100)")
    verify_p.add_argument(
        "--tol",
        type=float,
        default=None,
        help="override every tolerance (defaults: 1e-9 integration, 1e-6 matrix checks)",
    )
    verify_p.add_argument(
        "--oracle", action="store_true", help="also run the truncated-basis matrix checks"
    )
    verify_p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (ConfigError, RangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhotonBoxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
