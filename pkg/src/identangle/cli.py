"""Command line interface for the pair-entanglement toolkit.

Subcommands

  eval          entropy of one parameter point under a measurement plan
  sweep         grids over a2 / theta / chi, written as CSV or JSON
  extract       splitter report for the same-site opposite-spin pair
  oracle-check  randomized validation against the labeled reference

Values may come from a config file (--config PATH) holding `key = value`
lines; an optional dotted section prefix on a key is ignored, so
`sweep.a2 = 0:1:101` sets a2.  Explicit flags always win over the file.
Angles are radians unless the number carries a `deg` suffix.  Grids are
`start:stop:steps` with integer steps >= 2 and start <= stop.  Floats are
printed with 15 significant digits, so identical inputs give
byte-identical outputs.

Exit codes: 0 success, 1 oracle-check deviation, 2 bad configuration,
3 degenerate arithmetic (zero-norm state or empty region), 4 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

from .entanglement import (
    MEASUREMENT_PLANS,
    BellPairParams,
    entanglement_distinguishable,
    evaluate_plan,
    von_neumann_entropy,
)
from .errors import DegenerateError
from .hilbert import DOWN, LEFT, UP, OneParticleBasis, basis_state
from .oracle import run_oracle_check
from .reduction import localized, localized_partial_trace
from .symm import (
    SplitterParams,
    Statistics,
    apply_splitter,
    extraction_report,
    norm_constant,
    pair_ket,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4

RECORD_FIELDS = (
    "a_squared",
    "theta",
    "chi",
    "eta",
    "lambda1",
    "lambda2",
    "entropy_bits",
    "entropy_ni_bits",
)
FIG3C_FIELDS = (
    "a_squared",
    "theta",
    "chi",
    "entropy_boson_bits",
    "entropy_fermion_bits",
    "entropy_diff_bits",
)

STATS_CHOICES = ("boson", "fermion")
FORMAT_CHOICES = ("csv", "json")

# keys accepted in config files; section prefixes are stripped first
CONFIG_KEYS = frozenset(
    {"stats", "measure", "a2", "theta", "chi", "out", "format", "seed", "trials", "fig3c", "r2"}
)


class ConfigError(ValueError):
    """Bad flag or config-file value."""


@dataclass(frozen=True)
class SweepRecord:
    """One evaluated scenario point, as written to CSV or JSON.

    lambda1 and lambda2 are the two largest eigenvalues of the reduced
    state.  The localized plans (L, R, LR, LL) have two-level spectra, so
    there lambda1 + lambda2 = 1 and the entropy stays within one bit; the
    position-blind plans (nonlocal, full) can spread over four levels.
    entropy_ni_bits is the distinguishable-pair reference for the same
    branch weights, carried along for fence comparisons.
    """

    a_squared: float
    theta: float
    chi: float
    eta: int
    lambda1: float
    lambda2: float
    entropy_bits: float
    entropy_ni_bits: float


@dataclass(frozen=True)
class ScenarioSettings:
    """Scenario inputs after merging the config file and explicit flags.

    Axes are materialized value tuples; a scalar parameter is a one-element
    tuple.  Grid bounds and choice fields have already been validated.
    """

    statistics: Statistics
    plan: str
    a_squared: tuple[float, ...]
    theta: tuple[float, ...]
    chi: tuple[float, ...]
    out_path: str | None
    out_format: str
    fig3c: bool


def _parse_float(text: str, what: str) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ConfigError(f"{what} is not a number: {text!r}") from None


def _parse_int(text: str, what: str) -> int:
    try:
        return int(str(text), 10)
    except (TypeError, ValueError):
        raise ConfigError(f"{what} is not an integer: {text!r}") from None


def _parse_bool(value, what: str) -> bool:
    if isinstance(value, bool):
        return value
    t = str(value).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{what} is not a boolean: {value!r}")


def _parse_choice(value: str, allowed: tuple[str, ...], what: str) -> str:
    if value not in allowed:
        raise ConfigError(f"{what} must be one of {', '.join(allowed)}, got {value!r}")
    return value


def parse_angle(text: str, what: str = "angle") -> float:
    """Angle in radians; a trailing `deg` suffix converts from degrees."""
    t = str(text).strip()
    if t.lower().endswith("deg"):
        return math.radians(_parse_float(t[:-3], what))
    return _parse_float(t, what)


def _parse_unit(text: str, what: str) -> float:
    value = _parse_float(text, what)
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"{what} must lie in [0, 1], got {value}")
    return value


def parse_axis(text: str, scalar, what: str) -> list[float]:
    """Scalar or `start:stop:steps` grid, elementwise through `scalar`."""
    t = str(text).strip()
    if ":" not in t:
        return [scalar(t, what)]
    parts = t.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{what} grid must be start:stop:steps, got {text!r}")
    start = scalar(parts[0], what)
    stop = scalar(parts[1], what)
    steps = _parse_int(parts[2], f"{what} steps")
    if steps < 2:
        raise ConfigError(f"{what} grid needs at least 2 steps, got {steps}")
    if start > stop:
        raise ConfigError(f"{what} grid start {start} exceeds stop {stop}")
    span = stop - start
    return [start + span * i / (steps - 1) for i in range(steps)]


def load_config(path: str) -> dict[str, str]:
    """Flat `key = value` file; `#` comments; dotted prefixes stripped."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    cfg: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = line.split("=", 1)
        key = key.strip().split(".")[-1]
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        cfg[key] = value.strip()
    return cfg


def _setting(args, cfg: dict[str, str], key: str, default=None):
    value = getattr(args, key.replace("-", "_"), None)
    if value is None:
        value = cfg.get(key, default)
    return value


def evaluate_record(
    a_squared: float,
    theta: float,
    chi: float,
    statistics: Statistics,
    plan: str,
) -> SweepRecord:
    """Entropy record of one scenario point under a measurement plan."""
    params = BellPairParams(
        amplitude=math.sqrt(a_squared),
        phase=theta,
        overlap=chi,
        statistics=statistics,
    )
    result = evaluate_plan(params, plan)
    lam = result.eigenvalues
    return SweepRecord(
        a_squared=a_squared,
        theta=theta,
        chi=chi,
        eta=statistics.eta,
        lambda1=lam[0] if len(lam) > 0 else 0.0,
        lambda2=lam[1] if len(lam) > 1 else 0.0,
        entropy_bits=result.entropy_bits,
        entropy_ni_bits=entanglement_distinguishable(params.amplitude),
    )


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    # + 0.0 maps -0.0 to 0.0 so zeros always render the same way
    return format(float(value) + 0.0, ".15g")


def render_csv(fields: tuple[str, ...], rows: list[dict]) -> str:
    lines = [",".join(fields)]
    for row in rows:
        lines.append(",".join(_fmt(row[name]) for name in fields))
    return "\n".join(lines) + "\n"


def render_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w") as fh:
        fh.write(text)


def _style(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def resolve_scenario(args, cfg, scalars_only: bool = False) -> ScenarioSettings:
    """Merge flags over config values into one validated settings bundle."""
    stats = _parse_choice(
        str(_setting(args, cfg, "stats", "boson")), STATS_CHOICES, "stats"
    )
    plan = _parse_choice(
        str(_setting(args, cfg, "measure", "L")), MEASUREMENT_PLANS, "measure"
    )
    fmt = _parse_choice(
        str(_setting(args, cfg, "format", "csv")), FORMAT_CHOICES, "format"
    )
    fig3c = _parse_bool(_setting(args, cfg, "fig3c", False), "fig3c")
    axes: dict[str, tuple[float, ...]] = {}
    for key, scalar, default in (
        ("a2", _parse_unit, "0.5"),
        ("theta", parse_angle, "0"),
        ("chi", _parse_unit, "0.5"),
    ):
        values = parse_axis(_setting(args, cfg, key, default), scalar, key)
        if scalars_only and len(values) != 1:
            raise ConfigError(f"eval takes a scalar {key}, got a grid")
        axes[key] = tuple(values)
    return ScenarioSettings(
        statistics=Statistics.from_name(stats),
        plan=plan,
        a_squared=axes["a2"],
        theta=axes["theta"],
        chi=axes["chi"],
        out_path=_setting(args, cfg, "out"),
        out_format=fmt,
        fig3c=fig3c,
    )


def cmd_eval(args, cfg) -> int:
    settings = resolve_scenario(args, cfg, scalars_only=True)
    record = asdict(
        evaluate_record(
            settings.a_squared[0],
            settings.theta[0],
            settings.chi[0],
            settings.statistics,
            settings.plan,
        )
    )
    if settings.out_format == "csv":
        text = render_csv(RECORD_FIELDS, [record])
    else:
        text = render_json(record)
    _write_output(text, settings.out_path)
    return EXIT_OK


def cmd_sweep(args, cfg) -> int:
    settings = resolve_scenario(args, cfg)
    rows: list[dict] = []
    # row-major: a2 outermost, chi innermost
    for a2 in settings.a_squared:
        for theta in settings.theta:
            for chi in settings.chi:
                if settings.fig3c:
                    boson = evaluate_record(
                        a2, theta, chi, Statistics.BOSON, settings.plan
                    )
                    fermion = evaluate_record(
                        a2, theta, chi, Statistics.FERMION, settings.plan
                    )
                    rows.append(
                        {
                            "a_squared": a2,
                            "theta": theta,
                            "chi": chi,
                            "entropy_boson_bits": boson.entropy_bits,
                            "entropy_fermion_bits": fermion.entropy_bits,
                            "entropy_diff_bits": boson.entropy_bits
                            - fermion.entropy_bits,
                        }
                    )
                else:
                    rows.append(
                        asdict(
                            evaluate_record(
                                a2, theta, chi, settings.statistics, settings.plan
                            )
                        )
                    )
    fields = FIG3C_FIELDS if settings.fig3c else RECORD_FIELDS
    if settings.out_format == "csv":
        text = render_csv(fields, rows)
    else:
        text = render_json(rows)
    _write_output(text, settings.out_path)
    return EXIT_OK


def cmd_extract(args, cfg) -> int:
    stats = _parse_choice(
        str(_setting(args, cfg, "stats", "boson")), STATS_CHOICES, "stats"
    )
    statistics = Statistics.from_name(stats)
    r2 = _parse_unit(str(_setting(args, cfg, "r2", "0.5")), "r2")
    basis = OneParticleBasis((LEFT, "C", "D"))
    pair = pair_ket(
        basis_state(basis, LEFT, UP), basis_state(basis, LEFT, DOWN), statistics
    )
    splitter = SplitterParams(
        reflect=math.sqrt(r2),
        transmit=math.sqrt(1.0 - r2),
        source=LEFT,
        out1="C",
        out2="D",
    )
    routed = apply_splitter(splitter, pair)
    report = extraction_report(routed, "C", "D")
    split_entropy = None
    if report.split_component is not None:
        rho = localized_partial_trace(report.split_component, localized(basis, "C"))
        split_entropy = von_neumann_entropy(rho).entropy_bits
    payload = {
        "statistics": stats,
        "r_squared": r2,
        "probabilities": {
            "same_mode_1": report.same_mode_1,
            "same_mode_2": report.same_mode_2,
            "split": report.split,
        },
        "split_entropy_bits": split_entropy,
        "norm_before": norm_constant(pair),
        "norm_after": norm_constant(routed),
    }
    _write_output(render_json(payload), _setting(args, cfg, "out"))
    return EXIT_OK


def cmd_oracle_check(args, cfg) -> int:
    seed = _parse_int(_setting(args, cfg, "seed", "0"), "seed")
    trials = _parse_int(_setting(args, cfg, "trials", "200"), "trials")
    if trials < 1:
        raise ConfigError(f"trials must be a positive integer, got {trials}")
    corrupt = bool(getattr(args, "corrupt_eta", False))
    lines = []
    failures: dict[str, dict] = {}
    for statistics in (Statistics.BOSON, Statistics.FERMION):
        result = run_oracle_check(statistics, trials=trials, seed=seed, corrupt_eta=corrupt)
        lines.append(
            f"oracle-check: statistics={statistics.name.lower()} "
            f"trials={trials} seed={seed}"
        )
        lines.append(
            f"  amplitude identity     max deviation {result.amplitude_deviation:.3e}"
        )
        lines.append(
            f"  probability identity   max deviation {result.probability_deviation:.3e}"
        )
        lines.append(
            f"  completeness           max deviation {result.completeness_deviation:.3e}"
        )
        if not result.passed:
            failures[statistics.name.lower()] = result.worst_case
    verdict = "FAIL" if failures else "PASS"
    lines.append(
        f"overall: {_style(verdict, '31' if failures else '32')} (tolerance 1e-10)"
    )
    sys.stdout.write("\n".join(lines) + "\n")
    if failures:
        sys.stderr.write(render_json(failures))
        return EXIT_VALIDATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="identangle",
        description=(
            "Two identical qubits: symmetrized pair amplitudes, localized "
            "partial traces, entanglement entropy."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", metavar="PATH", help="key = value settings file; explicit flags win"
    )
    common.add_argument(
        "--out", metavar="PATH", help="write output here instead of stdout"
    )
    common.add_argument(
        "--format", choices=FORMAT_CHOICES, help="output format (default csv)"
    )

    scenario = argparse.ArgumentParser(add_help=False)
    scenario.add_argument(
        "--stats", choices=STATS_CHOICES, help="exchange statistics (default boson)"
    )
    scenario.add_argument(
        "--a2",
        metavar="VAL",
        help="up-branch weight a^2 in [0, 1], scalar or start:stop:steps",
    )
    scenario.add_argument(
        "--theta",
        metavar="VAL",
        help="relative branch phase, radians or e.g. 90deg, scalar or grid",
    )
    scenario.add_argument(
        "--chi",
        metavar="VAL",
        help="squared mode overlap in [0, 1], scalar or grid",
    )
    scenario.add_argument(
        "--measure", choices=MEASUREMENT_PLANS, help="measurement plan (default L)"
    )

    cmd = sub.add_parser(
        "eval",
        parents=[common, scenario],
        help="entropy of one parameter point",
    )
    cmd.set_defaults(handler=cmd_eval)

    cmd = sub.add_parser(
        "sweep",
        parents=[common, scenario],
        help="entropy over parameter grids, row-major with chi innermost",
    )
    cmd.add_argument(
        "--fig3c",
        action="store_true",
        default=None,
        help="emit boson and fermion entropies plus their difference",
    )
    cmd.set_defaults(handler=cmd_sweep)

    cmd = sub.add_parser(
        "extract",
        parents=[common],
        help="splitter extraction of the same-site opposite-spin pair",
    )
    cmd.add_argument(
        "--stats", choices=STATS_CHOICES, help="exchange statistics (default boson)"
    )
    cmd.add_argument(
        "--r2", metavar="VAL", help="splitter reflectivity |r|^2 in [0, 1] (default 0.5)"
    )
    cmd.set_defaults(handler=cmd_extract)

    cmd = sub.add_parser(
        "oracle-check",
        help="randomized validation against the labeled reference",
    )
    cmd.add_argument(
        "--config", metavar="PATH", help="key = value settings file; explicit flags win"
    )
    cmd.add_argument("--seed", metavar="N", help="base seed (default 0)")
    cmd.add_argument(
        "--trials", metavar="N", help="random draws per statistics (default 200)"
    )
    cmd.add_argument("--corrupt-eta", action="store_true", help=argparse.SUPPRESS)
    cmd.set_defaults(handler=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its message; -h exits 0, usage errors 2
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        cfg = load_config(args.config) if getattr(args, "config", None) else {}
        return args.handler(args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
