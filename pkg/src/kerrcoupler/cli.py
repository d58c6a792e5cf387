"""Scenario runner emitting deterministic CSV time series.

Four named scenarios cover the standard study of the reference
coupler (chi = 25, epsilon = alpha = pi/25):

    fig2  closed run, qubit-state populations next to the
          trigonometric reduced-model values
    fig3  closed run, populations of the two-photon states |02⟩ and |12⟩
    fig4  closed run, Bell-like state probabilities
    fig5  open runs at leakage rates 0, 1e-4 and 1e-3, concurrence
          per rate in a separate file

A fifth scenario, custom, takes a JSON configuration file.  All CSV
numbers are written in scientific notation with 12 significant digits
so repeated runs produce byte-identical files.
"""

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path

from .closed import TimeSeriesRecord, run_closed
from .errors import ConfigError, CouplerError
from .hamiltonian import (
    DEFAULT_CLOSED_CUTOFF,
    DEFAULT_OPEN_CUTOFF,
    FIG5_KAPPAS,
    CouplerConfig,
    reference_preset,
)
from .lindblad import run_open
from .oracle import closed_form_amplitudes

logger = logging.getLogger(__name__)

SCENARIO_NAMES = ("fig2", "fig3", "fig4", "fig5", "custom")

_CONFIG_KEYS = {
    "chi_a": float,
    "chi_b": float,
    "epsilon_re": float,
    "epsilon_im": float,
    "alpha_re": float,
    "alpha_im": float,
    "kappa_a": float,
    "kappa_b": float,
    "cutoff_a": int,
    "cutoff_b": int,
    "t_max": float,
    "dt": float,
    "initial_na": int,
    "initial_nb": int,
    "solver": str,
}
_REQUIRED_KEYS = ("chi_a", "chi_b", "epsilon_re", "alpha_re")


def _format(value: float) -> str:
    """Scientific notation, 12 significant digits, normalized zero sign."""
    return f"{value + 0.0:.11e}"


def _clamp01(value: float) -> float:
    return min(1.0, max(0.0, value))


def load_config(path: str | Path) -> tuple[CouplerConfig, str]:
    """Parse the flat JSON configuration; returns (config, solver)."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top-level JSON value must be an object")

    unknown = sorted(set(raw) - set(_CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"{path}: unknown fields: {', '.join(unknown)}")
    missing = sorted(set(_REQUIRED_KEYS) - set(raw))
    if missing:
        raise ConfigError(f"{path}: missing required fields: {', '.join(missing)}")

    bad_types = []
    values = {}
    for key, caster in _CONFIG_KEYS.items():
        if key not in raw:
            continue
        value = raw[key]
        if caster is str:
            if not isinstance(value, str):
                bad_types.append(key)
                continue
            values[key] = value
        elif isinstance(value, bool) or not isinstance(value, (int, float)):
            bad_types.append(key)
        else:
            values[key] = caster(value)
    if bad_types:
        raise ConfigError(f"{path}: fields with wrong types: {', '.join(bad_types)}")

    solver = values.get("solver", "spectral")
    if solver not in ("spectral", "integrate"):
        raise ConfigError(f'{path}: solver must be "spectral" or "integrate", got {solver!r}')

    kappa_a = values.get("kappa_a", 0.0)
    kappa_b = values.get("kappa_b", 0.0)
    closed = kappa_a == 0.0 and kappa_b == 0.0
    default_cutoff = DEFAULT_CLOSED_CUTOFF if closed else DEFAULT_OPEN_CUTOFF

    cfg = CouplerConfig(
        chi_a=values["chi_a"],
        chi_b=values["chi_b"],
        epsilon=complex(values["epsilon_re"], values.get("epsilon_im", 0.0)),
        alpha=complex(values["alpha_re"], values.get("alpha_im", 0.0)),
        kappa_a=kappa_a,
        kappa_b=kappa_b,
        cutoff_a=values.get("cutoff_a", default_cutoff),
        cutoff_b=values.get("cutoff_b", default_cutoff),
        t_max=values.get("t_max", 250.0),
        dt=values.get("dt", 0.5),
        initial=(values.get("initial_na", 0), values.get("initial_nb", 0)),
    )
    return cfg, solver


def _closed_form_row(alpha: complex, epsilon: complex, t: float):
    # The trigonometric counterpart exists for a real pump equal to the
    # internal coupling; otherwise the analytic columns are left out.
    if alpha != epsilon or alpha.imag != 0.0 or alpha.real == 0.0:
        return None
    amps = closed_form_amplitudes(alpha.real, t)
    return amps.probabilities()


def _rows_fig2(cfg: CouplerConfig, records: list[TimeSeriesRecord]):
    header = ["t", "p00", "p10", "p01", "p11", "pa00", "pa10", "pa01", "pa11"]
    rows = []
    for record in records:
        analytic = _closed_form_row(cfg.alpha, cfg.epsilon, record.t)
        if analytic is None:
            raise ConfigError(
                "the fig2 scenario needs a real pump equal to the internal "
                "coupling so the reduced-model columns are defined"
            )
        p00, p10, p01, p11 = record.qubit_populations()
        rows.append([record.t, p00, p10, p01, p11, *analytic])
    return header, rows


def _rows_fig3(records: list[TimeSeriesRecord]):
    header = ["t", "p02", "p12", "leakage"]
    return header, [
        [r.t, r.population(0, 2), r.population(1, 2), r.leakage] for r in records
    ]


def _rows_fig4(records: list[TimeSeriesRecord]):
    header = ["t", "pB1", "pB2", "pB3", "pB4"]
    return header, [[r.t, *r.bell_probs] for r in records]


def _rows_fig5(records: list[TimeSeriesRecord]):
    header = ["t", "concurrence", "leakage", "trace"]
    return header, [[r.t, r.concurrence, r.leakage, r.norm_or_trace] for r in records]


def _rows_custom(records: list[TimeSeriesRecord]):
    header = [
        "t", "p00", "p10", "p01", "p11", "p02", "p12",
        "pB1", "pB2", "pB3", "pB4", "concurrence", "leakage", "trace",
    ]
    rows = []
    for r in records:
        p00, p10, p01, p11 = r.qubit_populations()
        rows.append([
            r.t, p00, p10, p01, p11, r.population(0, 2), r.population(1, 2),
            *r.bell_probs, r.concurrence, r.leakage, r.norm_or_trace,
        ])
    return header, rows


def _write_csv(path: Path, header: list[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            formatted = [_format(row[0])]
            for name, value in zip(header[1:], row[1:]):
                if name != "trace":
                    value = _clamp01(value)
                formatted.append(_format(value))
            writer.writerow(formatted)


def run_scenario(
    name: str,
    out: str | Path,
    config_path: str | Path | None = None,
    solver: str = "spectral",
    cutoff_a: int | None = None,
    cutoff_b: int | None = None,
    quiet: bool = False,
) -> list[Path]:
    """Execute a scenario and write its CSV file(s); returns the paths."""
    if name not in SCENARIO_NAMES:
        raise ConfigError(f"unknown scenario {name!r}; choose from {SCENARIO_NAMES}")

    overrides = {}
    if cutoff_a is not None:
        overrides["cutoff_a"] = cutoff_a
    if cutoff_b is not None:
        overrides["cutoff_b"] = cutoff_b

    out = Path(out)
    written = []

    if name == "custom":
        if config_path is None:
            raise ConfigError("the custom scenario requires --config")
        cfg, config_solver = load_config(config_path)
        solver = config_solver if solver == "spectral" else solver
        if overrides:
            cfg = cfg.with_(**overrides)
        records = run_closed(cfg) if cfg.is_closed else run_open(cfg, solver=solver)
        header, rows = _rows_custom(records)
        _write_csv(out, header, rows)
        written.append(out)
    elif name == "fig5":
        for kappa in FIG5_KAPPAS:
            cfg = reference_preset(
                kappa_a=kappa,
                kappa_b=kappa,
                cutoff_a=DEFAULT_OPEN_CUTOFF,
                cutoff_b=DEFAULT_OPEN_CUTOFF,
            ).with_(**overrides)
            records = run_open(cfg, solver=solver)
            header, rows = _rows_fig5(records)
            path = out.with_name(f"{out.stem}_kappa_{kappa:.0e}.csv")
            _write_csv(path, header, rows)
            written.append(path)
    else:
        cfg = reference_preset(**overrides)
        records = run_closed(cfg)
        if name == "fig2":
            header, rows = _rows_fig2(cfg, records)
        elif name == "fig3":
            header, rows = _rows_fig3(records)
        else:
            header, rows = _rows_fig4(records)
        _write_csv(out, header, rows)
        written.append(out)

    if not quiet:
        for path in written:
            print(f"wrote {path}")
    return written


def validate_config(config_path: str | Path) -> dict:
    """Parse and report a configuration without running anything."""
    cfg, solver = load_config(config_path)
    x = abs(cfg.alpha) / 2.0
    y = math.sqrt(5.0) * x
    dim = cfg.space.dim
    samples = cfg.times().size
    report = {
        "chi_a": cfg.chi_a,
        "chi_b": cfg.chi_b,
        "epsilon": cfg.epsilon,
        "alpha": cfg.alpha,
        "kappa_a": cfg.kappa_a,
        "kappa_b": cfg.kappa_b,
        "cutoff_a": cfg.cutoff_a,
        "cutoff_b": cfg.cutoff_b,
        "t_max": cfg.t_max,
        "dt": cfg.dt,
        "initial": cfg.initial,
        "solver": solver,
        "scissors_valid": cfg.scissors_valid,
        "x": x,
        "y": y,
        "hilbert_dim": dim,
        "samples": samples,
    }
    if not cfg.is_closed:
        report["liouvillian_dim"] = dim * dim
    return report


def _print_report(report: dict) -> None:
    for key, value in report.items():
        print(f"{key} = {value}")
    dim = report["hilbert_dim"]
    if "liouvillian_dim" in report:
        cost = f"one {dim * dim}x{dim * dim} eigendecomposition"
    else:
        cost = f"one {dim}x{dim} Hermitian eigendecomposition"
    print(f"estimated cost: {cost} plus {report['samples']} sampled states")
    print("no simulation executed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrcoupler",
        description="Pumped Kerr coupler simulations as CSV time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario and write CSV output")
    run_p.add_argument("scenario_pos", nargs="?", metavar="scenario",
                       help=f"one of {', '.join(SCENARIO_NAMES)}")
    run_p.add_argument("out_pos", nargs="?", metavar="out",
                       help="output CSV path (prefix for fig5)")
    run_p.add_argument("--scenario", choices=SCENARIO_NAMES)
    run_p.add_argument("--config", help="JSON configuration (custom scenario)")
    run_p.add_argument("--out", help="output CSV path (prefix for fig5)")
    run_p.add_argument("--solver", choices=("spectral", "integrate"),
                       default="spectral", help="open-system solver")
    run_p.add_argument("--cutoff-a", type=int, help="override mode-a Fock cutoff")
    run_p.add_argument("--cutoff-b", type=int, help="override mode-b Fock cutoff")
    run_p.add_argument("--quiet", action="store_true", help="suppress progress output")

    val_p = sub.add_parser("validate", help="parse and report a configuration")
    val_p.add_argument("config_pos", nargs="?", metavar="config",
                       help="JSON configuration path")
    val_p.add_argument("--config", help="JSON configuration path")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")

    try:
        if args.command == "run":
            scenario = args.scenario or args.scenario_pos
            out = args.out or args.out_pos
            if scenario is None:
                parser.error("run needs a scenario (positional or --scenario)")
            if scenario not in SCENARIO_NAMES:
                parser.error(
                    f"unknown scenario {scenario!r}; choose from {', '.join(SCENARIO_NAMES)}"
                )
            if out is None:
                parser.error("run needs an output path (positional or --out)")
            run_scenario(
                scenario,
                out,
                config_path=args.config,
                solver=args.solver,
                cutoff_a=args.cutoff_a,
                cutoff_b=args.cutoff_b,
                quiet=args.quiet,
            )
        else:
            config = args.config or args.config_pos
            if config is None:
                parser.error("validate needs a configuration path")
            _print_report(validate_config(config))
    except CouplerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
