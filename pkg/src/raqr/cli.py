"""Command-line entry point.

    raqr run --scenario <name> [--config <path>] [--set key=value ...]
             [--out <path>] [--seed <u64>] [--jobs N] [--plotdata <dir>]
    raqr optimize [--objective OBJ] [--rounds N] [--grid param:lo:hi:step ...]
                  [--config <path>] [--set key=value ...]
    raqr validate [--skip-slow]

Exit codes: 0 success, 2 configuration error, 3 scenario error.
"""

from __future__ import annotations

import argparse
import sys

from . import config as cfg
from .constants import field_to_dbvm
from .errors import ConfigError, RaqrError, ScenarioError
from .frontend import default_rx_amplitude
from .optimizer import (
    OBJECTIVES,
    SweepSpec,
    alternate,
    joint_detuning_grid,
    reference_sweep_specs,
)
from .performance import h_sq_ps_from_amplitude
from .scenarios import SCENARIOS, Scenario, apply_overrides, emit_plotdata, run_scenario
from .validate import run_validation

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SCENARIO = 3


def _parse_sets(pairs: list[str]) -> dict[str, str]:
    overrides = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ConfigError(f"--set expects key=value, got {pair!r}")
        overrides[key.strip()] = value.strip()
    return overrides


def _config_text(path: str | None) -> str:
    if path is None:
        return cfg.table1_text()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _cmd_run(args) -> int:
    scenario = Scenario(name=args.scenario,
                        overrides=_parse_sets(args.set or []),
                        output_path=args.out, seed=args.seed, jobs=args.jobs)
    doc = run_scenario(scenario, config_text=_config_text(args.config))
    if args.plotdata:
        emit_plotdata(doc, args.plotdata, scenario.name)
    if not args.out:
        sys.stdout.write(doc)
    return EXIT_OK


def _parse_grid(spec: str, objective: str) -> SweepSpec:
    try:
        name, lo, hi, step = spec.split(":")
        return SweepSpec(name, float(lo), float(hi), float(step), objective)
    except ValueError as exc:
        raise ConfigError(f"--grid expects param:lo:hi:step, got {spec!r}") from exc


def _cmd_optimize(args) -> int:
    text = apply_overrides(_config_text(args.config),
                           _parse_sets(args.set or []))
    vapor, laser, chain = cfg.load_config(text)
    h_sq_ps = h_sq_ps_from_amplitude(default_rx_amplitude())
    specs = reference_sweep_specs(args.objective)
    if args.grid:
        by_name = {s.parameter: s for s in specs}
        for g in args.grid:
            parsed = _parse_grid(g, args.objective)
            by_name[parsed.parameter] = parsed
        specs = [by_name[s.parameter] for s in specs]
    trace = alternate(vapor, laser, chain, h_sq_ps, specs=specs,
                      rounds=args.rounds)
    for res in trace.steps:
        print(f"{res.parameter:8s} optimum {res.argmax:.6g} "
              f"-> {res.max_value_db:.3f} dB"
              + ("  [boundary]" if res.boundary_hit else "")
              + ("  [flat]" if res.flat else ""))
    final = trace.laser
    print(f"optimized: Uy = {final.lo_amplitude_Uy:.4g} V/m "
          f"({field_to_dbvm(final.lo_amplitude_Uy):.2f} dBV/m), "
          f"P0 = {final.probe_power_P0 * 1e6:.2f} uW, "
          f"detunings = ({final.detuning_p:.6g}, {final.detuning_c:.6g}, "
          f"{final.detuning_l:.6g}) rad/s")
    if args.joint:
        joint = joint_detuning_grid(vapor, final, chain, h_sq_ps,
                                    objective=args.objective)
        print(f"joint detuning optimum {joint.argmax} rad/s: "
              f"{joint.max_value_db:.3f} dB "
              f"(+{joint.improvement_over_best_independent_db:.3f} dB over "
              f"best independent, "
              f"+{joint.improvement_over_zero_detuning_db:.3f} dB over zero "
              f"detuning; {joint.points_evaluated} points)")
    return EXIT_OK


def _cmd_validate(args) -> int:
    for line in run_validation():
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raqr",
        description="Superheterodyne Rydberg atomic receiver simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario and emit CSV")
    p_run.add_argument("--scenario", required=True, choices=SCENARIOS)
    p_run.add_argument("--config", help="config file path (defaults to the "
                       "standard Cs receiver)")
    p_run.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key")
    p_run.add_argument("--out", help="CSV output path (stdout if omitted)")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--jobs", type=int, default=1)
    p_run.add_argument("--plotdata", metavar="DIR",
                       help="also emit per-curve .dat files")
    p_run.set_defaults(func=_cmd_run)

    p_opt = sub.add_parser("optimize", help="alternating parameter sweeps")
    p_opt.add_argument("--objective", default="SNR_PSL_BCOD",
                       choices=OBJECTIVES)
    p_opt.add_argument("--rounds", type=int, default=1)
    p_opt.add_argument("--grid", action="append", metavar="PARAM:LO:HI:STEP")
    p_opt.add_argument("--config")
    p_opt.add_argument("--set", action="append", metavar="KEY=VALUE")
    p_opt.add_argument("--joint", action="store_true",
                       help="follow with a joint 3-D detuning grid search")
    p_opt.set_defaults(func=_cmd_optimize)

    p_val = sub.add_parser("validate",
                           help="oracle equivalence and convention report")
    p_val.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ScenarioError, RaqrError) as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return EXIT_SCENARIO


if __name__ == "__main__":
    sys.exit(main())
