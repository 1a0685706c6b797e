"""Command-line front end.

Subcommands: simulate, ab, size, sweep, tune, metrics.  All outputs go to
--out (default: current directory).  Exit codes: 0 success, 2 configuration
or parse error, 3 diverged simulation.
"""

import argparse
import sys
from pathlib import Path

from . import config as cfgmod
from .aero import sizing_report
from .engine import Trace, run_ab_pair, run_scenario
from .errors import (ConfigError, DivergedError, NoResponseError,
                     PitchPilotError)
from .metrics import band_for_step, devaud_report, noise_envelope, step_metrics
from .tuner import CostSpec, SweepSpec, sweep, tune_pid

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3

PLOT_TEMPLATE = """\
#!/usr/bin/env python3
# Plot the pitch trace with the settling tolerance band.
import csv

import matplotlib.pyplot as plt

t, omega, cmd = [], [], []
with open({csv_name!r}) as fh:
    for row in csv.DictReader(fh):
        t.append(float(row["t"]))
        omega.append(float(row["omega"]))
        cmd.append(float(row["cmd"]))

target = cmd[-1]
half = {half_width!r}
plt.plot(t, omega, label="pitch")
plt.plot(t, cmd, "k:", label="command")
plt.axhline(target + half, color="r", ls="--", label="Upper 1")
plt.axhline(target - half, color="r", ls="--", label="Lower 2")
plt.xlabel("time [s]")
plt.ylabel("pitch [deg]")
plt.legend()
plt.savefig({png_name!r}, dpi=150)
print("wrote", {png_name!r})
"""


def _add_common(parser):
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--seed", type=int, help="override scenario seed")
    parser.add_argument("--set", dest="sets", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="dotted-path config override (repeatable)")
    parser.add_argument("--no-noise", action="store_true",
                        help="disable measurement noise")
    parser.add_argument("--duration", type=float, help="override duration (s)")
    parser.add_argument("--dt", type=float, help="override step size (s)")


def _load(args):
    cfg = cfgmod.load_config(args.config)
    for item in args.sets:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got '{item}'")
        key, _, raw = item.partition("=")
        cfgmod.apply_override(cfg, key.strip(), cfgmod.parse_value(raw.strip()))
    if args.seed is not None:
        cfg["scenario"]["seed"] = args.seed
    if args.duration is not None:
        cfg["scenario"]["duration"] = args.duration
    if args.dt is not None:
        cfg["scenario"]["dt"] = args.dt
    if args.no_noise:
        cfg["loop"]["noise"]["enabled"] = False
    return cfg


def _outdir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _metrics_text(m, label=""):
    head = f"Step metrics {label}".rstrip() + "\n"
    t_s = f"{m.t_s * 1000:.1f} ms" if m.t_s is not None else "never"
    body = (
        f"  rise time t_r      = {m.t_r * 1000:.1f} ms\n"
        f"  peak time t_p      = {m.t_p * 1000:.1f} ms\n"
        f"  settling time t_s  = {t_s}\n"
        f"  peak overshoot M_p = {m.m_p:.3f} deg\n"
        f"  percent overshoot  = {m.pct_overshoot:.1f} %\n"
    )
    return head + body + devaud_report(m) + "\n"


def cmd_simulate(args):
    cfg = _load(args)
    out = _outdir(args)
    loop = cfgmod.loop_config_from(cfg)
    scenario = cfgmod.scenario_from(cfg)
    trace = run_scenario(loop, scenario)
    trace.to_csv(out / "trace.csv")
    band = band_for_step(scenario.initial, scenario.command, 0.05)
    try:
        m = step_metrics(trace, scenario.initial, scenario.command, band)
        text = _metrics_text(m)
    except NoResponseError:
        text = "Step metrics\n  (trace never crossed the 10% threshold)\n"
    (out / "metrics.txt").write_text(text, encoding="utf-8")
    (out / "plot_trace.py").write_text(
        PLOT_TEMPLATE.format(csv_name="trace.csv", half_width=band.half_width,
                             png_name="trace.png"),
        encoding="utf-8")
    print(text, end="")
    print(f"wrote {out / 'trace.csv'}")
    return EXIT_OK


def cmd_ab(args):
    cfg = _load(args)
    out = _outdir(args)
    loop = cfgmod.loop_config_from(cfg)
    scenario = cfgmod.scenario_from(cfg)
    trace_a, trace_b = run_ab_pair(loop, scenario)
    trace_a.to_csv(out / "trace_a.csv")
    trace_b.to_csv(out / "trace_b.csv")
    band = band_for_step(scenario.initial, scenario.command, 0.05)
    m_a = step_metrics(trace_a, scenario.initial, scenario.command, band)
    m_b = step_metrics(trace_b, scenario.initial, scenario.command, band)

    def improvement(a, b):
        return 100.0 * (a - b) / a if a else float("nan")

    lines = [_metrics_text(m_a, "(A: no compensator)"),
             _metrics_text(m_b, "(B: with compensator)"),
             "Improvement of B over A:",
             f"  rise time:     {improvement(m_a.t_r, m_b.t_r):.1f} %"]
    if m_a.t_s is not None and m_b.t_s is not None:
        lines.append(f"  settling time: {improvement(m_a.t_s, m_b.t_s):.1f} %")
    lines.append(f"  peak overshoot: {improvement(m_a.m_p, m_b.m_p):.1f} %")
    if loop.noise.enabled:
        env_a = noise_envelope(trace_a, scenario.duration / 2)
        env_b = noise_envelope(trace_b, scenario.duration / 2)
        lines.append(
            f"Noise envelope A: max {env_a[0]:.3f} min {env_a[1]:.3f} deg")
        lines.append(
            f"Noise envelope B: max {env_b[0]:.3f} min {env_b[1]:.3f} deg")
    report = "\n".join(lines) + "\n"
    (out / "ab_report.txt").write_text(report, encoding="utf-8")
    print(report, end="")
    return EXIT_OK


def cmd_size(args):
    cfg = _load(args)
    out = _outdir(args)
    report = sizing_report(cfgmod.missile_from(cfg),
                           cfgmod.derivatives_from(cfg),
                           cfgmod.tail_sizing_from(cfg))
    (out / "sizing.txt").write_text(report, encoding="utf-8")
    print(report, end="")
    return EXIT_OK


def _parse_values(text):
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" in chunk:
            lo, hi = chunk.split(":", 1)
            values.extend(float(v) for v in range(int(lo), int(hi) + 1))
        else:
            values.append(float(chunk))
    if not values:
        raise ConfigError("empty sweep value list")
    return tuple(values)


def cmd_sweep(args):
    cfg = _load(args)
    out = _outdir(args)
    spec = SweepSpec(path=args.param, values=_parse_values(args.values),
                     scenario=cfgmod.scenario_from(cfg),
                     config=cfgmod.loop_config_from(cfg))
    rows = sweep(spec)
    lines = ["value,t_r,t_p,t_s,m_p,cost"]
    for value, m, c in rows:
        if m is None:
            lines.append(f"{value!r},,,,,{c!r}")
        else:
            t_s = repr(m.t_s) if m.t_s is not None else ""
            lines.append(f"{value!r},{m.t_r!r},{m.t_p!r},{t_s},{m.m_p!r},{c!r}")
    (out / "sweep.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    winner = min(rows, key=lambda row: row[2])
    print(f"swept {spec.path} over {len(rows)} values;"
          f" best {spec.path} = {winner[0]} (cost {winner[2]:.4f})")
    return EXIT_OK


def cmd_tune(args):
    cfg = _load(args)
    out = _outdir(args)
    loop = cfgmod.loop_config_from(cfg)
    scenario = cfgmod.scenario_from(cfg)
    gains, history = tune_pid(loop, scenario, CostSpec(), args.max_evals)
    report = (
        f"tuned gains: k_p={gains.k_p:.4f} k_i={gains.k_i:.4f}"
        f" k_d={gains.k_d:.4f}\n"
        f"evaluations: {len(history)}\n"
        f"cost: start {history[0]:.4f} -> best {history[-1]:.4f}\n")
    (out / "tuned_gains.txt").write_text(report, encoding="utf-8")
    print(report, end="")
    return EXIT_OK


def cmd_metrics(args):
    trace = Trace.from_csv(args.trace)
    start = args.start if args.start is not None else trace.omega[0]
    target = args.target if args.target is not None else trace.cmd[-1]
    band = band_for_step(start, target, args.band_fraction)
    m = step_metrics(trace, start, target, band)
    print(_metrics_text(m), end="")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pitchpilot",
        description="Missile pitch-autopilot simulation and sizing toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one scenario")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ab", help="run the compensator A/B comparison")
    _add_common(p)
    p.set_defaults(func=cmd_ab)

    p = sub.add_parser("size", help="conceptual sizing report")
    _add_common(p)
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("sweep", help="sweep one loop parameter")
    _add_common(p)
    p.add_argument("--param", default="actuator.gain",
                   help="dotted parameter path (default actuator.gain)")
    p.add_argument("--values", default="1:15",
                   help="comma list and/or lo:hi ranges (default 1:15)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("tune", help="tune PID gains")
    _add_common(p)
    p.add_argument("--max-evals", type=int, default=150)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("metrics", help="recompute metrics from a trace CSV")
    p.add_argument("--trace", required=True, help="trace CSV path")
    p.add_argument("--start", type=float, help="step start (default: first sample)")
    p.add_argument("--target", type=float, help="step target (default: last command)")
    p.add_argument("--band-fraction", type=float, default=0.05)
    p.set_defaults(func=cmd_metrics)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DivergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (ConfigError, PitchPilotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
