"""Command-line entry point: experiments, privacy curves, parameter solving.

All numeric output is printed with 12 significant digits so emitted files
are stable enough for golden-file comparison without being bit-fragile.
Timestamps appear only in metadata.json sidecars, never in CSV bodies.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import policy, privacy, sim
from .env import BanditInstance, model_from_dict

FMT = "%.12g"


def _fmt(x) -> str:
    return FMT % float(x)


def _fail(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def load_experiment(path: str) -> sim.ExperimentConfig:
    """Parse and validate an experiment config file (JSON)."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        _fail(f"cannot read config {path}: {e}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        _fail(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(doc, dict):
        _fail(f"{path}: top level must be an object")
    for key in ("instance", "horizon", "runs", "seed", "configs"):
        if key not in doc:
            _fail(f"{path}: missing required field '{key}'")
    inst = doc["instance"]
    if not isinstance(inst, dict) or "arms" not in inst:
        _fail(f"{path}: 'instance' must be an object with an 'arms' list")
    try:
        arms = [model_from_dict(a) for a in inst["arms"]]
        instance = BanditInstance(arms)
    except ValueError as e:
        _fail(f"{path}: instance.arms: {e}")
    configs = doc["configs"]
    if not isinstance(configs, list) or not configs:
        _fail(f"{path}: 'configs' must be a nonempty list (no configurations)")
    specs = []
    for i, c in enumerate(configs):
        if not isinstance(c, dict) or "label" not in c or "b" not in c:
            _fail(f"{path}: configs[{i}] needs at least 'label' and 'b'")
        has_c, has_eta = "c" in c, "eta" in c
        if has_c == has_eta:
            _fail(f"{path}: configs[{i}] ({c.get('label')}): give exactly one of 'c' / 'eta'")
        try:
            specs.append(
                sim.ConfigSpec(
                    label=str(c["label"]),
                    prepulls=int(c["b"]),
                    var_scale=float(c["c"]) if has_c else None,
                    eta_target=float(c["eta"]) if has_eta else None,
                )
            )
        except ValueError as e:
            _fail(f"{path}: configs[{i}]: {e}")
    try:
        return sim.ExperimentConfig(
            instance=instance,
            horizon=int(doc["horizon"]),
            runs=int(doc["runs"]),
            seed=int(doc["seed"]),
            configs=tuple(specs),
        )
    except (TypeError, ValueError) as e:
        _fail(f"{path}: {e}")


def _prepare_out(out_dir: str, names, force: bool) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name in names:
        target = out / name
        if target.exists() and not force:
            _fail(f"{target} exists; pass --force to overwrite")
    return out


def _write_metadata(out: Path, extra: dict) -> None:
    meta = {
        "created": datetime.now(timezone.utc).isoformat(),
        "invocation": sys.argv,
        "tolerances": {
            "epsilon_bisection_tol": privacy.EPSILON_BISECTION_TOL,
            "quad_window_sigmas": policy.QUAD_WINDOW_SIGMAS,
        },
        "adv_dp_delta_split": privacy.ADV_DP_DELTA_SPLIT,
        "seed_derivation": "SeedSequence([seed, config_index, run_index])",
    }
    meta.update(extra)
    (out / "metadata.json").write_text(json.dumps(meta, indent=2) + "\n")


def cmd_simulate(args) -> int:
    exp = load_experiment(args.config)
    if args.seed is not None:
        exp = sim.ExperimentConfig(
            exp.instance, exp.horizon, exp.runs, args.seed, exp.configs
        )
    if args.runs is not None:
        exp = sim.ExperimentConfig(
            exp.instance, exp.horizon, args.runs, exp.seed, exp.configs
        )
    out = _prepare_out(
        args.out, ["traces.csv", "mean_traces.csv", "summary.csv"], args.force
    )
    result = sim.run_experiment(exp, workers=args.workers)
    for label, reason in result.skipped:
        print(f"warning: skipped config {label!r}: {reason}", file=sys.stderr)
    if not result.configs:
        _fail("all configurations were infeasible")

    with open(out / "traces.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["config_label", "b", "c", "eta", "run_id", "t", "cum_empirical_regret"])
        for r in result.configs:
            head = [r.label, r.prepulls, _fmt(r.var_scale), _fmt(r.eta)]
            for run_id in range(len(r.run_curves)):
                for t, v in zip(r.sample_times, r.run_curves[run_id]):
                    w.writerow(head + [run_id, t, _fmt(v)])
    with open(out / "mean_traces.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["config_label", "b", "c", "eta", "t", "mean_cum_empirical_regret"])
        for r in result.configs:
            head = [r.label, r.prepulls, _fmt(r.var_scale), _fmt(r.eta)]
            for t, v in zip(r.sample_times, r.mean_curve):
                w.writerow(head + [t, _fmt(v)])
    with open(out / "summary.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(
            ["config_label", "b", "c", "eta", "mean_final_regret",
             "stderr_final_regret", "runtime_seconds"]
        )
        for r in result.configs:
            w.writerow(
                [r.label, r.prepulls, _fmt(r.var_scale), _fmt(r.eta),
                 _fmt(r.mean_final_regret), _fmt(r.stderr_final_regret),
                 _fmt(r.runtime_seconds)]
            )
    _write_metadata(
        out,
        {
            "command": "simulate",
            "config_file": args.config,
            "horizon": exp.horizon,
            "runs": exp.runs,
            "seed": exp.seed,
            "notes": {r.label: r.note for r in result.configs if r.note},
        },
    )

    print(f"{'label':<16} {'b':>7} {'c':>12} {'eta':>10} {'mean regret':>14} {'stderr':>10}")
    for r in result.configs:
        print(
            f"{r.label:<16} {r.prepulls:>7} {r.var_scale:>12.6g} {r.eta:>10.4g} "
            f"{r.mean_final_regret:>14.2f} {r.stderr_final_regret:>10.2f}"
        )
    print(f"wrote traces.csv, mean_traces.csv, summary.csv to {out}")
    return 0


def _gdp_eta(args) -> tuple[float, str]:
    path = args.gdp_path
    if path == "auto":
        path = "original" if (args.b == 0 and args.c == 1.0) else "modified"
    if path == "original":
        return privacy.gdp_total_original(args.T), "original"
    return privacy.gdp_total(args.T, args.b, args.c), "modified"


def cmd_privacy_curve(args) -> int:
    methods = ["gdp", "rdp", "advdp"] if args.method == "all" else [args.method]
    if not (0.0 < args.delta_min <= args.delta_max < 1.0):
        _fail("need 0 < --delta-min <= --delta-max < 1")
    deltas = np.geomspace(args.delta_min, args.delta_max, args.points)
    eta, gdp_path = _gdp_eta(args)

    curves = {}
    for method in methods:
        points = []
        for d in deltas:
            d = float(d)
            if method == "gdp":
                eps = privacy.gdp_to_epsilon(eta, d)
            elif method == "rdp":
                eps, _ = privacy.rdp_best_epsilon(args.T, d)
            else:
                try:
                    eps = privacy.adv_dp_epsilon(args.T, args.N, d)
                except ValueError:
                    eps = None  # infeasible at this point; marked, not fatal
            points.append({"delta": d, "epsilon": eps})
        curves[method] = points

    names = [f"privacy_curve_{m}.json" for m in methods] + ["privacy_curve.csv"]
    out = _prepare_out(args.out, names, args.force)
    common_meta = {
        "tolerances": {"epsilon_bisection_tol": privacy.EPSILON_BISECTION_TOL},
        "delta_split": privacy.ADV_DP_DELTA_SPLIT,
        "gdp_path": gdp_path,
    }
    for method in methods:
        doc = {
            "method": method,
            "T": args.T,
            "N": args.N,
            "b": args.b,
            "c": args.c,
            "points": curves[method],
            "metadata": common_meta,
        }
        (out / f"privacy_curve_{method}.json").write_text(json.dumps(doc, indent=2) + "\n")
    with open(out / "privacy_curve.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["method", "T", "N", "b", "c", "delta", "epsilon"])
        for method in methods:
            for p in curves[method]:
                eps = "" if p["epsilon"] is None else _fmt(p["epsilon"])
                w.writerow([method, args.T, args.N, args.b, _fmt(args.c), _fmt(p["delta"]), eps])
    print(f"wrote privacy curves for {', '.join(methods)} to {out}")
    return 0


def cmd_solve_params(args) -> int:
    rows = []
    for b in args.b:
        try:
            c = privacy.solve_variance_scale(args.eta, args.T, b, n_arms=args.N)
            rows.append((b, _fmt(c), "ok", ""))
        except privacy.InfeasibleHorizon:
            rows.append((b, "", "infeasible", "b * N >= T leaves no sampling steps"))
        except privacy.PrepullBudgetExceeded:
            rows.append((b, _fmt(1.0), "ok", "prepulls over-deliver the budget; c clamped to 1"))
    print(f"{'b':>10} {'c':>16} {'status':<12} note")
    for b, c, status, note in rows:
        print(f"{b:>10} {c:>16} {status:<12} {note}")
    if args.out:
        out = _prepare_out(args.out, ["solve_params.csv"], args.force)
        with open(out / "solve_params.csv", "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["eta", "T", "N", "b", "c", "status", "note"])
            for b, c, status, note in rows:
                w.writerow([_fmt(args.eta), args.T, args.N, b, c, status, note])
        print(f"wrote solve_params.csv to {out}")
    return 0


def cmd_rnm_demo(args) -> int:
    values = [float(v) for v in args.values.split(",")]
    sigmas = [float(s) for s in args.sigmas.split(",")]
    rng = np.random.default_rng(args.seed)
    counts = np.zeros(len(values), dtype=np.int64)
    try:
        for _ in range(args.trials):
            counts[policy.rnm_heterogeneous(values, sigmas, rng)] += 1
        analytic = policy.argmax_probabilities(values, sigmas)
    except ValueError as e:
        _fail(str(e))
    doc = {
        "values": values,
        "sigmas": sigmas,
        "trials": args.trials,
        "seed": args.seed,
        "counts": counts.tolist(),
        "frequencies": [float(c) / args.trials for c in counts],
        "analytic_probabilities": [float(p) for p in analytic],
    }
    print(json.dumps(doc, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpts",
        description="Thompson Sampling with tunable privacy: experiments and accounting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run an experiment config, write trace/summary CSVs")
    p.add_argument("--config", required=True, help="experiment config file (JSON)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=None, help="override the config's seed")
    p.add_argument("--runs", type=int, default=None, help="override the config's run count")
    p.add_argument("--workers", type=int, default=1, help="parallel run workers")
    p.add_argument("--force", action="store_true", help="overwrite existing output files")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("privacy-curve", help="epsilon(delta) curves for the accounting methods")
    p.add_argument("--method", choices=["gdp", "rdp", "advdp", "all"], required=True)
    p.add_argument("--T", type=int, required=True, help="number of steps")
    p.add_argument("--N", type=int, required=True, help="number of arms")
    p.add_argument("--b", type=int, default=0, help="prepulls per arm (GDP method)")
    p.add_argument("--c", type=float, default=1.0, help="variance scale (GDP method)")
    p.add_argument(
        "--gdp-path",
        choices=["auto", "original", "modified"],
        default="auto",
        help="GDP accounting path; auto picks original at b=0, c=1, else modified",
    )
    p.add_argument("--delta-min", type=float, required=True)
    p.add_argument("--delta-max", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_privacy_curve)

    p = sub.add_parser("solve-params", help="minimal variance scale for a GDP budget")
    p.add_argument("--eta", type=float, required=True, help="target GDP parameter")
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--b", type=int, nargs="+", required=True, help="prepull counts to tabulate")
    p.add_argument("--out", default=None, help="optional output directory for the CSV")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_solve_params)

    p = sub.add_parser("rnm-demo", help="Monte-Carlo demo of the noisy-argmax primitive")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--sigmas", required=True, help="comma-separated noise scales")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rnm_demo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
