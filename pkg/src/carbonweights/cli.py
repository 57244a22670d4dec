"""Command-line front end.

Every command prints a short human-readable summary; with ``--out DIR`` it
also writes CSV files there. Exit status: 0 success, 2 bad arguments or
input files, 3 solver failure, 4 a proposition check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import io as econ_io
from .dynamic import (
    check_proposition4,
    dynamic_welfare,
    random_dynamic_economy,
    solve_dynamic_negishi,
    solve_dynamic_utilitarian_uniform,
)
from .errors import CarbonWeightsError
from .optimizer import OptimizerConfig
from .static import (
    DEFAULT_BAND,
    FAIL,
    check_static_propositions,
    random_static_economy,
    solve_arbitrary_weights_static,
    solve_negishi_static,
    solve_preferred_static,
    solve_utilitarian_differentiated_static,
    solve_utilitarian_uniform_static,
)
from .tables import cells_to_csv, format_panels, table1_cells, table2_cells

EXIT_OK, EXIT_PARSE, EXIT_SOLVER, EXIT_PROPOSITION = 0, 2, 3, 4

STATIC_REGIMES = {
    "negishi": solve_negishi_static,
    "uniform": solve_utilitarian_uniform_static,
    "differentiated": solve_utilitarian_differentiated_static,
    "preferred-north": lambda e: solve_preferred_static(e, "N"),
    "preferred-south": lambda e: solve_preferred_static(e, "S"),
}
DYNAMIC_REGIMES = {"negishi": solve_dynamic_negishi, "uniform": solve_dynamic_utilitarian_uniform}
IAM_REGIMES = ("negishi", "uniform", "differentiated")

SOLUTION_COLUMNS = [
    "regime", "tau_n", "tau_s", "a_n", "a_s", "x_n", "x_s",
    "weight_n", "weight_s", "iterations", "residual", "richer_north", "multiple_roots",
]
STATIC_SWEEP_COLUMNS = [
    "seed", "index", "tau_negishi", "tau_uniform", "tau_diff_n", "tau_diff_s", "tau_pref_n", "tau_pref_s",
    "damage_ratio_sn", "cost_ratio_ns", "benefit_cost_n", "benefit_cost_s", "abatement_discriminant",
    "abatement_diff", "abatement_negishi", "uniform_vs_negishi", "benefit_cost_split", "differentiated_bracket", "abatement_vs_negishi", "preferred_bracket", "preferred_direction", "error",
]
DYNAMIC_SWEEP_COLUMNS = ["seed", "index", "tau_negishi", "tau_uniform", "left", "right", "growth_weighting", "error"]
PRICE_COLUMNS = ["regime", "region", "period", "year", "carbon_price_usd_per_tco2", "control_rate"]
IAM_SUMMARY_COLUMNS = [
    "regime", "welfare_utilitarian", "welfare_negishi", "peak_temperature_c", "cumulative_emissions_gtco2",
    "global_wecc_vs_negishi_busd", "evals", "converged",
]
WECC_COLUMNS = ["regime", "baseline", "region", "wecc_busd", "x_cf_kusd", "x0_kusd", "out_of_range"]
PULSE_COLUMNS = ["regime", "region", "pulse_year", "pulse_gtco2", "marginal_damage_usd_per_tco2"]
PREFERRED_COLUMNS = ["region", "period", "year", "preferred_price_usd_per_tco2"]


class InputError(Exception):
    """Bad scenario file or override; mapped to the parse-error exit status."""


# ---------------------------------------------------------------------------
# helpers


def _parse_overrides(items) -> dict[str, float]:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise InputError(f"--set {key}: value {value!r} is not a number") from None
    return out


def _regimes(arg, allowed, default):
    if arg is None:
        return list(default)
    names = [r.strip() for r in arg.split(",") if r.strip()]
    bad = [r for r in names if r not in allowed]
    if bad:
        raise InputError(f"unknown regime(s) {bad}; choose from {sorted(allowed)}")
    return names


def _write_csv(out_dir, name, columns, rows):
    text = io.StringIO()
    writer = csv.writer(text, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    if out_dir is not None:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_text(text.getvalue())
    return text.getvalue()


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return v


def _economy_dict(args, default_fn, top_keys, region_keys):
    try:
        d = econ_io.load_json(args.scenario) if args.scenario else default_fn()
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read scenario: {exc}") from None
    overrides = _parse_overrides(args.set)
    if args.eta is not None:
        overrides["eta"] = args.eta
    if getattr(args, "rho", None) is not None and "rho" in top_keys:
        overrides["rho"] = args.rho
    try:
        return econ_io.apply_dotted(d, overrides, top_keys, region_keys)
    except KeyError as exc:
        raise InputError(str(exc)) from None


def _solution_row(name, s):
    return [
        name, s.tau_n, s.tau_s, s.a_n, s.a_s, s.x_n, s.x_s, s.weights[0], s.weights[1],
        s.iterations, s.residual, s.richer_north, bool(s.diagnostics.get("multiple_roots", False)),
    ]


# ---------------------------------------------------------------------------
# commands


def cmd_table1(args):
    cells = table1_cells()
    if args.eta is not None:
        cells = [c for c in cells if c.eta == args.eta]
    csv_text = cells_to_csv(cells)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "table1.csv").write_text(csv_text)
    print(format_panels(cells))
    return EXIT_OK


def cmd_table2(args):
    cells = table2_cells()
    if args.eta is not None:
        cells = [c for c in cells if c.eta == args.eta]
    csv_text = cells_to_csv(cells)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "table2.csv").write_text(csv_text)
    print(format_panels(cells))
    return EXIT_OK


def _weights_arg(args):
    if not args.weights:
        return None
    try:
        parts = [float(v) for v in args.weights.split(",")]
    except ValueError:
        raise InputError("--weights expects two numbers, e.g. 1,0.5") from None
    if len(parts) != 2:
        raise InputError("--weights expects two numbers, e.g. 1,0.5")
    return tuple(parts)


def cmd_static_solve(args):
    try:
        econ = econ_io.static_from_dict(
            _economy_dict(args, econ_io.default_static, econ_io.STATIC_TOP_KEYS, econ_io.STATIC_REGION_KEYS)
        )
    except (ValueError, KeyError) as exc:
        raise InputError(f"invalid economy: {exc}") from None
    names = _regimes(args.regimes, STATIC_REGIMES, STATIC_REGIMES)
    weights = _weights_arg(args)
    rows = [_solution_row(n, STATIC_REGIMES[n](econ)) for n in names]
    if weights is not None:
        for uniform, label in ((True, "arbitrary-uniform"), (False, "arbitrary-differentiated")):
            rows.append(_solution_row(label, solve_arbitrary_weights_static(econ, weights, uniform)))
    _write_csv(args.out, "static_solutions.csv", SOLUTION_COLUMNS, rows)
    for r in rows:
        print(f"{r[0]:<26} tau_N={r[1]:.6g}  tau_S={r[2]:.6g}  A={r[3] + r[4]:.6g}")
    return EXIT_OK


def cmd_dynamic_solve(args):
    try:
        econ = econ_io.dynamic_from_dict(
            _economy_dict(args, econ_io.default_dynamic, econ_io.DYNAMIC_TOP_KEYS, econ_io.DYNAMIC_REGION_KEYS)
        )
    except (ValueError, KeyError) as exc:
        raise InputError(f"invalid economy: {exc}") from None
    names = _regimes(args.regimes, DYNAMIC_REGIMES, DYNAMIC_REGIMES)
    rows = [_solution_row(n, DYNAMIC_REGIMES[n](econ)) for n in names]
    _write_csv(args.out, "dynamic_solutions.csv", SOLUTION_COLUMNS, rows)
    for r in rows:
        print(f"{r[0]:<10} tau={r[1]:.6g}  A={r[3] + r[4]:.6g}")
    report = check_proposition4(econ, band=args.band)
    print(f"utilitarian/Negishi ratio {report.utilitarian.tau / report.negishi.tau:.4f}  "
          f"weighting test {report.left:.6g} vs {report.right:.6g}: {report.verdict}")
    return EXIT_OK


def cmd_props_sweep(args):
    count, seed, band = args.count, args.seed, args.band
    if count < 1:
        raise InputError("--count must be >= 1")
    static_rows, dynamic_rows = [], []
    tallies = {"static": {}, "dynamic": {}}
    solver_failures = 0
    for i in range(count):
        rng = np.random.default_rng([seed, i])
        try:
            rep = check_static_propositions(random_static_economy(rng), band=band)
        except (CarbonWeightsError, RuntimeError) as exc:
            solver_failures += 1
            static_rows.append([seed, i] + [""] * 19 + [type(exc).__name__])
            continue
        p, d = rep.prices, rep.discriminants
        static_rows.append(
            [seed, i, *p.values(), *(d[k] for k in STATIC_SWEEP_COLUMNS[8:15]),
             *(rep.verdicts[k] for k in STATIC_SWEEP_COLUMNS[15:21]), ""]
        )
        for k, v in rep.verdicts.items():
            tallies["static"].setdefault(k, {}).setdefault(v, 0)
            tallies["static"][k][v] += 1
    for i in range(count):
        rng = np.random.default_rng([seed, 1_000_000 + i])
        try:
            rep = check_proposition4(random_dynamic_economy(rng), band=band)
        except (CarbonWeightsError, RuntimeError) as exc:
            solver_failures += 1
            dynamic_rows.append([seed, i, "", "", "", "", "", type(exc).__name__])
            continue
        dynamic_rows.append([seed, i, rep.negishi.tau, rep.utilitarian.tau, rep.left, rep.right, rep.verdict, ""])
        tallies["dynamic"].setdefault("growth_weighting", {}).setdefault(rep.verdict, 0)
        tallies["dynamic"]["growth_weighting"][rep.verdict] += 1

    _write_csv(args.out, "props_static.csv", STATIC_SWEEP_COLUMNS, static_rows)
    _write_csv(args.out, "props_dynamic.csv", DYNAMIC_SWEEP_COLUMNS, dynamic_rows)
    failures = 0
    summary_rows = []
    for model, checks in tallies.items():
        for name, counts in checks.items():
            n = sum(counts.values())
            fails = counts.get(FAIL, 0)
            failures += fails
            indet = counts.get("indeterminate", 0)
            summary_rows.append([model, name, counts.get("pass", 0), fails, indet, counts.get("coincide", 0), indet / n])
            print(f"{model:<8}{name:<8} pass={counts.get('pass', 0):<5} fail={fails:<3} "
                  f"indeterminate={indet:<5} ({indet / n:.1%})")
    _write_csv(args.out, "props_summary.csv",
               ["model", "check", "pass", "fail", "indeterminate", "coincide", "indeterminate_fraction"],
               summary_rows)
    print(f"solver failures: {solver_failures}")
    if failures:
        return EXIT_PROPOSITION
    return EXIT_SOLVER if solver_failures else EXIT_OK


# -- IAM commands ------------------------------------------------------------


def _iam_scenario(args):
    from .iam import apply_overrides, bundled_scenario, load_scenario

    try:
        scenario = load_scenario(args.scenario) if args.scenario else bundled_scenario()
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        raise InputError(f"cannot read scenario: {exc}") from None
    overrides = _parse_overrides(args.set)
    if args.eta is not None:
        overrides["eta"] = args.eta
    if args.rho is not None:
        overrides["rho"] = args.rho
    try:
        return apply_overrides(scenario, overrides)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _iam_config(args):
    return OptimizerConfig(max_evals=args.max_evals, xtol=1e-7, ftol=1e-12, restarts=args.restarts, seed=args.seed)


def _run_iam_regimes(scenario, regimes, cfg):
    """Optimize the requested regimes; the differentiated run starts from the uniform optimum."""
    from .iam import NegishiWeighted, PolicyMode, PolicyPath, Utilitarian, optimize_policy

    outcomes, errors = {}, {}
    order = [r for r in IAM_REGIMES if r in regimes]
    if "differentiated" in order and "uniform" not in order:
        order.insert(order.index("differentiated"), "uniform")
    for name in order:
        try:
            if name == "negishi":
                outcomes[name] = optimize_policy(scenario, NegishiWeighted(), PolicyMode.UNIFORM, cfg)
            elif name == "uniform":
                outcomes[name] = optimize_policy(scenario, Utilitarian(), PolicyMode.UNIFORM, cfg)
            else:
                warm = outcomes.get("uniform")
                x0 = PolicyPath(PolicyMode.DIFFERENTIATED, warm.trajectory.mu) if warm else None
                outcomes[name] = optimize_policy(scenario, Utilitarian(), PolicyMode.DIFFERENTIATED, cfg, x0=x0)
        except CarbonWeightsError as exc:
            errors[name] = exc
    return {k: v for k, v in outcomes.items() if k in regimes or k == "negishi"}, errors


def _price_rows(name, traj):
    for i, region in enumerate(traj.names):
        for t, year in enumerate(traj.years):
            yield [name, region, t, int(year), traj.price[i, t], traj.mu[i, t]]


def cmd_iam_run(args):
    from .iam import write_trajectory_csv

    scenario = _iam_scenario(args)
    regimes = _regimes(args.regimes, IAM_REGIMES, ("uniform",))
    outcomes, errors = _run_iam_regimes(scenario, regimes, _iam_config(args))
    rows = []
    for name in regimes:
        if name not in outcomes:
            continue
        out = outcomes[name]
        traj = out.trajectory
        rows.extend(_price_rows(name, traj))
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            write_trajectory_csv(traj, Path(args.out) / f"trajectory_{name}.csv", {"regime": name})
        print(f"{name:<15} first-period price {traj.price[:, 0].max():8.3f} USD/tCO2  "
              f"peak T {traj.temperature.max():.3f} C  cumulative {traj.cumulative_emissions[-1]:.1f} GtCO2")
    _write_csv(args.out, "prices.csv", PRICE_COLUMNS, rows)
    for name, exc in errors.items():
        print(f"{name}: optimizer failed: {exc}", file=sys.stderr)
    return EXIT_SOLVER if errors else EXIT_OK


def cmd_iam_compare(args):
    from .iam import (
        NegishiWeighted,
        Utilitarian,
        evaluate_swf,
        marginal_damage_pulse,
        welfare_equivalent_consumption_change,
        write_trajectory_csv,
    )

    scenario = _iam_scenario(args)
    regimes = _regimes(args.regimes, IAM_REGIMES, IAM_REGIMES)
    outcomes, errors = _run_iam_regimes(scenario, regimes + ["negishi"], _iam_config(args))
    neg = outcomes.get("negishi")
    summary, prices, wecc_rows, pulse_rows = [], [], [], []
    for name in [r for r in IAM_REGIMES if r in outcomes and r in regimes]:
        out = outcomes[name]
        traj = out.trajectory
        w_u = evaluate_swf(traj, Utilitarian())
        w_n = evaluate_swf(traj, NegishiWeighted(neg.weights)) if neg else math.nan
        g = math.nan
        if neg is not None:
            glob = welfare_equivalent_consumption_change(traj, neg.trajectory, scope="global")
            g = float(glob.delta[0])
            reg = welfare_equivalent_consumption_change(traj, neg.trajectory, scope="region")
            for i, region in enumerate(traj.names):
                wecc_rows.append([name, "negishi", region, reg.delta[i], reg.x_cf[i], reg.x0[i], int(reg.out_of_range[i])])
        summary.append([name, w_u, w_n, traj.temperature.max(), traj.cumulative_emissions[-1], g,
                        out.result.evals, out.result.converged])
        prices.extend(_price_rows(name, traj))
        pv = marginal_damage_pulse(scenario, out.policy, args.pulse_period, args.pulse_size)
        year = int(scenario.years[args.pulse_period])
        for i, region in enumerate(scenario.names):
            pulse_rows.append([name, region, year, args.pulse_size, pv[i]])
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            write_trajectory_csv(traj, Path(args.out) / f"trajectory_{name}.csv", {"regime": name})
    _write_csv(args.out, "summary.csv", IAM_SUMMARY_COLUMNS, summary)
    _write_csv(args.out, "prices.csv", PRICE_COLUMNS, prices)
    _write_csv(args.out, "wecc.csv", WECC_COLUMNS, wecc_rows)
    _write_csv(args.out, "pulse.csv", PULSE_COLUMNS, pulse_rows)
    print(f"{'regime':<15}{'W_utilitarian':>16}{'peak T':>9}{'cum. E':>10}{'WECC vs Negishi':>17}")
    for row in summary:
        print(f"{row[0]:<15}{row[1]:>16.6f}{row[3]:>9.3f}{row[4]:>10.1f}{row[5]:>17.4f}")
    for name, exc in errors.items():
        print(f"{name}: optimizer failed: {exc}", file=sys.stderr)
    return EXIT_SOLVER if errors else EXIT_OK


def cmd_preferred_prices(args):
    from .iam import preferred_uniform_prices

    scenario = _iam_scenario(args)
    try:
        outcomes = preferred_uniform_prices(scenario, _iam_config(args))
    except CarbonWeightsError as exc:
        print(f"optimizer failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    rows = []
    for name, out in outcomes.items():
        for t, year in enumerate(scenario.years):
            rows.append([name, t, int(year), out.policy.values[t]])
        print(f"{name:<10} preferred uniform price, first period: {out.policy.values[0]:8.3f} USD/tCO2")
    _write_csv(args.out, "preferred_prices.csv", PREFERRED_COLUMNS, rows)
    return EXIT_OK


def cmd_wecc(args):
    from .iam import welfare_equivalent_consumption_change

    scenario = _iam_scenario(args)
    pair = _regimes(args.regimes, IAM_REGIMES, ("uniform", "negishi"))
    if len(pair) != 2:
        raise InputError("wecc needs exactly two regimes: --regimes target,baseline")
    outcomes, errors = _run_iam_regimes(scenario, pair, _iam_config(args))
    if errors:
        for name, exc in errors.items():
            print(f"{name}: optimizer failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    a, b = outcomes[pair[0]].trajectory, outcomes[pair[1]].trajectory
    rows = []
    reg = welfare_equivalent_consumption_change(a, b, scope="region")
    for i, region in enumerate(a.names):
        rows.append([pair[0], pair[1], region, reg.delta[i], reg.x_cf[i], reg.x0[i], int(reg.out_of_range[i])])
    glob = welfare_equivalent_consumption_change(a, b, scope="global")
    rows.append([pair[0], pair[1], "global", glob.delta[0], glob.x_cf[0], glob.x0[0], int(glob.out_of_range[0])])
    _write_csv(args.out, "wecc.csv", WECC_COLUMNS, rows)
    for r in rows:
        print(f"{r[2]:<10} {r[3]:>14.4f} BUSD")
    return EXIT_OK


def cmd_pulse(args):
    from .iam import marginal_damage_pulse

    scenario = _iam_scenario(args)
    names = _regimes(args.regimes, IAM_REGIMES, ("negishi",))
    outcomes, errors = _run_iam_regimes(scenario, names, _iam_config(args))
    rows = []
    year = int(scenario.years[args.pulse_period])
    for name in names:
        if name not in outcomes:
            continue
        pv = marginal_damage_pulse(scenario, outcomes[name].policy, args.pulse_period, args.pulse_size)
        for i, region in enumerate(scenario.names):
            rows.append([name, region, year, args.pulse_size, pv[i]])
            print(f"{name:<15}{region:<10}{pv[i]:>12.4f} USD/tCO2")
    _write_csv(args.out, "pulse.csv", PULSE_COLUMNS, rows)
    for name, exc in errors.items():
        print(f"{name}: optimizer failed: {exc}", file=sys.stderr)
    return EXIT_SOLVER if errors else EXIT_OK


COMMANDS = {
    "table1": cmd_table1,
    "table2": cmd_table2,
    "static-solve": cmd_static_solve,
    "dynamic-solve": cmd_dynamic_solve,
    "props-sweep": cmd_props_sweep,
    "iam-run": cmd_iam_run,
    "iam-compare": cmd_iam_compare,
    "preferred-prices": cmd_preferred_prices,
    "wecc": cmd_wecc,
    "pulse": cmd_pulse,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carbonweights", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--scenario", help="JSON scenario file (defaults to the bundled one)")
    parser.add_argument("--out", help="directory for CSV output")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--eta", type=float, help="elasticity of marginal utility")
    parser.add_argument("--rho", type=float, help="pure rate of time preference")
    parser.add_argument("--count", type=int, default=1000, help="instances per model for props-sweep")
    parser.add_argument("--band", type=float, default=DEFAULT_BAND, help="relative tie band")
    parser.add_argument("--regimes", help="comma-separated regime list")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE", help="dotted-key override (repeatable)")
    parser.add_argument("--weights", help="static-solve: extra arbitrary-weight regimes, e.g. 1,0.5")
    parser.add_argument("--pulse-period", type=int, default=2)
    parser.add_argument("--pulse-size", type=float, default=1.0, help="GtCO2")
    parser.add_argument("--max-evals", type=int, default=60_000, help="optimizer budget per run")
    parser.add_argument("--restarts", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CarbonWeightsError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
