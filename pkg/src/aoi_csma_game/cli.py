"""Command-line front end: analyze scenarios, print the reference table,
sweep one node's starting age, and validate analytics by simulation.

Exit codes: 0 on success, 1 on validation failures (bad scenario file,
violated model invariant, unusable request), 2 when the reference-table
self-check finds a mismatch.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .equilibrium import (
    check_weak_dominance,
    enumerate_pure_nash,
    msne_closed_form,
)
from .game import (
    Action,
    GameInstance,
    StrategyProfile,
    age_pmf,
    collision_probability,
    expected_age_after,
    idle_probability,
    success_probability_of,
)
from .reference import GOLDEN_TAU_TOLERANCE, REFERENCE_ROWS
from .scenario import Scenario, ScenarioError, load_scenario
from .simulate import run_monte_carlo, simulate_age_trajectory


def _num(x: float) -> str:
    """Full-precision decimal for CSV cells (12 significant digits)."""
    return format(x, ".12g")


def _four(x: float) -> str:
    return format(x, ".4f")


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _profile_string(actions: tuple[Action, ...]) -> str:
    return "".join(a.value for a in actions)


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _raw_success_probabilities(taus: list[float]) -> list[float]:
    """Lone-transmitter product formula applied verbatim to raw values."""
    out = []
    for i, tau in enumerate(taus):
        p = tau
        for j, other in enumerate(taus):
            if j != i:
                p *= 1.0 - other
        out.append(p)
    return out


def cmd_analyze(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    game = scenario.game()
    lengths = game.slot_lengths
    print(f"scenario: {args.scenario}")
    print(f"nodes: {game.n}")
    print(
        f"slot lengths: sigma_idle={lengths.sigma_idle} "
        f"sigma_success={lengths.sigma_success} sigma_collision={lengths.sigma_collision}"
    )
    relation = "<=" if lengths.short_collision else ">"
    print(f"regime: {lengths.regime()} (sigma_collision {relation} sigma_success)")
    print("initial ages: " + ", ".join(_four(a) for a in game.initial_ages))
    print()
    print(f"weak dominance (exhaustive over the {2 ** (game.n - 1)} pure opponent profiles):")
    for i in range(game.n):
        parts = []
        for action in (Action.TRANSMIT, Action.IDLE):
            report = check_weak_dominance(game, i, action)
            parts.append(
                f"{action.name.lower()}: weakly dominant={_yesno(report.weakly_dominant)}"
                f" (strictly better somewhere={_yesno(report.strictly_better_somewhere)})"
            )
        print(f"  node {i + 1}: " + " | ".join(parts))
    print()
    result = msne_closed_form(game)
    print("mixed equilibrium (closed form):")
    print("  raw taus: " + ", ".join(_four(t) for t in result.raw_taus))
    print(
        "  interior condition per node: "
        + ", ".join(_yesno(f) for f in result.feasible_per_node)
    )
    print(f"  feasible: {_yesno(result.feasible)}")
    print(
        "  indifference residuals: "
        + ", ".join(format(r, ".3e") for r in result.indifference_residuals)
    )
    print()
    nash = enumerate_pure_nash(game)
    print(
        f"pure Nash equilibria ({len(nash)}): "
        + ", ".join(_profile_string(p) for p in nash)
    )
    return 0


def check_reference_rows() -> list[str]:
    """Compare freshly computed values against the bundled goldens.

    Returns human-readable mismatch descriptions; empty means all good.
    """
    problems = []
    for row in REFERENCE_ROWS:
        game = row.game()
        result = msne_closed_form(game)
        for i, (got, want) in enumerate(zip(result.raw_taus, row.golden_taus)):
            if abs(got - want) > GOLDEN_TAU_TOLERANCE:
                problems.append(
                    f"row {row.label}: tau_{i + 1} = {got:.6f}, expected "
                    f"{want:.4f} within {GOLDEN_TAU_TOLERANCE}"
                )
        if result.feasible != row.golden_feasible:
            problems.append(
                f"row {row.label}: feasible = {result.feasible}, "
                f"expected {row.golden_feasible}"
            )
        nash = frozenset(enumerate_pure_nash(game).as_strings())
        if nash != row.golden_pure_nash:
            problems.append(
                f"row {row.label}: pure Nash set {sorted(nash)}, "
                f"expected {sorted(row.golden_pure_nash)}"
            )
    return problems


def cmd_table1(args: argparse.Namespace) -> int:
    header = (
        f"{'row':<4} {'sigma_c':>8} {'ages':<22} {'raw taus':<28} "
        f"{'feasible':<9} pure Nash equilibria"
    )
    print(header)
    print("-" * len(header))
    for row in REFERENCE_ROWS:
        game = row.game()
        result = msne_closed_form(game)
        taus = ", ".join(_four(t) for t in result.raw_taus)
        ages = ", ".join(_four(a) for a in row.initial_ages)
        nash = ", ".join(enumerate_pure_nash(game).as_strings())
        print(
            f"{row.label:<4} {row.sigma_collision:>8.4f} {ages:<22} {taus:<28} "
            f"{_yesno(result.feasible):<9} {nash}"
        )
    if args.check:
        problems = check_reference_rows()
        if problems:
            for problem in problems:
                print(f"self-check: {problem}", file=sys.stderr)
            return 2
        print("self-check: all reference rows match the golden values")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    if scenario.sweep is None:
        raise ScenarioError(f"{args.scenario}: scenario has no sweep block")
    game = scenario.game()
    n = game.n
    node = scenario.sweep.node - 1
    header = (
        ["swept_age"]
        + [f"tau_{k + 1}" for k in range(n)]
        + ["feasible"]
        + [f"psucc_{k + 1}" for k in range(n)]
    )
    lines = [",".join(header)]
    for value in scenario.sweep.values(scenario.sigma_success):
        ages = list(scenario.initial_ages)
        ages[node] = value
        swept_game = GameInstance(n, scenario.slot_lengths, tuple(ages))
        result = msne_closed_form(swept_game)
        taus = list(result.raw_taus)
        psucc = _raw_success_probabilities(taus)
        cells = (
            [_num(value)]
            + [_num(t) for t in taus]
            + [str(result.feasible).lower()]
            + [_num(p) for p in psucc]
        )
        lines.append(",".join(cells))
    _write_lines(args.out, lines)
    if args.out is not None:
        print(f"sweep written to {args.out} ({len(lines) - 1} points)")
    return 0


def _simulation_profile(scenario: Scenario, game: GameInstance) -> tuple[StrategyProfile, str]:
    if scenario.taus is not None:
        return StrategyProfile(scenario.taus), "explicit taus from scenario"
    result = msne_closed_form(game)
    if not result.feasible:
        raise ScenarioError(
            "closed-form equilibrium is infeasible for this scenario; "
            "provide an explicit 'taus' list to simulate"
        )
    return result.profile(), "closed-form mixed equilibrium"


def cmd_simulate(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    game = scenario.game()
    lengths = game.slot_lengths
    seed = scenario.seed if args.seed is None else args.seed
    num_slots = scenario.num_slots if args.slots is None else args.slots
    if num_slots < 1:
        raise ScenarioError(f"num_slots must be at least 1, got {num_slots}")
    profile, source = _simulation_profile(scenario, game)
    stats = run_monte_carlo(game, profile, num_slots, seed)

    print(f"scenario: {args.scenario}")
    print(f"profile source: {source}")
    print("taus: " + ", ".join(format(t, ".6f") for t in profile))
    print(f"slots: {num_slots}, seed: {seed}")
    print(
        f"counts: idle={stats.idle_count} collision={stats.collision_count} "
        f"success=({', '.join(str(c) for c in stats.success_count_per_node)})"
    )
    print()

    rows = []
    p_idle = idle_probability(profile)
    p_coll = collision_probability(profile)
    rows.append(("p_idle", p_idle, stats.idle_count / num_slots, _freq_se(p_idle, num_slots)))
    rows.append(
        ("p_collision", p_coll, stats.collision_count / num_slots, _freq_se(p_coll, num_slots))
    )
    for i in range(game.n):
        p = success_probability_of(i, profile)
        rows.append(
            (
                f"p_success_{i + 1}",
                p,
                stats.success_count_per_node[i] / num_slots,
                _freq_se(p, num_slots),
            )
        )
    for i in range(game.n):
        pmf = age_pmf(i, game.initial_ages[i], profile, lengths)
        mean = expected_age_after(i, game.initial_ages[i], profile, lengths)
        variance = max(0.0, sum(p * v * v for v, p in pmf.support) - mean * mean)
        rows.append(
            (
                f"mean_age_{i + 1}",
                mean,
                stats.mean_age_after_per_node[i],
                math.sqrt(variance / num_slots),
            )
        )

    print(f"{'quantity':<14} {'analytic':>14} {'empirical':>14} {'|diff|':>12} {'3*SE':>12} within")
    all_within = True
    for name, analytic, empirical, se in rows:
        diff = abs(analytic - empirical)
        band = 3.0 * se
        within = diff <= band
        all_within = all_within and within
        print(
            f"{name:<14} {analytic:>14.6f} {empirical:>14.6f} "
            f"{diff:>12.2e} {band:>12.2e} {_yesno(within)}"
        )
    print()
    print(f"all quantities within 3 standard errors: {_yesno(all_within)}")

    if args.out is not None:
        trajectory = simulate_age_trajectory(game, profile, num_slots, seed)
        lines = [",".join(["time"] + [f"age_{k + 1}" for k in range(game.n)])]
        for t in range(len(trajectory.times)):
            cells = [_num(trajectory.times[t])] + [
                _num(trajectory.ages[i][t]) for i in range(game.n)
            ]
            lines.append(",".join(cells))
        _write_lines(args.out, lines)
        print(f"trajectory written to {args.out} ({len(trajectory.times)} breakpoints)")
    return 0


def _freq_se(p: float, num_slots: int) -> float:
    return math.sqrt(max(0.0, p * (1.0 - p)) / num_slots)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aoi-csma-game",
        description=(
            "One-shot transmit/idle contention game over slotted CSMA/CA: "
            "age payoffs, equilibria, and Monte Carlo validation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", help="dominance, equilibria, and feasibility for one scenario"
    )
    analyze.add_argument("--scenario", required=True, help="path to a scenario JSON file")
    analyze.set_defaults(func=cmd_analyze)

    table1 = sub.add_parser(
        "table1", help="print the five bundled reference scenarios"
    )
    table1.add_argument(
        "--check", action="store_true", help="compare against golden values; exit 2 on mismatch"
    )
    table1.set_defaults(func=cmd_table1)

    sweep = sub.add_parser(
        "sweep", help="sweep one node's starting age and emit equilibrium CSV"
    )
    sweep.add_argument("--scenario", required=True, help="path to a scenario JSON file")
    sweep.add_argument("--out", default=None, help="CSV output path (default stdout)")
    sweep.set_defaults(func=cmd_sweep)

    simulate = sub.add_parser(
        "simulate", help="Monte Carlo run with analytic-vs-empirical report"
    )
    simulate.add_argument("--scenario", required=True, help="path to a scenario JSON file")
    simulate.add_argument("--out", default=None, help="trajectory CSV output path")
    simulate.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    simulate.add_argument(
        "--slots", type=int, default=None, help="override the scenario num_slots"
    )
    simulate.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
