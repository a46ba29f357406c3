"""Equilibrium analysis of the one-shot contention game.

Covers exhaustive weak-dominance checks, pure Nash enumeration, the
closed-form interior mixed equilibrium with its feasibility region,
indifference verification, a grid best-response oracle, and the
sensitivity of the interior equilibrium to the starting ages.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .game import Action, GameInstance, StrategyProfile, mixed_payoff, pure_payoff

MAX_ENUMERATION_NODES = 20


class SingularGameError(ValueError):
    """The closed-form equilibrium denominator vanishes for this instance."""


@dataclass(frozen=True)
class DominanceReport:
    """Outcome of comparing one pure strategy against its alternative everywhere.

    ``weakly_dominant`` uses the weak-inequality sense: the strategy's payoff
    is at least the alternative's against every pure opponent profile.
    ``strictly_better_somewhere`` records whether at least one opponent
    profile makes it strictly better; both together give the textbook sense.
    """

    node: int
    strategy: Action
    weakly_dominant: bool
    strictly_better_somewhere: bool

    @property
    def weakly_dominant_strict_sense(self) -> bool:
        return self.weakly_dominant and self.strictly_better_somewhere


@dataclass(frozen=True)
class PureNashSet:
    """Pure action profiles that survive the unilateral-deviation test."""

    profiles: frozenset[tuple[Action, ...]]

    def __contains__(self, profile: tuple[Action, ...]) -> bool:
        return profile in self.profiles

    def __len__(self) -> int:
        return len(self.profiles)

    def __iter__(self) -> Iterator[tuple[Action, ...]]:
        return iter(sorted(self.profiles, key=lambda p: [a.value for a in p]))

    def as_strings(self) -> tuple[str, ...]:
        return tuple("".join(a.value for a in p) for p in self)


@dataclass(frozen=True)
class MsneResult:
    """Closed-form interior equilibrium values with their feasibility diagnostics.

    ``raw_taus`` are reported unclamped even when they fall outside (0, 1);
    ``feasible_per_node`` holds the per-node interior-region condition and
    ``feasible`` additionally requires collisions to outlast successes.
    ``indifference_residuals`` give, per node, the payoff gap between always
    transmitting and always idling against the other nodes' raw values.
    """

    raw_taus: tuple[float, ...]
    feasible_per_node: tuple[bool, ...]
    feasible: bool
    indifference_residuals: tuple[float, ...]

    def profile(self) -> StrategyProfile:
        """The equilibrium as a strategy profile; only defined when feasible."""
        if not self.feasible:
            raise ValueError(
                "closed-form values lie outside (0, 1); no interior equilibrium profile"
            )
        return StrategyProfile(self.raw_taus)


def check_weak_dominance(game: GameInstance, i: int, strategy: Action) -> DominanceReport:
    """Compare `strategy` vs. the other action for node i over all opponent profiles."""
    other = Action.IDLE if strategy is Action.TRANSMIT else Action.TRANSMIT
    at_least = True
    strictly_somewhere = False
    for opponents in itertools.product((Action.TRANSMIT, Action.IDLE), repeat=game.n - 1):
        actions = list(opponents[:i]) + [strategy] + list(opponents[i:])
        u_strategy = pure_payoff(i, game, actions)
        actions[i] = other
        u_other = pure_payoff(i, game, actions)
        if u_strategy < u_other:
            at_least = False
            break
        if u_strategy > u_other:
            strictly_somewhere = True
    return DominanceReport(
        node=i,
        strategy=strategy,
        weakly_dominant=at_least,
        strictly_better_somewhere=at_least and strictly_somewhere,
    )


def enumerate_pure_nash(game: GameInstance) -> PureNashSet:
    """Exact pure Nash set by exhausting all 2^n profiles and their deviations.

    A profile survives when no node can strictly improve its payoff by
    flipping only its own action; payoff ties do not disqualify.
    """
    if game.n > MAX_ENUMERATION_NODES:
        raise ValueError(
            f"exhaustive enumeration capped at {MAX_ENUMERATION_NODES} nodes, got {game.n}"
        )
    equilibria = []
    for profile in itertools.product((Action.TRANSMIT, Action.IDLE), repeat=game.n):
        actions = list(profile)
        stable = True
        for i in range(game.n):
            current = pure_payoff(i, game, actions)
            actions[i] = Action.IDLE if actions[i] is Action.TRANSMIT else Action.TRANSMIT
            deviated = pure_payoff(i, game, actions)
            actions[i] = profile[i]
            if deviated > current:
                stable = False
                break
        if stable:
            equilibria.append(profile)
    return PureNashSet(frozenset(equilibria))


def _indifference_gap(
    game: GameInstance, i: int, taus: Sequence[float]
) -> float:
    """Payoff gap between surely transmitting and surely idling for node i.

    Evaluated from the algebraic expected-payoff expressions, so it is
    defined even when the other nodes' values fall outside [0, 1].
    """
    lengths = game.slot_lengths
    age = game.initial_ages[i]
    others_silent = 1.0
    for j, tau in enumerate(taus):
        if j != i:
            others_silent *= 1.0 - tau
    lone_other = 0.0
    for j, tau_j in enumerate(taus):
        if j == i:
            continue
        term = tau_j
        for k, tau_k in enumerate(taus):
            if k != i and k != j:
                term *= 1.0 - tau_k
        lone_other += term
    u_transmit = (
        -(1.0 - others_silent) * (age + lengths.sigma_collision)
        - others_silent * lengths.sigma_success
    )
    u_idle = (
        -(1.0 - others_silent - lone_other) * (age + lengths.sigma_collision)
        - others_silent * (age + lengths.sigma_idle)
        - lone_other * (age + lengths.sigma_success)
    )
    return u_transmit - u_idle


def msne_closed_form(game: GameInstance) -> MsneResult:
    """Evaluate the closed-form interior mixed equilibrium for every node.

    Raw values are returned even outside (0, 1). The per-node feasibility
    flag checks the interior-region condition on the starting ages:

        mean_age - (n - 1)/n * age_i > (sigma_success - sigma_idle) / n

    and the overall flag additionally requires sigma_collision >
    sigma_success (otherwise transmit is weakly dominant and no node
    randomizes).
    """
    n = game.n
    lengths = game.slot_lengths
    ages = game.initial_ages
    mean_age = sum(ages) / n
    raw = []
    for i in range(n):
        shifted = (n - 1) * ages[i] - n * mean_age
        numerator = lengths.sigma_success - lengths.sigma_idle + shifted
        denominator = (
            n * lengths.sigma_success
            - (n - 1) * lengths.sigma_collision
            - lengths.sigma_idle
            + shifted
        )
        if denominator == 0.0:
            raise SingularGameError(
                f"equilibrium denominator vanishes for node {i}; "
                "the closed form is undefined for this instance"
            )
        raw.append(numerator / denominator)
    threshold = (lengths.sigma_success - lengths.sigma_idle) / n
    per_node = tuple(
        mean_age - (n - 1) * ages[i] / n > threshold for i in range(n)
    )
    feasible = all(per_node) and lengths.sigma_collision > lengths.sigma_success
    residuals = tuple(_indifference_gap(game, i, raw) for i in range(n))
    return MsneResult(
        raw_taus=tuple(raw),
        feasible_per_node=per_node,
        feasible=feasible,
        indifference_residuals=residuals,
    )


def verify_indifference(game: GameInstance, profile: StrategyProfile) -> tuple[float, ...]:
    """Per-node payoff gap u_i(transmit surely) - u_i(idle surely) at `profile`.

    Zero residuals mean every node is exactly indifferent, the defining
    property of an interior equilibrium.
    """
    if len(profile) != game.n:
        raise ValueError(f"profile has {len(profile)} entries for n = {game.n} nodes")
    return tuple(
        mixed_payoff(i, game, profile.with_tau(i, 1.0))
        - mixed_payoff(i, game, profile.with_tau(i, 0.0))
        for i in range(game.n)
    )


def response_payoffs(
    game: GameInstance, i: int, opponent_taus: Sequence[float], grid_size: int
) -> tuple[tuple[float, float], ...]:
    """Node i's payoff at each grid value of its own transmit probability.

    ``opponent_taus`` lists the other nodes' probabilities in node order,
    skipping node i. The payoff is affine in tau_i, so the grid is only a
    blunt (but independent) instrument: the maximizer is an endpoint unless
    the node is indifferent.
    """
    if grid_size < 3:
        raise ValueError(f"grid_size must be at least 3, got {grid_size}")
    if len(opponent_taus) != game.n - 1:
        raise ValueError(
            f"expected {game.n - 1} opponent probabilities, got {len(opponent_taus)}"
        )
    out = []
    for k in range(grid_size):
        tau_i = k / (grid_size - 1)
        taus = list(opponent_taus)
        taus.insert(i, tau_i)
        out.append((tau_i, mixed_payoff(i, game, StrategyProfile(tuple(taus)))))
    return tuple(out)


def best_response_oracle(
    game: GameInstance, i: int, opponent_taus: Sequence[float], grid_size: int = 101
) -> tuple[float, float]:
    """Grid search for node i's best transmit probability against fixed opponents.

    Returns ``(tau, payoff)`` at the maximizing grid point (first maximizer
    on ties).
    """
    grid = response_payoffs(game, i, opponent_taus, grid_size)
    return max(grid, key=lambda pair: pair[1])


def monotonicity_derivatives(game: GameInstance, i: int, j: int) -> tuple[float, float]:
    """Sensitivity of node i's closed-form equilibrium value to starting ages.

    Returns ``(d tau_i / d age_i, d tau_i / d age_j)`` for ``j != i``,
    accounting for the mean age's dependence on every entry. When
    collisions outlast successes the own-age derivative is negative (for
    three or more nodes) and the cross-age derivative positive: an aging
    node turns conservative while its rivals grow aggressive.
    """
    n = game.n
    if i == j:
        raise ValueError("cross derivative requires j != i")
    if not 0 <= i < n or not 0 <= j < n:
        raise IndexError(f"node indices ({i}, {j}) out of range for {n} nodes")
    lengths = game.slot_lengths
    mean_age = sum(game.initial_ages) / n
    denominator = (
        n * lengths.sigma_success
        - (n - 1) * lengths.sigma_collision
        - lengths.sigma_idle
        + (n - 1) * game.initial_ages[i]
        - n * mean_age
    )
    if denominator == 0.0:
        raise SingularGameError(
            f"equilibrium denominator vanishes for node {i}; derivatives undefined"
        )
    gap = lengths.sigma_success - lengths.sigma_collision
    own = (n - 1) * (n - 2) * gap / denominator**2
    cross = (n - 1) * (-gap) / denominator**2
    return own, cross
