"""Slotted CSMA/CA contention model with age-of-information payoffs.

All nodes sense each other, so a slot has exactly one of three outcomes:
idle (nobody transmits), success (exactly one transmitter), or collision
(two or more). Each node i transmits independently with probability tau_i.
A node's payoff is the negative of its expected update age at the end of
the slot, given the age it carried into the slot.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass


class Action(enum.Enum):
    """Pure per-slot choice of a node."""

    TRANSMIT = "T"
    IDLE = "I"

    def __str__(self) -> str:
        return self.value


def actions_from_string(s: str) -> tuple[Action, ...]:
    """Parse a compact action string like ``"TTI"`` into an action tuple."""
    try:
        return tuple(Action(c.upper()) for c in s)
    except ValueError:
        raise ValueError(f"action string {s!r} may only contain 'T' and 'I'") from None


def actions_to_string(actions: Sequence[Action]) -> str:
    return "".join(a.value for a in actions)


@dataclass(frozen=True)
class SlotLengths:
    """Durations of the three slot types, in one shared abstract time unit."""

    sigma_idle: float
    sigma_success: float
    sigma_collision: float

    def __post_init__(self) -> None:
        for name in ("sigma_idle", "sigma_success", "sigma_collision"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a positive finite duration, got {value}")
        if not self.sigma_idle < self.sigma_success:
            raise ValueError(
                f"sigma_idle ({self.sigma_idle}) must be shorter than "
                f"sigma_success ({self.sigma_success})"
            )

    @property
    def short_collision(self) -> bool:
        """True when a collision is no longer than a successful transmission."""
        return self.sigma_collision <= self.sigma_success

    def regime(self) -> str:
        return "short_collision" if self.short_collision else "long_collision"


@dataclass(frozen=True)
class AgeVector:
    """Per-node update ages at the start of a slot."""

    ages: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ages", tuple(float(a) for a in self.ages))
        if len(self.ages) < 2:
            raise ValueError(f"need ages for at least 2 nodes, got {len(self.ages)}")
        for i, age in enumerate(self.ages):
            if not (age > 0.0 and math.isfinite(age)):
                raise ValueError(f"ages[{i}] must be a positive finite duration, got {age}")

    def __len__(self) -> int:
        return len(self.ages)

    def __getitem__(self, i: int) -> float:
        return self.ages[i]

    def __iter__(self) -> Iterator[float]:
        return iter(self.ages)


@dataclass(frozen=True)
class StrategyProfile:
    """Per-node transmit probabilities; pure profiles sit at the 0/1 corners."""

    taus: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "taus", tuple(float(t) for t in self.taus))
        if not self.taus:
            raise ValueError("profile needs at least one node")
        for i, tau in enumerate(self.taus):
            if not (0.0 <= tau <= 1.0):
                raise ValueError(f"taus[{i}] = {tau} is not a probability in [0, 1]")

    @classmethod
    def from_actions(cls, actions: Sequence[Action]) -> StrategyProfile:
        return cls(tuple(1.0 if a is Action.TRANSMIT else 0.0 for a in actions))

    @property
    def is_pure(self) -> bool:
        return all(t in (0.0, 1.0) for t in self.taus)

    def with_tau(self, i: int, tau: float) -> StrategyProfile:
        """Copy of this profile with node i's transmit probability replaced."""
        taus = list(self.taus)
        taus[i] = tau
        return StrategyProfile(tuple(taus))

    def __len__(self) -> int:
        return len(self.taus)

    def __getitem__(self, i: int) -> float:
        return self.taus[i]

    def __iter__(self) -> Iterator[float]:
        return iter(self.taus)


@dataclass(frozen=True)
class GameInstance:
    """One-shot contention game: node count, slot lengths, and starting ages.

    Every starting age must be at least sigma_success, since that is the
    minimum time any delivered update has already aged by the time it is
    received. Single-node "games" are rejected: without contention there is
    nothing to model and the interior equilibrium formula degenerates.
    """

    n: int
    slot_lengths: SlotLengths
    initial_ages: AgeVector

    def __post_init__(self) -> None:
        if not isinstance(self.initial_ages, AgeVector):
            object.__setattr__(self, "initial_ages", AgeVector(tuple(self.initial_ages)))
        if self.n < 2:
            raise ValueError(f"need at least 2 contending nodes, got n = {self.n}")
        if len(self.initial_ages) != self.n:
            raise ValueError(
                f"initial_ages has {len(self.initial_ages)} entries for n = {self.n} nodes"
            )
        floor = self.slot_lengths.sigma_success
        for i, age in enumerate(self.initial_ages):
            if age < floor:
                raise ValueError(
                    f"initial_ages[{i}] = {age} violates age >= sigma_success ({floor})"
                )


@dataclass(frozen=True)
class AgePmf:
    """Discrete distribution of a node's age at the end of one slot.

    Support values are distinct (coinciding outcome ages are merged on
    construction by the producing operation) and probabilities sum to one.
    """

    support: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        values = [v for v, _ in self.support]
        if len(set(values)) != len(values):
            raise ValueError("support values must be distinct")
        for value, prob in self.support:
            if prob < 0.0:
                raise ValueError(f"probability {prob} at age {value} is negative")
        mass = math.fsum(p for _, p in self.support)
        if abs(mass - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {mass}, expected 1 within 1e-12")

    def total_mass(self) -> float:
        return math.fsum(p for _, p in self.support)

    def mean(self) -> float:
        return math.fsum(v * p for v, p in self.support)

    def as_dict(self) -> dict[float, float]:
        return dict(self.support)


def _check_node_index(i: int, n: int) -> None:
    if not 0 <= i < n:
        raise IndexError(f"node index {i} out of range for {n} nodes")


def idle_probability(profile: StrategyProfile) -> float:
    """Probability that no node transmits in the slot."""
    return math.prod(1.0 - t for t in profile)


def success_probability_of(i: int, profile: StrategyProfile) -> float:
    """Probability that node i is the slot's only transmitter."""
    _check_node_index(i, len(profile))
    return profile[i] * math.prod(1.0 - t for j, t in enumerate(profile) if j != i)


def total_success_probability(profile: StrategyProfile) -> float:
    """Probability that the slot carries exactly one transmission."""
    return math.fsum(success_probability_of(i, profile) for i in range(len(profile)))


def busy_seen_probability(
    i: int, profile: StrategyProfile, *, condition_on_own_idle: bool = True
) -> float:
    """Probability that node i stays silent while exactly one other node transmits.

    With ``condition_on_own_idle=False`` the leading (1 - tau_i) factor is
    dropped, giving the probability that exactly one of the *other* nodes
    transmits irrespective of node i's own draw. That variant is a
    diagnostic only: it does not normalize the end-of-slot age distribution.
    """
    _check_node_index(i, len(profile))
    total = 0.0
    for j, tau_j in enumerate(profile):
        if j == i:
            continue
        total += tau_j * math.prod(
            1.0 - t for k, t in enumerate(profile) if k != i and k != j
        )
    if condition_on_own_idle:
        total *= 1.0 - profile[i]
    return total


def collision_probability(profile: StrategyProfile) -> float:
    """Probability that two or more nodes transmit in the slot."""
    p = 1.0 - idle_probability(profile) - total_success_probability(profile)
    return min(1.0, max(0.0, p))


def age_pmf(
    i: int, age_before: float, profile: StrategyProfile, slot_lengths: SlotLengths
) -> AgePmf:
    """Distribution of node i's age at the end of the slot, given its age at the start.

    The age resets to sigma_success when node i succeeds and otherwise grows
    by the realized slot length. Outcome ages that coincide (e.g. collision
    and busy when sigma_collision == sigma_success) are merged into a single
    support point; zero-probability outcomes are dropped.
    """
    _check_node_index(i, len(profile))
    if age_before < slot_lengths.sigma_success:
        raise ValueError(
            f"age_before = {age_before} violates age >= sigma_success "
            f"({slot_lengths.sigma_success})"
        )
    points = (
        (age_before + slot_lengths.sigma_idle, idle_probability(profile)),
        (age_before + slot_lengths.sigma_collision, collision_probability(profile)),
        (age_before + slot_lengths.sigma_success, busy_seen_probability(i, profile)),
        (slot_lengths.sigma_success, success_probability_of(i, profile)),
    )
    merged: dict[float, float] = {}
    for value, prob in points:
        merged[value] = merged.get(value, 0.0) + prob
    support = tuple(sorted((v, p) for v, p in merged.items() if p != 0.0))
    return AgePmf(support)


def expected_age_after(
    i: int, age_before: float, profile: StrategyProfile, slot_lengths: SlotLengths
) -> float:
    """Expected age of node i's update at the end of the slot.

    Equals the mean of :func:`age_pmf`: the age survives with probability
    (1 - p_success_i) and every slot adds its expected realized length.
    """
    _check_node_index(i, len(profile))
    if age_before < slot_lengths.sigma_success:
        raise ValueError(
            f"age_before = {age_before} violates age >= sigma_success "
            f"({slot_lengths.sigma_success})"
        )
    p_own = success_probability_of(i, profile)
    expected_slot = (
        idle_probability(profile) * slot_lengths.sigma_idle
        + total_success_probability(profile) * slot_lengths.sigma_success
        + collision_probability(profile) * slot_lengths.sigma_collision
    )
    return (1.0 - p_own) * age_before + expected_slot


def mixed_payoff(i: int, game: GameInstance, profile: StrategyProfile) -> float:
    """Node i's payoff under a mixed profile: minus its expected end-of-slot age."""
    if len(profile) != game.n:
        raise ValueError(f"profile has {len(profile)} entries for n = {game.n} nodes")
    return -expected_age_after(i, game.initial_ages[i], profile, game.slot_lengths)


def pure_payoff(i: int, game: GameInstance, actions: Sequence[Action]) -> float:
    """Node i's payoff when every node plays a pure transmit/idle action."""
    if len(actions) != game.n:
        raise ValueError(f"actions has {len(actions)} entries for n = {game.n} nodes")
    _check_node_index(i, game.n)
    lengths = game.slot_lengths
    age = game.initial_ages[i]
    transmitters = sum(1 for a in actions if a is Action.TRANSMIT)
    if actions[i] is Action.TRANSMIT:
        if transmitters == 1:
            return -lengths.sigma_success
        return -(age + lengths.sigma_collision)
    if transmitters == 0:
        return -(age + lengths.sigma_idle)
    if transmitters == 1:
        return -(age + lengths.sigma_success)
    return -(age + lengths.sigma_collision)
