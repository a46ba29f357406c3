"""Seeded Monte Carlo simulation of CSMA/CA slots under a fixed profile.

Two experiments are provided. ``run_monte_carlo`` repeats the single-slot
experiment independently: every slot restarts from the game's initial ages,
which is what the analytic slot probabilities and one-slot age distribution
describe. ``simulate_age_trajectory`` instead lets ages carry over from slot
to slot, producing sawtooth sample paths; it is an illustrative multi-slot
extension (nodes never adapt their transmit probabilities).

Randomness contract: draws come from ``numpy.random.default_rng(seed)`` and
each node's transmit decision consumes exactly one uniform variate per slot,
in node-index order within the slot. Identical inputs replay bit-identically.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .game import GameInstance, SlotLengths, StrategyProfile

_CHUNK_SLOTS = 1 << 16


class SlotKind(enum.Enum):
    IDLE = "idle"
    SUCCESS = "success"
    COLLISION = "collision"


@dataclass(frozen=True)
class SlotOutcome:
    """Realized type and duration of one slot."""

    kind: SlotKind
    duration: float
    successful_node: int | None = None

    def __post_init__(self) -> None:
        if (self.kind is SlotKind.SUCCESS) != (self.successful_node is not None):
            raise ValueError("successful_node must be set exactly for success slots")


@dataclass(frozen=True)
class SimStats:
    """Aggregate counts and restart-experiment age means over a simulation run."""

    slots: int
    idle_count: int
    collision_count: int
    success_count_per_node: tuple[int, ...]
    mean_age_after_per_node: tuple[float, ...]

    def __post_init__(self) -> None:
        total = self.idle_count + self.collision_count + sum(self.success_count_per_node)
        if total != self.slots:
            raise ValueError(
                f"slot counts sum to {total}, expected {self.slots}"
            )


@dataclass(frozen=True)
class AgeTrajectory:
    """Piecewise-linear age sample paths sampled at slot boundaries.

    ``times[0] == 0.0`` is the initial boundary; between breakpoints each age
    grows with slope one, and a node's own success pins its age to
    sigma_success at the slot end.
    """

    times: tuple[float, ...]
    ages: tuple[tuple[float, ...], ...]

    @property
    def n(self) -> int:
        return len(self.ages)

    def breakpoints(self, i: int) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.times, self.ages[i]))


def _duration_for(kind: SlotKind, lengths: SlotLengths) -> float:
    if kind is SlotKind.IDLE:
        return lengths.sigma_idle
    if kind is SlotKind.SUCCESS:
        return lengths.sigma_success
    return lengths.sigma_collision


def sample_slot(
    profile: StrategyProfile, slot_lengths: SlotLengths, rng: np.random.Generator
) -> SlotOutcome:
    """Draw one slot: every node transmits independently with its own probability."""
    draws = rng.random(len(profile))
    transmitters = [i for i, tau in enumerate(profile) if draws[i] < tau]
    if not transmitters:
        return SlotOutcome(SlotKind.IDLE, slot_lengths.sigma_idle)
    if len(transmitters) == 1:
        return SlotOutcome(
            SlotKind.SUCCESS, slot_lengths.sigma_success, successful_node=transmitters[0]
        )
    return SlotOutcome(SlotKind.COLLISION, slot_lengths.sigma_collision)


def _chunked_slot_draws(taus, num_slots, rng, chunk_slots):
    """Yield (transmit_count, success_node) arrays chunk by chunk.

    ``success_node`` is -1 where the slot is not a success. Chunking only
    bounds memory; the variate stream (slot-major, node order within a
    slot) is independent of the chunk size.
    """
    done = 0
    while done < num_slots:
        m = min(chunk_slots, num_slots - done)
        transmits = rng.random((m, len(taus))) < taus
        counts = transmits.sum(axis=1)
        success_node = np.where(counts == 1, transmits.argmax(axis=1), -1)
        yield counts, success_node
        done += m


def run_monte_carlo(
    game: GameInstance,
    profile: StrategyProfile,
    num_slots: int,
    seed: int,
    chunk_slots: int = _CHUNK_SLOTS,
) -> SimStats:
    """Repeat the one-slot experiment `num_slots` times and aggregate.

    Every slot restarts each node from its initial age, so the per-node mean
    end-of-slot age estimates the analytic conditional expectation: the age
    is sigma_success on the node's own success and initial age plus the
    realized slot length otherwise.
    """
    if len(profile) != game.n:
        raise ValueError(f"profile has {len(profile)} entries for n = {game.n} nodes")
    if num_slots < 1:
        raise ValueError(f"num_slots must be at least 1, got {num_slots}")
    taus = np.asarray(profile.taus)
    rng = np.random.default_rng(seed)
    idle = 0
    collision = 0
    successes = np.zeros(game.n, dtype=np.int64)
    for counts, success_node in _chunked_slot_draws(taus, num_slots, rng, chunk_slots):
        idle += int(np.count_nonzero(counts == 0))
        collision += int(np.count_nonzero(counts >= 2))
        successes += np.bincount(success_node[success_node >= 0], minlength=game.n)
    lengths = game.slot_lengths
    total_duration = (
        idle * lengths.sigma_idle
        + int(successes.sum()) * lengths.sigma_success
        + collision * lengths.sigma_collision
    )
    mean_ages = tuple(
        (total_duration + game.initial_ages[i] * (num_slots - int(successes[i])))
        / num_slots
        for i in range(game.n)
    )
    return SimStats(
        slots=num_slots,
        idle_count=idle,
        collision_count=collision,
        success_count_per_node=tuple(int(s) for s in successes),
        mean_age_after_per_node=mean_ages,
    )


def simulate_age_trajectory(
    game: GameInstance,
    profile: StrategyProfile,
    num_slots: int,
    seed: int,
    chunk_slots: int = _CHUNK_SLOTS,
) -> AgeTrajectory:
    """Sequential multi-slot run where ages carry over between slots.

    Returns breakpoints at every slot boundary: node i's age at a boundary
    is sigma_success if it just succeeded, otherwise its previous age plus
    the realized slot duration.
    """
    if len(profile) != game.n:
        raise ValueError(f"profile has {len(profile)} entries for n = {game.n} nodes")
    if num_slots < 1:
        raise ValueError(f"num_slots must be at least 1, got {num_slots}")
    taus = np.asarray(profile.taus)
    rng = np.random.default_rng(seed)
    counts = np.empty(num_slots, dtype=np.int64)
    success_node = np.empty(num_slots, dtype=np.int64)
    done = 0
    for chunk_counts, chunk_success in _chunked_slot_draws(
        taus, num_slots, rng, chunk_slots
    ):
        m = len(chunk_counts)
        counts[done : done + m] = chunk_counts
        success_node[done : done + m] = chunk_success
        done += m
    lengths = game.slot_lengths
    durations = np.where(
        counts == 0,
        lengths.sigma_idle,
        np.where(counts == 1, lengths.sigma_success, lengths.sigma_collision),
    )
    times = np.concatenate(([0.0], np.cumsum(durations)))
    slot_index = np.arange(1, num_slots + 1)
    ages = []
    for i in range(game.n):
        last_reset = np.maximum.accumulate(np.where(success_node == i, slot_index, 0))
        path = np.where(
            last_reset > 0,
            lengths.sigma_success + (times[1:] - times[last_reset]),
            game.initial_ages[i] + times[1:],
        )
        ages.append((game.initial_ages[i],) + tuple(path))
    return AgeTrajectory(times=tuple(times), ages=tuple(ages))
