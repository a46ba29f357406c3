"""Shared test utilities: independent oracles and seeded instance samplers.

The outcome oracle enumerates all 2^n transmit patterns with their Bernoulli
weights, deliberately sharing no code with the closed-form probability
operations it checks.
"""

from __future__ import annotations

import itertools

import numpy as np

from aoi_csma_game import AgeVector, GameInstance, SlotLengths


def outcome_probabilities(taus):
    """Brute-force slot-outcome probabilities for a transmit-probability vector.

    Returns ``(p_idle, p_success_per_node, p_collision, p_busy_per_node)``
    where busy means "this node silent and exactly one other transmitting".
    """
    n = len(taus)
    p_idle = 0.0
    p_success = [0.0] * n
    p_collision = 0.0
    p_busy = [0.0] * n
    for pattern in itertools.product((0, 1), repeat=n):
        weight = 1.0
        for bit, tau in zip(pattern, taus):
            weight *= tau if bit else (1.0 - tau)
        transmitters = sum(pattern)
        if transmitters == 0:
            p_idle += weight
        elif transmitters == 1:
            p_success[pattern.index(1)] += weight
        else:
            p_collision += weight
        if transmitters == 1:
            for i in range(n):
                if pattern[i] == 0:
                    p_busy[i] += weight
    return p_idle, p_success, p_collision, p_busy


def pure_payoff_oracle(i, actions_transmit, ages, sigma_idle, sigma_success, sigma_collision):
    """Independent pure-payoff case analysis from a boolean transmit vector."""
    transmitters = sum(actions_transmit)
    if actions_transmit[i]:
        if transmitters == 1:
            return -sigma_success
        return -(ages[i] + sigma_collision)
    if transmitters == 0:
        return -(ages[i] + sigma_idle)
    if transmitters == 1:
        return -(ages[i] + sigma_success)
    return -(ages[i] + sigma_collision)


def random_slot_lengths(rng: np.random.Generator, collision_ratio: tuple[float, float]):
    """Random slot lengths with sigma_collision drawn as a ratio of sigma_success."""
    sigma_success = float(rng.uniform(0.5, 2.0))
    sigma_idle = sigma_success * float(rng.uniform(0.005, 0.9))
    sigma_collision = sigma_success * float(rng.uniform(*collision_ratio))
    return SlotLengths(sigma_idle, sigma_success, sigma_collision)


def random_game(rng: np.random.Generator, n: int, lengths: SlotLengths) -> GameInstance:
    """Random instance with ages drawn from [sigma_success, 10 sigma_success]."""
    ages = lengths.sigma_success * (1.0 + 9.0 * rng.random(n))
    return GameInstance(n, lengths, AgeVector(tuple(float(a) for a in ages)))


def interior_condition_holds(game: GameInstance) -> bool:
    n = game.n
    mean_age = sum(game.initial_ages) / n
    threshold = (game.slot_lengths.sigma_success - game.slot_lengths.sigma_idle) / n
    return all(mean_age - (n - 1) * age / n > threshold for age in game.initial_ages)


def random_feasible_game(rng: np.random.Generator, n: int) -> GameInstance:
    """Random instance in the interior-equilibrium region with margin for
    finite-difference perturbations (ages kept strictly above sigma_success).
    """
    lengths = random_slot_lengths(rng, collision_ratio=(1.05, 3.0))
    floor = 1.001 * lengths.sigma_success
    for _ in range(200):
        ages = tuple(float(a) for a in lengths.sigma_success * (1.001 + 9.0 * rng.random(n)))
        game = GameInstance(n, lengths, AgeVector(ages))
        if interior_condition_holds(game):
            return game
    # Near-equal ages always satisfy the interior condition.
    base = float(rng.uniform(1.1, 10.0)) * lengths.sigma_success
    jitter = 0.001 * lengths.sigma_idle * rng.random(n)
    ages = tuple(float(base + j) for j in jitter)
    game = GameInstance(n, lengths, AgeVector(ages))
    assert interior_condition_holds(game)
    assert all(a >= floor for a in ages)
    return game
