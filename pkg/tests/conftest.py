"""Shared fixtures and random-instance helpers."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from alphahg import ASHG, FHG, MFHG, ODD_EVEN, PAIRWISE_COMM, AlphaFunction, Game, Partition

#: The running example: a 4-cycle of weight-3 edges plus one weight-2 chord.
EXAMPLE_EDGES = [(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 0, 3), (0, 2, 2)]

ALL_ALPHAS = (FHG, ASHG, MFHG, PAIRWISE_COMM, ODD_EVEN)
CORE_EXISTENCE_ALPHAS = (MFHG, PAIRWISE_COMM, ODD_EVEN)


def example_game(alpha: AlphaFunction) -> Game:
    return Game.from_edges(4, EXAMPLE_EDGES, alpha)


@pytest.fixture
def example_partition() -> Partition:
    return Partition.of([[0, 1], [2, 3]])


def random_game(
    rng: random.Random,
    n: int,
    alpha: AlphaFunction,
    low: int = 0,
    high: int = 5,
    denominators: tuple[int, ...] = (1,),
) -> Game:
    """Symmetric game with weights p/q, p in [low, high], q from the pool."""
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = Fraction(rng.randint(low, high), rng.choice(denominators))
            matrix[i][j] = w
            matrix[j][i] = w
    return Game.from_matrix(matrix, alpha)


def random_partition(rng: random.Random, n: int) -> Partition:
    """Uniform random restricted-growth assignment."""
    codes = [0] * n
    mx = 0
    for i in range(1, n):
        codes[i] = rng.randint(0, mx + 1)
        mx = max(mx, codes[i])
    blocks: dict[int, list[int]] = {}
    for agent, code in enumerate(codes):
        blocks.setdefault(code, []).append(agent)
    return Partition.of(blocks.values())


def positive_baseline_partition(
    rng: random.Random, game: Game, attempts: int = 60
) -> Partition | None:
    """A random partition in which every agent has positive utility,
    or None if none is found within the attempt budget."""
    from alphahg import partition_utility

    for _ in range(attempts):
        partition = random_partition(rng, game.n)
        if all(
            partition_utility(game, partition, i) > 0 for i in range(game.n)
        ):
            return partition
    return None
