"""Brute-force stability verifiers.

Four notions are checked exhaustively, all variations on one theme: a
coalition *blocks* a partition when every member strictly improves on
their partition utility (optionally by more than a factor ``k``).

* size-stable up to ``q``: no blocking coalition of size at most ``q``;
* core stable: no blocking coalition of any size;
* size/factor stable at ``(q, k)``: no coalition of size exactly ``q``
  in which every member improves by a factor of more than ``k``;
* improvement stable at ``k``: size/factor stable at ``(q, k)`` for
  every ``q``.

Verdicts are exhaustive at the configured scale, never sampled.
Enumeration is by increasing size, then lexicographic member order, so
returned witnesses are deterministic.  A :class:`Scenario` is a
candidate blocking coalition studied in isolation: weights among its
members plus fixed baseline utilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from ._rat import to_fraction, to_rat
from .core import (
    AlphaFunction,
    Coalition,
    Game,
    Partition,
    check_partition,
    coalition_utility,
    partition_utility,
)
from .errors import DomainError, InvalidInputError, ResourceLimitError

#: Default ceiling on the number of coalitions a single verification may
#: enumerate.  Exceeding it raises, never silently truncates.
DEFAULT_SUBSET_BUDGET = 5_000_000


@dataclass(frozen=True)
class Scenario:
    """Weights among ``size`` agents plus fixed baseline utilities.

    The baselines play the role of the agents' utilities under some
    ambient partition that is never materialized.  Searches produce
    scenarios; generators emit them.
    """

    size: int
    weights: tuple[tuple[Fraction, ...], ...]
    baselines: tuple[Fraction, ...]
    alpha: AlphaFunction

    def __post_init__(self) -> None:
        if self.size < 1:
            raise InvalidInputError("scenario needs at least one agent")
        if len(self.weights) != self.size or any(len(r) != self.size for r in self.weights):
            raise InvalidInputError("weight matrix shape must be size x size")
        rows = tuple(tuple(Fraction(w) for w in row) for row in self.weights)
        for i in range(self.size):
            if rows[i][i] != 0:
                raise InvalidInputError(f"self-weight of agent {i} must be 0")
            for j in range(i + 1, self.size):
                if rows[i][j] != rows[j][i]:
                    raise InvalidInputError(f"asymmetric weights for pair ({i},{j})")
        if len(self.baselines) != self.size:
            raise InvalidInputError("need one baseline per agent")
        object.__setattr__(self, "weights", rows)
        object.__setattr__(
            self, "baselines", tuple(Fraction(b) for b in self.baselines)
        )


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of a stability check.

    When ``stable`` is false, ``witness`` is the first blocking
    coalition in (size, lexicographic) order; re-evaluating it violates
    the checked inequality for every member.
    """

    stable: bool
    witness: Coalition | None
    checked_sizes: tuple[int, int]
    factor: Fraction


def _subset_budget_guard(n: int, min_size: int, max_size: int, budget: int) -> None:
    total = sum(math.comb(n, s) for s in range(min_size, max_size + 1))
    if total > budget:
        raise ResourceLimitError(
            f"enumerating {total} coalitions exceeds the budget of {budget}"
        )


def find_blocking_coalition(
    game: Game,
    partition: Partition,
    min_size: int,
    max_size: int,
    factor: Fraction | int = 1,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> Coalition | None:
    """First coalition (by size, then lex order) in which every member
    gets utility strictly greater than ``factor`` times their partition
    utility; ``None`` if no such coalition exists in the size range.
    """
    n = game.n
    factor = Fraction(factor)
    if not (1 <= min_size <= max_size <= n):
        raise DomainError(f"need 1 <= min_size <= max_size <= {n}")
    if factor < 1:
        raise DomainError("improvement factor must be >= 1")
    check_partition(game, partition)
    _subset_budget_guard(n, min_size, max_size, subset_budget)

    thresholds = [
        to_rat(factor * partition_utility(game, partition, i)) for i in range(n)
    ]
    weights = [[to_rat(w) for w in row] for row in game.weights]

    if min_size == 1:
        # a singleton yields utility 0, so it blocks iff 0 > threshold
        for i in range(n):
            if thresholds[i] < 0:
                return Coalition.of([i])

    for s in range(max(min_size, 2), max_size + 1):
        a = to_rat(game.alpha.value(s))
        for combo in combinations(range(n), s):
            for i in combo:
                row = weights[i]
                total = sum(row[j] for j in combo)
                if a * total <= thresholds[i]:
                    break
            else:
                return Coalition.of(combo)
    return None


def is_size_stable(
    game: Game,
    partition: Partition,
    max_size: int,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> StabilityReport:
    """No blocking coalition of size at most ``max_size``."""
    witness = find_blocking_coalition(
        game, partition, 1, max_size, 1, subset_budget=subset_budget
    )
    return StabilityReport(witness is None, witness, (1, max_size), Fraction(1))


def is_core_stable(
    game: Game,
    partition: Partition,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> StabilityReport:
    """No blocking coalition of any size."""
    return is_size_stable(game, partition, game.n, subset_budget=subset_budget)


def is_size_factor_stable(
    game: Game,
    partition: Partition,
    size: int,
    factor: Fraction | int,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> StabilityReport:
    """Every coalition of size exactly ``size`` has a member who does
    not improve by a factor of more than ``factor``."""
    witness = find_blocking_coalition(
        game, partition, size, size, factor, subset_budget=subset_budget
    )
    return StabilityReport(witness is None, witness, (size, size), Fraction(factor))


def is_improvement_stable(
    game: Game,
    partition: Partition,
    factor: Fraction | int,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> StabilityReport:
    """No coalition of any size lets every member improve by a factor
    of more than ``factor``."""
    witness = find_blocking_coalition(
        game, partition, 1, game.n, factor, subset_budget=subset_budget
    )
    return StabilityReport(witness is None, witness, (1, game.n), Fraction(factor))


def scenario_is_size_stable(
    scenario: Scenario,
    max_size: int,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> bool:
    """Would the scenario's baselines survive as size-stable up to
    ``max_size`` among these agents?

    True iff no baseline is negative (a singleton deviation) and every
    subset of size 2..max_size contains an agent whose subset utility
    does not exceed their baseline.
    """
    m = scenario.size
    if not (1 <= max_size <= m):
        raise DomainError(f"need 1 <= max_size <= {m}")
    if any(b < 0 for b in scenario.baselines):
        return False
    _subset_budget_guard(m, 2, max(max_size, 2), subset_budget)
    weights = [[to_rat(w) for w in row] for row in scenario.weights]
    baselines = [to_rat(b) for b in scenario.baselines]
    for s in range(2, max_size + 1):
        a = to_rat(scenario.alpha.value(s))
        for combo in combinations(range(m), s):
            for i in combo:
                row = weights[i]
                if a * sum(row[j] for j in combo) <= baselines[i]:
                    break
            else:
                return False
    return True


def min_improvement_factor(scenario: Scenario) -> Fraction:
    """Worst improvement ratio over the full coalition: the minimum over
    agents of full-coalition utility divided by baseline.

    Requires strictly positive baselines.
    """
    if any(b <= 0 for b in scenario.baselines):
        raise DomainError("improvement factors need strictly positive baselines")
    a = scenario.alpha.value(scenario.size)
    return min(
        a * sum(row, Fraction(0)) / b
        for row, b in zip(scenario.weights, scenario.baselines)
    )


def max_improvement_factor_at_size(
    game: Game,
    partition: Partition,
    size: int,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> Fraction:
    """The largest factor by which some coalition of exactly ``size``
    agents lets *all* its members improve; equivalently the smallest
    ``k`` at which the partition is size/factor stable at ``(size, k)``.

    Requires every agent's partition utility to be strictly positive.
    """
    n = game.n
    if not (2 <= size <= n):
        raise DomainError(f"need 2 <= size <= {n}")
    check_partition(game, partition)
    baselines = [partition_utility(game, partition, i) for i in range(n)]
    if any(b <= 0 for b in baselines):
        raise DomainError("improvement factors need strictly positive baselines")
    _subset_budget_guard(n, size, size, subset_budget)

    weights = [[to_rat(w) for w in row] for row in game.weights]
    inv = [to_rat(1 / b) for b in baselines]
    a = to_rat(game.alpha.value(size))
    best = None
    for combo in combinations(range(n), size):
        worst = None
        for i in combo:
            row = weights[i]
            ratio = a * sum(row[j] for j in combo) * inv[i]
            if worst is None or ratio < worst:
                worst = ratio
        if best is None or worst > best:
            best = worst
    assert best is not None
    return to_fraction(best)


def blocking_members_check(
    game: Game,
    partition: Partition,
    coalition: Coalition | Iterable[int],
    factor: Fraction | int = 1,
) -> bool:
    """Re-check a witness: does every member strictly beat ``factor``
    times their partition utility?"""
    members = tuple(coalition)
    factor = Fraction(factor)
    return all(
        coalition_utility(game, members, i)
        > factor * partition_utility(game, partition, i)
        for i in members
    )
