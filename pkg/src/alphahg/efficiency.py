"""Social welfare, exhaustive partition enumeration, and prices of anarchy.

The core price of anarchy of a stability notion is the optimal social
welfare divided by the worst social welfare among partitions stable
under that notion, both found by exhaustive enumeration.  Division by
nonpositive welfare is never performed: zero-welfare optima and
zero-welfare stable outcomes get explicit verdicts instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from ._rat import to_fraction, to_rat
from .core import Game, Partition, check_partition, partition_utility
from .errors import DomainError, ResourceLimitError

#: Partition enumeration is gated at this agent count (Bell numbers grow
#: superexponentially).
MAX_ENUM_AGENTS = 13

RATIO = "ratio"
UNBOUNDED = "unbounded"
UNDEFINED = "undefined"
NO_STABLE_OUTCOME = "no_stable_outcome"


@dataclass(frozen=True)
class PoaResult:
    """Price-of-anarchy verdict.

    ``ratio``: ``value`` is best/worst welfare.  ``undefined``: the best
    welfare is zero (every stable outcome is welfare-optimal); reported
    with value 1.  ``unbounded``: positive best welfare but a stable
    outcome with nonpositive welfare.  ``no_stable_outcome``: the stable
    set is empty (a legitimate outcome, not an error).
    """

    kind: str
    value: Fraction | None
    best_welfare: Fraction
    worst_stable_welfare: Fraction | None


def social_welfare(game: Game, partition: Partition) -> Fraction:
    """Sum of all agents' partition utilities."""
    check_partition(game, partition)
    return sum(
        (partition_utility(game, partition, i) for i in range(game.n)), Fraction(0)
    )


def _restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    codes = [0] * n

    def rec(i: int, mx: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(codes)
            return
        for c in range(mx + 2):
            codes[i] = c
            yield from rec(i + 1, max(mx, c))

    yield from rec(1, 0) if n > 1 else iter([(0,)])


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of ``{0..n-1}`` exactly once, in restricted-
    growth-string order."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if n > MAX_ENUM_AGENTS:
        raise ResourceLimitError(
            f"enumerating partitions of {n} agents exceeds the guard "
            f"(n <= {MAX_ENUM_AGENTS}); Bell({n}) = too many"
        )
    for codes in _restricted_growth_strings(n):
        blocks: list[list[int]] = []
        for agent, code in enumerate(codes):
            if code == len(blocks):
                blocks.append([agent])
            else:
                blocks[code].append(agent)
        yield Partition.of(blocks)


def _subset_sum_tables(game: Game) -> list[list]:
    """table[i][mask] = sum of agent i's weights to the members of mask."""
    n = game.n
    zero = to_rat(0)
    tables = []
    for i in range(n):
        row = [to_rat(w) for w in game.weights[i]]
        table = [zero] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            table[mask] = table[mask ^ low] + row[low.bit_length() - 1]
        tables.append(table)
    return tables


def _cpoa(game: Game, max_block_size: int, factor: Fraction) -> PoaResult:
    """Shared engine: factor-stability against coalitions of size up to
    ``max_block_size`` (single sizes are handled by the caller's choice
    of range)."""
    n = game.n
    if n > MAX_ENUM_AGENTS:
        raise ResourceLimitError(
            f"price-of-anarchy enumeration is gated at n <= {MAX_ENUM_AGENTS}"
        )
    tables = _subset_sum_tables(game)
    alphas = [None] + [to_rat(game.alpha.value(s)) for s in range(1, n + 1)]
    k = to_rat(factor)

    # candidate deviations, grouped as (alpha, members, bit mask)
    deviations = []
    for s in range(2, max_block_size + 1):
        a = alphas[s]
        for combo in combinations(range(n), s):
            mask = 0
            for i in combo:
                mask |= 1 << i
            deviations.append((a, combo, mask))

    best = None
    worst_stable = None
    found_stable = False
    zero = to_rat(0)

    for codes in _restricted_growth_strings(n):
        masks = []
        sizes = []
        for agent, code in enumerate(codes):
            if code == len(masks):
                masks.append(1 << agent)
                sizes.append(1)
            else:
                masks[code] |= 1 << agent
                sizes[code] += 1
        utilities = [zero] * n
        welfare = zero
        for mask, size in zip(masks, sizes):
            a = alphas[size]
            rest = mask
            while rest:
                low = rest & -rest
                i = low.bit_length() - 1
                u = a * tables[i][mask]
                utilities[i] = u
                welfare += u
                rest ^= low
        if best is None or welfare > best:
            best = welfare

        # singleton deviation: an agent with negative utility walks out
        if any(u < 0 for u in utilities):
            continue
        thresholds = utilities if factor == 1 else [k * u for u in utilities]
        stable = True
        for a, combo, mask in deviations:
            for i in combo:
                if a * tables[i][mask] <= thresholds[i]:
                    break
            else:
                stable = False
                break
        if stable:
            found_stable = True
            if worst_stable is None or welfare < worst_stable:
                worst_stable = welfare

    assert best is not None
    best_f = to_fraction(best)
    if not found_stable:
        return PoaResult(NO_STABLE_OUTCOME, None, best_f, None)
    worst_f = to_fraction(worst_stable)
    if best_f == 0:
        return PoaResult(UNDEFINED, Fraction(1), best_f, worst_f)
    if worst_f <= 0:
        return PoaResult(UNBOUNDED, None, best_f, worst_f)
    return PoaResult(RATIO, best_f / worst_f, best_f, worst_f)


def size_cpoa(game: Game, max_size: int) -> PoaResult:
    """Price of anarchy over partitions with no blocking coalition of
    size at most ``max_size``."""
    if not 1 <= max_size <= game.n:
        raise DomainError(f"need 1 <= max_size <= {game.n}")
    return _cpoa(game, max_size, Fraction(1))


def improvement_cpoa(game: Game, factor: Fraction | int) -> PoaResult:
    """Price of anarchy over partitions in which no coalition of any
    size improves every member by a factor of more than ``factor``."""
    factor = Fraction(factor)
    if factor < 1:
        raise DomainError("factor must be >= 1")
    return _cpoa(game, game.n, factor)


def greedy_pairing(game: Game) -> Partition:
    """Repeatedly match the heaviest remaining positive-weight pair
    (ties broken by lexicographic pair index); everyone else stays
    alone.  The result admits no blocking coalition of size at most 2.
    """
    n = game.n
    candidates = [
        (game.weights[i][j], i, j)
        for i, j in combinations(range(n), 2)
        if game.weights[i][j] > 0
    ]
    candidates.sort(key=lambda t: (-t[0], t[1], t[2]))
    matched: set[int] = set()
    blocks: list[list[int]] = []
    for _, i, j in candidates:
        if i not in matched and j not in matched:
            matched.update((i, j))
            blocks.append([i, j])
    blocks.extend([i] for i in range(n) if i not in matched)
    return Partition.of(blocks)


def best_welfare_partition(game: Game) -> tuple[Partition, Fraction]:
    """A welfare-maximizing partition (first in enumeration order)."""
    best: tuple[Partition, Fraction] | None = None
    for partition in enumerate_partitions(game.n):
        sw = social_welfare(game, partition)
        if best is None or sw > best[1]:
            best = (partition, sw)
    assert best is not None
    return best
