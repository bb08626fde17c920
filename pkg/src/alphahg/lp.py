"""Exact rational linear programming.

A small dense two-phase primal simplex over exact rationals.  Bland's
rule guarantees termination; there is no floating point and no
tolerance anywhere, so Optimal/Infeasible/Unbounded verdicts are exact.
Performance is secondary to exactness: the intended scale is a few
hundred variables and constraints.

Variables are free by default and split into nonnegative pairs
internally; mark variables nonnegative to skip the split.  Relations
are non-strict (strictness is encoded upstream, e.g. via a maximized
slack variable).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from ._rat import to_fraction, to_rat
from .errors import InvalidInputError

RELATIONS = ("<=", "=", ">=")


class Constraint(NamedTuple):
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """Maximize ``objective . x`` subject to the constraints."""

    names: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    objective: tuple[Fraction, ...]
    nonnegative: tuple[bool, ...] = field(default=())

    def __post_init__(self) -> None:
        n = len(self.names)
        if n == 0:
            raise InvalidInputError("a program needs at least one variable")
        if len(set(self.names)) != n:
            raise InvalidInputError("variable names must be unique")
        if len(self.objective) != n:
            raise InvalidInputError("objective length must match variable count")
        nonneg = self.nonnegative or tuple([False] * n)
        if len(nonneg) != n:
            raise InvalidInputError("nonnegative flags must match variable count")
        rows = []
        for c in self.constraints:
            coeffs, relation, rhs = c
            if relation not in RELATIONS:
                raise InvalidInputError(f"unknown relation {relation!r}")
            if len(coeffs) != n:
                raise InvalidInputError("constraint length must match variable count")
            rows.append(
                Constraint(tuple(Fraction(x) for x in coeffs), relation, Fraction(rhs))
            )
        object.__setattr__(self, "constraints", tuple(rows))
        object.__setattr__(self, "objective", tuple(Fraction(x) for x in self.objective))
        object.__setattr__(self, "nonnegative", tuple(bool(b) for b in nonneg))

    @classmethod
    def maximize(
        cls,
        objective: Sequence,
        constraints: Iterable[tuple[Sequence, str, object]],
        names: Sequence[str] | None = None,
        nonnegative: Sequence[bool] | None = None,
    ) -> "LinearProgram":
        n = len(objective)
        if names is None:
            names = tuple(f"x{i}" for i in range(n))
        return cls(
            names=tuple(names),
            constraints=tuple(
                Constraint(tuple(Fraction(x) for x in co), rel, Fraction(rhs))
                for co, rel, rhs in constraints
            ),
            objective=tuple(Fraction(x) for x in objective),
            nonnegative=tuple(nonnegative) if nonnegative is not None else (),
        )

    @property
    def num_vars(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    assignment: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Unbounded:
    pass


SolveResult = Union[Optimal, Infeasible, Unbounded]


class _Tableau:
    """Dense simplex tableau over the exact-rational backend."""

    def __init__(self, rows, rhs, basis, num_cols):
        self.rows = rows          # list of lists, each num_cols long
        self.rhs = rhs            # list, one entry per row
        self.basis = basis        # basic column index per row
        self.num_cols = num_cols

    def pivot(self, r: int, c: int) -> None:
        piv = self.rows[r][c]
        inv = 1 / piv
        row_r = self.rows[r]
        if piv != 1:
            for j in range(self.num_cols):
                row_r[j] *= inv
            self.rhs[r] *= inv
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in range(self.num_cols):
                    if row_r[j]:
                        row[j] -= f * row_r[j]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def run(self, reduced, value, allowed, debug=False):
        """Primal simplex on the current basis.

        ``reduced`` is the reduced-cost row (maximization: optimal when
        none positive), ``value`` the current objective value.  Returns
        ("optimal", value) or ("unbounded", None).

        Bland's rule throughout (lowest-index entering and leaving
        variable), which guarantees termination.
        """
        rows, rhs = self.rows, self.rhs
        while True:
            entering = -1
            for j in range(self.num_cols):
                if allowed[j] and reduced[j] > 0:
                    entering = j
                    break
            if entering < 0:
                return "optimal", value
            leaving = -1
            best = None
            for i, row in enumerate(rows):
                a = row[entering]
                if a > 0:
                    ratio = rhs[i] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leaving]
                    ):
                        best = ratio
                        leaving = i
            if leaving < 0:
                return "unbounded", None
            if debug:
                self.dump(reduced, value)
            self.pivot(leaving, entering)
            # update the reduced-cost row with the fresh pivot row
            f = reduced[entering]
            if f:
                prow = rows[leaving]
                for j in range(self.num_cols):
                    if prow[j]:
                        reduced[j] -= f * prow[j]
                value += f * rhs[leaving]

    def dump(self, reduced, value) -> None:
        print(f"-- tableau (value {value}) --", file=sys.stderr)
        for i, row in enumerate(self.rows):
            cells = " ".join(str(x) for x in row)
            print(f"b{self.basis[i]:>3} | {cells} | {self.rhs[i]}", file=sys.stderr)
        print("  r | " + " ".join(str(x) for x in reduced), file=sys.stderr)


def solve(lp: LinearProgram, debug: bool = False) -> SolveResult:
    """Solve exactly; every Optimal assignment satisfies all constraints
    with exact rational comparison."""
    n = lp.num_vars

    # column layout: one column per nonnegative variable, a (plus, minus)
    # pair per free variable
    col_of: list[tuple[int, int]] = []  # (plus column, minus column or -1)
    num_struct = 0
    for v in range(n):
        if lp.nonnegative[v]:
            col_of.append((num_struct, -1))
            num_struct += 1
        else:
            col_of.append((num_struct, num_struct + 1))
            num_struct += 2

    zero = to_rat(0)

    def expand(coeffs) -> list:
        row = [zero] * num_struct
        for v, x in enumerate(coeffs):
            if x:
                r = to_rat(x)
                plus, minus = col_of[v]
                row[plus] = r
                if minus >= 0:
                    row[minus] = -r
        return row

    # canonicalize every constraint to <= or = with rhs >= 0
    canon: list[tuple[list, str, object]] = []
    for coeffs, relation, rhs in lp.constraints:
        row = expand(coeffs)
        r = to_rat(rhs)
        if relation == ">=":
            row = [-x for x in row]
            r = -r
            relation = "<="
        if r < 0:
            row = [-x for x in row]
            r = -r
            relation = {"<=": ">=", ">=": "<=", "=": "="}[relation]
        canon.append((row, relation, r))

    m = len(canon)
    num_slack = sum(1 for _, rel, _ in canon if rel in ("<=", ">="))
    num_art = sum(1 for _, rel, _ in canon if rel in (">=", "="))
    total = num_struct + num_slack + num_art

    rows: list[list] = []
    rhs: list = []
    basis: list[int] = []
    art_cols: list[int] = []
    slack_at = num_struct
    art_at = num_struct + num_slack
    for row, relation, r in canon:
        full = row + [zero] * (num_slack + num_art)
        if relation == "<=":
            full[slack_at] = to_rat(1)
            basis.append(slack_at)
            slack_at += 1
        elif relation == ">=":
            full[slack_at] = to_rat(-1)
            slack_at += 1
            full[art_at] = to_rat(1)
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        else:
            full[art_at] = to_rat(1)
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        rows.append(full)
        rhs.append(r)

    tab = _Tableau(rows, rhs, basis, total)
    art_set = set(art_cols)
    allowed = [True] * total

    if art_cols:
        # phase 1: maximize minus the sum of artificials
        reduced = [zero] * total
        value = zero
        for i, b in enumerate(basis):
            if b in art_set:
                for j in range(total):
                    reduced[j] += rows[i][j]
                value -= rhs[i]
        for c in art_cols:
            reduced[c] -= to_rat(1)
        status, value = tab.run(reduced, value, allowed, debug=debug)
        assert status == "optimal"  # phase-1 objective is bounded above by 0
        if value != 0:
            return Infeasible()
        # pivot surviving artificials out of the basis, or drop their rows
        for i in range(len(tab.basis) - 1, -1, -1):
            if tab.basis[i] in art_set:
                for j in range(num_struct + num_slack):
                    if tab.rows[i][j] != 0:
                        tab.pivot(i, j)
                        break
                else:
                    del tab.rows[i]
                    del tab.rhs[i]
                    del tab.basis[i]
        for c in art_cols:
            allowed[c] = False

    # phase 2: the real objective, priced out for the current basis
    cost = [zero] * total
    for v, x in enumerate(lp.objective):
        if x:
            r = to_rat(x)
            plus, minus = col_of[v]
            cost[plus] = r
            if minus >= 0:
                cost[minus] = -r
    reduced = list(cost)
    value = zero
    for i, b in enumerate(tab.basis):
        cb = cost[b]
        if cb:
            row = tab.rows[i]
            for j in range(tab.num_cols):
                if row[j]:
                    reduced[j] -= cb * row[j]
            value += cb * tab.rhs[i]
    status, value = tab.run(reduced, value, allowed, debug=debug)
    if status == "unbounded":
        return Unbounded()

    col_value = {b: tab.rhs[i] for i, b in enumerate(tab.basis)}
    assignment = []
    for v in range(n):
        plus, minus = col_of[v]
        x = col_value.get(plus, zero)
        if minus >= 0:
            x = x - col_value.get(minus, zero)
        assignment.append(to_fraction(x))
    objective_value = sum(
        (c * x for c, x in zip(lp.objective, assignment)), Fraction(0)
    )
    return Optimal(objective_value, tuple(assignment))


def satisfies(lp: LinearProgram, assignment: Sequence[Fraction]) -> bool:
    """Exact feasibility check of an assignment against all constraints."""
    if len(assignment) != lp.num_vars:
        return False
    for v, nonneg in enumerate(lp.nonnegative):
        if nonneg and assignment[v] < 0:
            return False
    for coeffs, relation, rhs in lp.constraints:
        lhs = sum((c * x for c, x in zip(coeffs, assignment)), Fraction(0))
        if relation == "<=" and not lhs <= rhs:
            return False
        if relation == ">=" and not lhs >= rhs:
            return False
        if relation == "=" and lhs != rhs:
            return False
    return True
