"""Exact rational linear programming.

A dense two-phase simplex on a compact (Tucker) tableau with Bland's rule,
plus an iterated max-min driver for lexicographic max-min problems.

Problems are always maximizations. Variables are free unless bounded.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from coopshare.errors import DimensionError, Infeasible, UnboundedLexTarget

LE, EQ, GE = "<=", "==", ">="


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearConstraint:
    coefficients: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in (LE, EQ, GE):
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coefficients", tuple(Fraction(a) for a in self.coefficients))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def lhs(self, point: Sequence[Fraction]) -> Fraction:
        return sum((a * x for a, x in zip(self.coefficients, point) if a), Fraction(0))

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        lhs = self.lhs(point)
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x subject to constraints and per-variable bounds.

    ``None`` in ``lower``/``upper`` means unbounded in that direction.
    """

    var_count: int
    objective: tuple[Fraction, ...] = ()
    constraints: tuple[LinearConstraint, ...] = ()
    lower: tuple[Fraction | None, ...] = ()
    upper: tuple[Fraction | None, ...] = ()

    def __post_init__(self):
        n = self.var_count
        obj = tuple(Fraction(c) for c in self.objective) or (Fraction(0),) * n
        lower = tuple(None if b is None else Fraction(b) for b in self.lower) or (None,) * n
        upper = tuple(None if b is None else Fraction(b) for b in self.upper) or (None,) * n
        if len(obj) != n or len(lower) != n or len(upper) != n:
            raise DimensionError("objective/bounds length must equal var_count")
        cons = tuple(self.constraints)
        for con in cons:
            if len(con.coefficients) != n:
                raise DimensionError("constraint length must equal var_count")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "constraints", cons)

    def with_objective(self, objective: Iterable) -> LinearProgram:
        return replace(self, objective=tuple(objective))

    def with_constraints(self, extra: Iterable[LinearConstraint]) -> LinearProgram:
        return replace(self, constraints=self.constraints + tuple(extra))

    def with_bounds(self, lower=None, upper=None) -> LinearProgram:
        return replace(
            self,
            lower=self.lower if lower is None else tuple(lower),
            upper=self.upper if upper is None else tuple(upper),
        )

    def add_variables(self, count: int, lower=None, upper=None) -> LinearProgram:
        """Append ``count`` variables with zero coefficients everywhere."""
        pad = (Fraction(0),) * count
        return LinearProgram(
            self.var_count + count,
            self.objective + pad,
            tuple(
                LinearConstraint(c.coefficients + pad, c.relation, c.rhs) for c in self.constraints
            ),
            self.lower + tuple(lower or (None,) * count),
            self.upper + tuple(upper or (None,) * count),
        )

    def is_feasible_point(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.var_count:
            return False
        for x, lo, hi in zip(point, self.lower, self.upper):
            if lo is not None and x < lo:
                return False
            if hi is not None and x > hi:
                return False
        return all(c.satisfied_by(point) for c in self.constraints)


@dataclass(frozen=True)
class LpResult:
    status: Status
    point: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


def constraint(coefficients: Iterable, relation: str, rhs) -> LinearConstraint:
    return LinearConstraint(tuple(coefficients), relation, rhs)


# -- standard form ---------------------------------------------------------


@dataclass
class _StandardForm:
    columns: list[tuple[int, int]]  # (original variable, sign)
    offset: list[Fraction]
    rows: list[list[Fraction]]
    rhs: list[Fraction]


def _standardize(lp: LinearProgram) -> _StandardForm:
    columns: list[tuple[int, int]] = []
    offset = [Fraction(0)] * lp.var_count
    col_of: list[list[tuple[int, int]]] = []  # per variable: (column index, sign)
    bound_rows: list[tuple[int, Fraction]] = []
    for j in range(lp.var_count):
        lo, hi = lp.lower[j], lp.upper[j]
        if lo is not None:
            offset[j] = lo
            col_of.append([(len(columns), 1)])
            columns.append((j, 1))
            if hi is not None:
                bound_rows.append((len(columns) - 1, hi - lo))
        elif hi is not None:
            offset[j] = hi
            col_of.append([(len(columns), -1)])
            columns.append((j, -1))
        else:
            col_of.append([(len(columns), 1), (len(columns) + 1, -1)])
            columns.extend([(j, 1), (j, -1)])

    k = len(columns)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    zero = Fraction(0)
    for con in lp.constraints:
        row = [zero] * k
        b = con.rhs
        for j, a in enumerate(con.coefficients):
            if not a:
                continue
            b -= a * offset[j]
            for col, sign in col_of[j]:
                row[col] = a if sign > 0 else -a
        if con.relation in (LE, EQ):
            rows.append(row)
            rhs.append(b)
        if con.relation in (GE, EQ):
            rows.append([-a for a in row])
            rhs.append(-b)
    for col, bound in bound_rows:
        row = [zero] * k
        row[col] = Fraction(1)
        rows.append(row)
        rhs.append(bound)
    return _StandardForm(columns, offset, rows, rhs)


# -- tableau ---------------------------------------------------------------


@dataclass
class _Tableau:
    """Slack form: x_B[i] = b[i] - sum_j A[i][j] x_N[j]; z = z0 + sum_j c[j] x_N[j]."""

    A: list[list[Fraction]]
    b: list[Fraction]
    c: list[Fraction]
    z0: Fraction
    basic: list[int]
    nonbasic: list[int]
    pivots: int = field(default=0)

    def pivot(self, l: int, e: int) -> None:
        A, b, c = self.A, self.b, self.c
        row = A[l]
        inv = 1 / row[e]
        new_row = [a * inv for a in row]
        new_row[e] = inv
        bl = b[l] * inv
        A[l] = new_row
        b[l] = bl
        ncols = len(new_row)
        nz = [j for j in range(ncols) if j != e and new_row[j]]
        for i, r in enumerate(A):
            if i == l:
                continue
            f = r[e]
            if not f:
                continue
            for j in nz:
                r[j] -= f * new_row[j]
            r[e] = -f * inv
            b[i] -= f * bl
        f = c[e]
        if f:
            for j in nz:
                c[j] -= f * new_row[j]
            c[e] = -f * inv
            self.z0 += f * bl
        self.basic[l], self.nonbasic[e] = self.nonbasic[e], self.basic[l]
        self.pivots += 1

    def run(self) -> Status:
        """Primal simplex with Bland's rule from a feasible basis."""
        while True:
            e = None
            for j, cj in enumerate(self.c):
                if cj > 0 and (e is None or self.nonbasic[j] < self.nonbasic[e]):
                    e = j
            if e is None:
                return Status.OPTIMAL
            l = None
            best = None
            for i, r in enumerate(self.A):
                a = r[e]
                if a > 0:
                    ratio = self.b[i] / a
                    if (
                        l is None
                        or ratio < best
                        or (ratio == best and self.basic[i] < self.basic[l])
                    ):
                        l, best = i, ratio
            if l is None:
                return Status.UNBOUNDED
            self.pivot(l, e)


def _feasible_tableau(sf: _StandardForm) -> _Tableau | None:
    """Phase one. Returns a tableau at a feasible basis, or None if infeasible."""
    k, m = len(sf.columns), len(sf.rows)
    A = [list(r) for r in sf.rows]
    b = list(sf.rhs)
    tab = _Tableau(A, b, [Fraction(0)] * k, Fraction(0), list(range(k, k + m)), list(range(k)))
    if m == 0 or min(b) >= 0:
        return tab

    aux = k + m
    for r in A:
        r.append(Fraction(-1))
    tab.nonbasic.append(aux)
    tab.c = [Fraction(0)] * k + [Fraction(-1)]
    e = k
    l = min(range(m), key=lambda i: (b[i], tab.basic[i]))
    tab.pivot(l, e)
    tab.run()
    if tab.z0 < 0:
        return None

    if aux in tab.basic:
        l = tab.basic.index(aux)
        cands = [j for j in range(len(tab.nonbasic)) if A[l][j]]
        if cands:
            tab.pivot(l, min(cands, key=lambda j: tab.nonbasic[j]))
        else:
            # aux is identically zero in this row; the row is redundant
            del A[l]
            del b[l]
            del tab.basic[l]
    if aux in tab.nonbasic:
        e = tab.nonbasic.index(aux)
        for r in A:
            del r[e]
        del tab.nonbasic[e]
    tab.c = [Fraction(0)] * len(tab.nonbasic)
    tab.z0 = Fraction(0)
    return tab


def _install_objective(tab: _Tableau, cost: Sequence[Fraction]) -> None:
    """Express sum_v cost[v] y_v over the current nonbasic variables."""
    c = [Fraction(0)] * len(tab.nonbasic)
    z0 = Fraction(0)
    pos_n = {v: j for j, v in enumerate(tab.nonbasic)}
    pos_b = {v: i for i, v in enumerate(tab.basic)}
    for v, cv in enumerate(cost):
        if not cv:
            continue
        if v in pos_n:
            c[pos_n[v]] += cv
        else:
            i = pos_b[v]
            z0 += cv * tab.b[i]
            for j, a in enumerate(tab.A[i]):
                if a:
                    c[j] -= cv * a
    tab.c = c
    tab.z0 = z0


def _extract(lp: LinearProgram, sf: _StandardForm, tab: _Tableau) -> tuple[Fraction, ...]:
    k = len(sf.columns)
    y = [Fraction(0)] * k
    for i, v in enumerate(tab.basic):
        if v < k:
            y[v] = tab.b[i]
    x = list(sf.offset)
    for col, (j, sign) in enumerate(sf.columns):
        if y[col]:
            x[j] += y[col] if sign > 0 else -y[col]
    return tuple(x)


def solve_max(lp: LinearProgram) -> LpResult:
    """Maximize ``lp.objective`` exactly.

    Deterministic: the pivot sequence depends only on the input.
    """
    sf = _standardize(lp)
    tab = _feasible_tableau(sf)
    if tab is None:
        return LpResult(Status.INFEASIBLE)
    cost = [lp.objective[j] * sign for j, sign in sf.columns]
    _install_objective(tab, cost)
    if tab.run() is Status.UNBOUNDED:
        return LpResult(Status.UNBOUNDED)
    point = _extract(lp, sf, tab)
    value = sum((c * x for c, x in zip(lp.objective, point)), Fraction(0))
    return LpResult(Status.OPTIMAL, point, value)


def feasible(lp: LinearProgram) -> bool:
    return _feasible_tableau(_standardize(lp)) is not None


def find_point(lp: LinearProgram) -> tuple[Fraction, ...] | None:
    """Any feasible point (the phase-one basic solution), or None."""
    sf = _standardize(lp)
    tab = _feasible_tableau(sf)
    return None if tab is None else _extract(lp, sf, tab)


# -- lexicographic max-min ---------------------------------------------------


@dataclass(frozen=True)
class LexResult:
    values: dict[int, Fraction]  # target index -> level at which it was fixed
    point: tuple[Fraction, ...]
    rounds: int
    lp_count: int

    def target_vector(self, targets: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(self.values[i] for i in targets)


def lex_max_min(base: LinearProgram, targets: Iterable[int]) -> LexResult:
    """Lexicographically maximize the sorted vector of ``x[targets]``.

    Each round maximizes the common floor ``t`` of the unfixed targets, then
    fixes every unfixed target that cannot rise above ``t`` while the others
    stay at or above it. At least one target is fixed per round, so there are
    at most ``len(targets)`` rounds.
    """
    targets = sorted(set(targets))
    if not targets:
        raise ValueError("targets must be non-empty")
    n = base.var_count
    if targets[0] < 0 or targets[-1] >= n:
        raise DimensionError("target index out of range")

    fixed: dict[int, Fraction] = {}
    unfixed = list(targets)
    rounds = lp_count = 0
    point: tuple[Fraction, ...] = ()
    t_idx = n
    with_t = base.add_variables(1)

    def fixed_bounds(prog: LinearProgram) -> LinearProgram:
        lower, upper = list(prog.lower), list(prog.upper)
        for i, val in fixed.items():
            lower[i] = upper[i] = val
        return prog.with_bounds(lower, upper)

    while unfixed:
        rounds += 1
        floor_rows = []
        for i in unfixed:
            row = [Fraction(0)] * (n + 1)
            row[i], row[t_idx] = Fraction(1), Fraction(-1)
            floor_rows.append(LinearConstraint(tuple(row), GE, Fraction(0)))
        objective = [Fraction(0)] * (n + 1)
        objective[t_idx] = Fraction(1)
        lp = fixed_bounds(with_t.with_constraints(floor_rows)).with_objective(objective)
        res = solve_max(lp)
        lp_count += 1
        if res.status is Status.INFEASIBLE:
            raise Infeasible("base program is infeasible")
        if res.status is Status.UNBOUNDED:
            raise UnboundedLexTarget(f"floor of targets {unfixed} is unbounded")
        level = res.value
        point = res.point[:n]

        # targets may not drop below the level while we probe each one
        probe = fixed_bounds(base)
        lower = list(probe.lower)
        for i in unfixed:
            lower[i] = level if lower[i] is None else max(lower[i], level)
        probe = probe.with_bounds(lower=lower)
        can_rise = {i for i in unfixed if point[i] > level}
        for i in unfixed:
            if i in can_rise:
                continue
            obj = [Fraction(0)] * n
            obj[i] = Fraction(1)
            r = solve_max(probe.with_objective(obj))
            lp_count += 1
            if r.status is Status.UNBOUNDED:
                can_rise.add(i)
            elif r.status is Status.OPTIMAL:
                can_rise.update(j for j in unfixed if r.point[j] > level)
        newly = [i for i in unfixed if i not in can_rise]
        assert newly, "max-min round fixed no target"
        for i in newly:
            fixed[i] = level
        unfixed = [i for i in unfixed if i in can_rise]

    return LexResult(fixed, point, rounds, lp_count)
