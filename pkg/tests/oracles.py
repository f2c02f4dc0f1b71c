"""Brute-force reference computations, independent of the solver code paths."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def solve_square(rows, rhs):
    """Exact Gauss-Jordan; returns the unique solution or None if singular."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))


def _as_rows(n, constraints, lower, upper):
    """Everything as (a, rel, b) with rel in '<=', '>=', '=='."""
    rows = [(tuple(map(Fraction, a)), rel, Fraction(b)) for a, rel, b in constraints]
    for j in range(n):
        e = tuple(Fraction(int(k == j)) for k in range(n))
        if lower and lower[j] is not None:
            rows.append((e, ">=", Fraction(lower[j])))
        if upper and upper[j] is not None:
            rows.append((e, "<=", Fraction(upper[j])))
    return rows


def _ok(rows, x):
    for a, rel, b in rows:
        lhs = sum(ai * xi for ai, xi in zip(a, x))
        if rel == "<=" and lhs > b or rel == ">=" and lhs < b or rel == "==" and lhs != b:
            return False
    return True


def vertices(n, constraints, lower=None, upper=None):
    """All vertices of a polyhedron by trying every n-subset of tight rows."""
    rows = _as_rows(n, constraints, lower, upper)
    found = set()
    for tight in combinations(rows, n):
        x = solve_square([a for a, _, _ in tight], [b for _, _, b in tight])
        if x is not None and _ok(rows, x):
            found.add(x)
    return found


def vertex_max(n, objective, constraints, lower=None, upper=None):
    """Max of a linear objective over a bounded polytope, or None if empty."""
    vs = vertices(n, constraints, lower, upper)
    if not vs:
        return None
    return max(sum(Fraction(c) * x for c, x in zip(objective, v)) for v in vs)


def core_rows(game):
    n = game.n
    rows = []
    for s in range(1, game.grand):
        rows.append((tuple(int(s >> i & 1) for i in range(n)), ">=", game.values[s]))
    rows.append(((1,) * n, "==", game.total))
    return rows


def core_vertices(game):
    """Core vertices; the budget row is always tight, so pick n - 1 more."""
    rows = core_rows(game)
    budget, ineq = rows[-1], rows[:-1]
    found = set()
    for pick in combinations(ineq, game.n - 1):
        tight = [budget, *pick]
        x = solve_square([a for a, _, _ in tight], [b for _, _, b in tight])
        if x is not None and _ok(rows, x):
            found.add(x)
    return found


def best_matching(supply_prices, demand_prices):
    """Max-profit matching by trying every partial assignment."""
    best = Fraction(0)

    def go(i, used, acc):
        nonlocal best
        if i == len(supply_prices):
            best = max(best, acc)
            return
        go(i + 1, used, acc)
        for j, d in enumerate(demand_prices):
            if j not in used and d >= supply_prices[i]:
                go(i + 1, used | {j}, acc + d - supply_prices[i])

    go(0, frozenset(), Fraction(0))
    return best


def supermodular_violation(game):
    """First (S, T) over all pairs violating supermodularity, or None."""
    v = game.values
    for s in range(1 << game.n):
        for t in range(1 << game.n):
            if v[s | t] + v[s & t] < v[s] + v[t]:
                return s, t
    return None


def superadditive(game):
    v = game.values
    for s in range(1 << game.n):
        for t in range(1 << game.n):
            if s & t == 0 and v[s | t] < v[s] + v[t]:
                return False
    return True


def segment_leximin(a, b, weights):
    """Leximin of x/w over the segment [a, b], excluding zero-weight coordinates.

    Between consecutive crossing points of the coordinate lines the sorted
    vector is affine, so the optimum sits at an endpoint or a crossing.
    """
    idx = [i for i, w in enumerate(weights) if w != 0]
    f = [(a[i] / weights[i], (b[i] - a[i]) / weights[i]) for i in idx]
    cands = {Fraction(0), Fraction(1)}
    for (c1, s1), (c2, s2) in combinations(f, 2):
        if s1 != s2:
            lam = (c2 - c1) / (s1 - s2)
            if 0 <= lam <= 1:
                cands.add(lam)

    def point(lam):
        return tuple(ai + lam * (bi - ai) for ai, bi in zip(a, b))

    def key(lam):
        return tuple(sorted(c + lam * s for c, s in f))

    best = max(sorted(cands), key=key)
    return point(best)
