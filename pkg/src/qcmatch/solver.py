"""LP solving: a self-contained dense two-phase simplex plus a HiGHS route.

The dense simplex (Bland's rule, deterministic pivots) is the reference
implementation for small models and cross-validation.  Models of acceptance
scale (tens of thousands of rows) go through scipy's HiGHS interface, whose
solutions are re-checked against the exact rational constraints by
verify_solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.optimize
import scipy.sparse

from .lpmodel import LPModel

OPTIMAL = "OPTIMAL"
INFEASIBLE = "INFEASIBLE"
UNBOUNDED = "UNBOUNDED"
ITERATION_LIMIT = "ITERATION_LIMIT"

# beyond this many constraints the dense tableau stops being sensible
_DENSE_ROW_LIMIT = 600


@dataclass
class Solution:
    objective_value: float
    assignment: dict
    status: str

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def solve(model: LPModel, feasibility_tol: float = 1e-9,
          max_iterations: int = 10 ** 6, engine: str = "auto") -> Solution:
    """Maximize the model's objective.  engine is one of auto/simplex/highs."""
    if engine == "auto":
        engine = "simplex" if model.constraint_count <= _DENSE_ROW_LIMIT else "highs"
    if engine == "simplex":
        return _solve_dense_simplex(model, feasibility_tol, max_iterations)
    if engine == "highs":
        return _solve_highs(model)
    raise ValueError(f"unknown engine {engine!r}")


def _model_arrays(model: LPModel):
    names = list(model.variables)
    index = {v: i for i, v in enumerate(names)}
    return names, index


def _solve_highs(model: LPModel) -> Solution:
    names, index = _model_arrays(model)
    nvar = len(names)
    c = np.zeros(nvar)
    for v, coef in model.objective.items():
        c[index[v]] = -float(coef)  # linprog minimizes
    ub_rows, ub_rhs, eq_rows, eq_rhs = [], [], [], []
    for con in model.constraints:
        row = [(index[v], float(coef)) for v, coef in con.coeffs.items()]
        rhs = float(con.rhs)
        if con.sense == "<=":
            ub_rows.append(row)
            ub_rhs.append(rhs)
        elif con.sense == ">=":
            ub_rows.append([(j, -a) for j, a in row])
            ub_rhs.append(-rhs)
        else:
            eq_rows.append(row)
            eq_rhs.append(rhs)

    def to_sparse(rows):
        data, ri, ci = [], [], []
        for i, row in enumerate(rows):
            for j, a in row:
                ri.append(i)
                ci.append(j)
                data.append(a)
        return scipy.sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), nvar))

    bounds = [(None if lo is None else float(lo), None if hi is None else float(hi))
              for (lo, hi) in model.variables.values()]
    res = scipy.optimize.linprog(
        c,
        A_ub=to_sparse(ub_rows) if ub_rows else None,
        b_ub=np.array(ub_rhs) if ub_rhs else None,
        A_eq=to_sparse(eq_rows) if eq_rows else None,
        b_eq=np.array(eq_rhs) if eq_rhs else None,
        bounds=bounds, method="highs")
    if res.status == 0:
        assignment = {v: float(res.x[index[v]]) for v in names}
        return Solution(-float(res.fun), assignment, OPTIMAL)
    if res.status == 2:
        return Solution(float("nan"), {}, INFEASIBLE)
    if res.status == 3:
        return Solution(float("inf"), {}, UNBOUNDED)
    return Solution(float("nan"), {}, ITERATION_LIMIT)


def _solve_dense_simplex(model: LPModel, tol: float, max_iterations: int) -> Solution:
    """Two-phase dense simplex with Bland's anti-cycling rule.

    Free variables are split into positive and negative parts; finite bounds
    become explicit rows; all structural variables are shifted to be >= 0.
    """
    names, _ = _model_arrays(model)
    cols = []          # (kind, payload): maps tableau columns back to variables
    col_of = {}
    shift = {}
    for v in names:
        lo, hi = model.variables[v]
        if lo is None:
            col_of[v] = (len(cols), len(cols) + 1)
            cols.append(("pos", v))
            cols.append(("neg", v))
            shift[v] = Fraction(0)
        else:
            col_of[v] = (len(cols), None)
            cols.append(("pos", v))
            shift[v] = lo

    rows = []  # (coeff dict over column ids, sense, rhs float)

    def expand(coeffs, sense, rhs):
        row = {}
        r = Fraction(rhs)
        for v, a in coeffs.items():
            a = Fraction(a)
            p, m = col_of[v]
            row[p] = row.get(p, Fraction(0)) + a
            if m is not None:
                row[m] = row.get(m, Fraction(0)) - a
            r -= a * shift[v]
        rows.append((row, sense, r))

    for con in model.constraints:
        expand(con.coeffs, con.sense, con.rhs)
    for v in names:
        lo, hi = model.variables[v]
        if hi is not None:
            expand({v: 1}, "<=", hi)

    m = len(rows)
    ncols = len(cols)
    nslack = sum(1 for (_, sense, _) in rows if sense in ("<=", ">="))
    width = ncols + nslack
    A = np.zeros((m, width))
    b = np.zeros(m)
    slack_at = 0
    slack_col_of_row = [-1] * m
    for i, (row, sense, r) in enumerate(rows):
        for j, a in row.items():
            A[i, j] = float(a)
        b[i] = float(r)
        if sense in ("<=", ">="):
            j = ncols + slack_at
            A[i, j] = 1.0 if sense == "<=" else -1.0
            slack_col_of_row[i] = j
            slack_at += 1
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # identity columns: slacks of <= rows that were not flipped
    basis = [-1] * m
    need_artificial = []
    for i in range(m):
        j = slack_col_of_row[i]
        if j >= 0 and A[i, j] == 1.0:
            basis[i] = j
        else:
            need_artificial.append(i)
    nart = len(need_artificial)
    T = np.zeros((m, width + nart + 1))
    T[:, :width] = A
    T[:, -1] = b
    for a_idx, i in enumerate(need_artificial):
        T[i, width + a_idx] = 1.0
        basis[i] = width + a_idx

    def pivot(T, basis, costs, limit, art_cutoff):
        it = 0
        while True:
            if it >= limit:
                return ITERATION_LIMIT, it
            # reduced costs for the current basis
            z = costs.copy()
            for i, bj in enumerate(basis):
                if costs[bj] != 0.0:
                    z -= costs[bj] * T[i]
            entering = -1
            for j in range(art_cutoff):
                if z[j] < -tol:
                    entering = j
                    break
            if entering < 0:
                return OPTIMAL, it
            ratios = []
            for i in range(m):
                if T[i, entering] > tol:
                    ratios.append((T[i, -1] / T[i, entering], basis[i], i))
            if not ratios:
                return UNBOUNDED, it
            _, _, leave = min(ratios)
            piv = T[leave, entering]
            T[leave] /= piv
            colv = T[:, entering].copy()
            colv[leave] = 0.0
            T -= np.outer(colv, T[leave])
            basis[leave] = entering
            it += 1

    budget = max_iterations
    if nart:
        costs = np.zeros(width + nart + 1)
        costs[width:width + nart] = 1.0
        status, used = pivot(T, basis, costs, budget, width + nart)
        budget -= used
        if status == ITERATION_LIMIT:
            return Solution(float("nan"), {}, ITERATION_LIMIT)
        phase1 = sum(T[i, -1] for i, bj in enumerate(basis) if bj >= width)
        if phase1 > 10 * max(tol, 1e-12):
            return Solution(float("nan"), {}, INFEASIBLE)
        # drive leftover artificials out of the basis where possible
        for i in range(m):
            if basis[i] >= width:
                for j in range(width):
                    if abs(T[i, j]) > tol:
                        piv = T[i, j]
                        T[i] /= piv
                        colv = T[:, j].copy()
                        colv[i] = 0.0
                        T -= np.outer(colv, T[i])
                        basis[i] = j
                        break

    costs = np.zeros(width + nart + 1)
    for v, coef in model.objective.items():
        p, mcol = col_of[v]
        costs[p] -= float(coef)  # maximize -> minimize negation
        if mcol is not None:
            costs[mcol] += float(coef)
    status, _ = pivot(T, basis, costs, budget, width)
    if status != OPTIMAL:
        return Solution(float("inf") if status == UNBOUNDED else float("nan"),
                        {}, status)

    values = np.zeros(width + nart)
    for i, bj in enumerate(basis):
        if bj < width + nart:
            values[bj] = T[i, -1]
    assignment = {}
    for v in names:
        p, mcol = col_of[v]
        x = values[p] - (values[mcol] if mcol is not None else 0.0)
        assignment[v] = float(x + float(shift[v]))
    obj = sum(float(coef) * assignment[v] for v, coef in model.objective.items())
    return Solution(obj, assignment, OPTIMAL)


@dataclass
class VerificationReport:
    max_violation: float
    violations: list = field(default_factory=list)  # (tag, amount), worst first
    objective_value: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_solution(model: LPModel, assignment: dict,
                    tol: float = 1e-8) -> VerificationReport:
    """Re-check every constraint with exact rational coefficients against a
    float assignment; list violators worst-first with their provenance tags."""
    missing = [v for v in model.variables if v not in assignment]
    if missing:
        raise KeyError(f"assignment missing variables: {missing[:8]}")
    values = {v: Fraction(assignment[v]) for v in model.variables}
    bad = []
    worst = Fraction(0)
    for name, (lo, hi) in model.variables.items():
        if lo is not None and values[name] < lo:
            amount = lo - values[name]
            bad.append((f"bound-lo[{name}]", float(amount)))
            worst = max(worst, amount)
        if hi is not None and values[name] > hi:
            amount = values[name] - hi
            bad.append((f"bound-hi[{name}]", float(amount)))
            worst = max(worst, amount)
    for con in model.constraints:
        lhs = sum(coef * values[v] for v, coef in con.coeffs.items())
        if con.sense == "<=":
            amount = lhs - con.rhs
        elif con.sense == ">=":
            amount = con.rhs - lhs
        else:
            amount = abs(lhs - con.rhs)
        if amount > Fraction(tol):
            bad.append((con.tag, float(amount)))
            worst = max(worst, amount)
    bad.sort(key=lambda item: -item[1])
    objective = sum(coef * values[v] for v, coef in model.objective.items())
    return VerificationReport(float(worst), bad, float(objective))
