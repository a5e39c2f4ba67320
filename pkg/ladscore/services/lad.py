"""Least absolute deviations regression.

The fit solves the linear program

    minimize    sum(u_i + v_i)
    subject to  X b + u - v = y,   u, v >= 0,   b free

with a primal tableau simplex using Bland's smallest-index rule. The
coefficient columns come first, so they enter the basis before any
residual column and, being free, never leave it again. At the optimal
vertex the observations whose u_i and v_i are both nonbasic are exactly
interpolated by the hyperplane: these are the basis observations.
"""

from itertools import combinations
from typing import Optional
import logging

import numpy as np

from ..config import SolverConfig, config
from ..errors import DataError, DegenerateDataError, NumericalError
from ..models import Dataset, LadFit

logger = logging.getLogger(__name__)

# Combinatorial guard for the enumeration oracle
BRUTE_FORCE_MAX_N = 15
BRUTE_FORCE_MAX_P = 3


def zero_tolerance(y: np.ndarray, solver: Optional[SolverConfig] = None) -> float:
    """Threshold below which a residual counts as zero."""
    solver = solver or config.solver
    return solver.zero_tol * (1.0 + float(np.max(np.abs(y))))


class L1Tableau:
    """Simplex tableau for the LAD linear program.

    Columns are ordered ``b_0..b_p, u_1..u_n, v_1..v_n``. Rows with a
    negative response are negated so the all-residual basis is feasible
    from the start.
    """

    def __init__(self, design: np.ndarray, y: np.ndarray, solver: SolverConfig):
        n, k = design.shape
        self.n, self.k = n, k
        self.solver = solver
        ncols = k + 2 * n

        tableau = np.zeros((n, ncols))
        tableau[:, :k] = design
        tableau[:, k:k + n] = np.eye(n)
        tableau[:, k + n:] = -np.eye(n)
        rhs = np.array(y, dtype=float)

        negative = rhs < 0
        tableau[negative] *= -1.0
        rhs[negative] *= -1.0

        self.tableau = tableau
        self.rhs = rhs
        self.basis = np.where(negative, k + n + np.arange(n), k + np.arange(n))
        self.is_basic = np.zeros(ncols, dtype=bool)
        self.is_basic[self.basis] = True
        self.free = np.zeros(ncols, dtype=bool)
        self.free[:k] = True
        # +1 or -1 per coefficient column: b_j = sign_j * (tableau variable)
        self.sign = np.ones(k)

        cost = np.concatenate([np.zeros(k), np.ones(2 * n)])
        # every initial basic variable has unit cost
        self.reduced = cost - tableau.sum(axis=0)

        x_scale = max(1.0, float(np.max(np.abs(design))))
        self.cost_tol = np.where(self.free, solver.cost_tol * x_scale * n, solver.cost_tol)
        self.iterations = 0
        self.moved_along_optimal_face = False

    @property
    def ncols(self) -> int:
        return self.tableau.shape[1]

    def _flip(self, col: int) -> None:
        """Substitute b_j -> -b_j for a nonbasic free column."""
        self.tableau[:, col] *= -1.0
        self.reduced[col] *= -1.0
        self.sign[col] *= -1.0

    def _entering(self) -> Optional[int]:
        """Bland: smallest index with an improving reduced cost."""
        d = self.reduced
        improving = np.where(self.free, np.abs(d) > self.cost_tol, d < -self.cost_tol)
        candidates = np.flatnonzero(improving & ~self.is_basic)
        if candidates.size == 0:
            return None
        col = int(candidates[0])
        if self.free[col] and d[col] > 0:
            self._flip(col)
        return col

    def _leaving(self, col: int) -> Optional[int]:
        """Minimum ratio test, ties to the smallest basic variable index."""
        column = self.tableau[:, col]
        tol = self.solver.pivot_tol * max(1.0, float(np.max(np.abs(column))))
        rows = np.flatnonzero((column > tol) & ~self.free[self.basis])
        if rows.size == 0:
            return None
        ratios = np.maximum(self.rhs[rows], 0.0) / column[rows]
        best = float(np.min(ratios))
        tied = rows[ratios <= best + 1e-12 * (1.0 + best)]
        return int(tied[np.argmin(self.basis[tied])])

    def pivot(self, row: int, col: int) -> None:
        pivot_row = self.tableau[row] / self.tableau[row, col]
        rhs_row = self.rhs[row] / self.tableau[row, col]

        factors = self.tableau[:, col].copy()
        factors[row] = 0.0
        self.tableau -= np.outer(factors, pivot_row)
        self.rhs -= factors * rhs_row
        self.tableau[row] = pivot_row
        self.rhs[row] = rhs_row
        self.reduced -= self.reduced[col] * pivot_row

        # keep the entering column an exact unit vector
        self.tableau[:, col] = 0.0
        self.tableau[row, col] = 1.0
        self.reduced[col] = 0.0

        self.is_basic[self.basis[row]] = False
        self.is_basic[col] = True
        self.basis[row] = col
        self.iterations += 1

    def solve(self) -> None:
        self._iterate()
        self._complete_coefficient_basis()
        # only residual columns can still enter
        self._iterate()

    def _iterate(self) -> None:
        limit = self.solver.max_iterations_factor * self.ncols
        while True:
            col = self._entering()
            if col is None:
                break
            row = self._leaving(col)
            if row is None:
                raise NumericalError("LAD linear program reported unbounded, which cannot happen for finite data")
            self.pivot(row, col)
            if self.iterations > limit:
                raise NumericalError(f"simplex did not terminate within {limit} pivots")

    def _complete_coefficient_basis(self) -> None:
        """Pivot nonbasic coefficient columns (zero reduced cost) into the basis."""
        for col in range(self.k):
            if self.is_basic[col]:
                continue
            column = self.tableau[:, col]
            tol = self.solver.pivot_tol * max(1.0, float(np.max(np.abs(column))))
            eligible = ~self.free[self.basis]
            up = np.flatnonzero((column > tol) & eligible)
            down = np.flatnonzero((column < -tol) & eligible)
            if up.size == 0 and down.size == 0:
                raise NumericalError("design matrix is rank deficient")
            up_step = np.min(np.maximum(self.rhs[up], 0.0) / column[up]) if up.size else np.inf
            down_step = np.min(np.maximum(self.rhs[down], 0.0) / -column[down]) if down.size else np.inf
            if down_step < up_step:
                self._flip(col)
            row = self._leaving(col)
            step = self.rhs[row] / self.tableau[row, col]
            if step > self.solver.cost_tol:
                self.moved_along_optimal_face = True
            self.pivot(row, col)

    def coefficients(self) -> np.ndarray:
        beta = np.zeros(self.k)
        for row, col in enumerate(self.basis):
            if col < self.k:
                beta[col] = self.sign[col] * self.rhs[row]
        return beta

    def interpolated_rows(self) -> np.ndarray:
        """Rows whose residual variables are both nonbasic."""
        n, k = self.n, self.k
        return np.flatnonzero(~(self.is_basic[k:k + n] | self.is_basic[k + n:]))

    def has_alternative_optimum(self) -> bool:
        """A zero reduced cost off the basis means the optimum is not unique."""
        off = ~self.is_basic & ~self.free
        return bool(np.any(self.reduced[off] <= self.cost_tol[off])) or self.moved_along_optimal_face


def _polish(design: np.ndarray, y: np.ndarray, rows: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Re-solve the interpolation system of the basis rows to remove pivot drift."""
    if rows.size != design.shape[1]:
        return beta
    system = design[rows]
    if np.linalg.cond(system) > 1e12:
        return beta
    return np.linalg.solve(system, y[rows])


def fit_lad(data: Dataset, solver: Optional[SolverConfig] = None) -> LadFit:
    """Fit the LAD hyperplane minimizing the sum of absolute residuals.

    Args:
        data: Observations to fit
        solver: Tolerances (defaults to the global config)

    Returns:
        LadFit with the basis labels of the final simplex vertex. The fit
        is marked degenerate when more than p+1 residuals are zero or the
        optimum is not unique; the deterministic vertex is still returned.
    """
    solver = solver or config.solver
    design = data.design()
    y = data.y

    tableau = L1Tableau(design, y, solver)
    tableau.solve()

    rows = tableau.interpolated_rows()
    beta = _polish(design, y, rows, tableau.coefficients())
    residuals = y - design @ beta
    eps = zero_tolerance(y, solver)

    zero_count = int(np.sum(np.abs(residuals) <= eps))
    degenerate = (
        rows.size != data.p + 1
        or zero_count > data.p + 1
        or tableau.has_alternative_optimum()
    )
    logger.debug(
        f"LAD fit n={data.n} p={data.p}: {tableau.iterations} pivots, "
        f"zero residuals={zero_count}, degenerate={degenerate}"
    )

    return LadFit(
        beta=beta,
        residuals=residuals,
        basis=tuple(data.labels[i] for i in rows),
        objective=float(np.sum(np.abs(residuals))),
        degenerate=degenerate,
        labels=data.labels,
        iterations=tableau.iterations,
        zero_tol=eps,
    )


def brute_force_lad(data: Dataset, solver: Optional[SolverConfig] = None) -> LadFit:
    """Exact LAD fit by enumerating every hyperplane through p+1 observations.

    Only for small instances (n <= 15, p <= 3). Singular (p+1)-subsets are
    skipped; ties in the objective keep the lexicographically smallest
    basis.
    """
    solver = solver or config.solver
    if data.n > BRUTE_FORCE_MAX_N or data.p > BRUTE_FORCE_MAX_P:
        raise DataError(
            f"brute force limited to n <= {BRUTE_FORCE_MAX_N} and p <= {BRUTE_FORCE_MAX_P}, "
            f"got n={data.n} p={data.p}"
        )
    design = data.design()
    y = data.y

    best_rows, best_beta, best_objective = None, None, np.inf
    for rows in combinations(range(data.n), data.p + 1):
        system = design[list(rows)]
        if np.linalg.cond(system) > 1e12:
            continue
        beta = np.linalg.solve(system, y[list(rows)])
        objective = float(np.sum(np.abs(y - design @ beta)))
        if best_rows is None or objective < best_objective - 1e-12 * max(1.0, best_objective):
            best_rows, best_beta, best_objective = rows, beta, objective

    if best_rows is None:
        raise NumericalError("every candidate interpolation system is singular")

    residuals = y - design @ best_beta
    eps = zero_tolerance(y, solver)
    return LadFit(
        beta=best_beta,
        residuals=residuals,
        basis=tuple(data.labels[i] for i in best_rows),
        objective=float(np.sum(np.abs(residuals))),
        degenerate=int(np.sum(np.abs(residuals) <= eps)) > data.p + 1,
        labels=data.labels,
        zero_tol=eps,
    )


def max_abs_residual_index(fit: LadFit, data: Dataset) -> int:
    """Label of the non-basis observation with the largest absolute residual.

    Residuals within the zero tolerance of the maximum are treated as tied
    and the smallest label wins.
    """
    if tuple(fit.labels) != tuple(data.labels):
        raise DataError("fit was not produced from this dataset")
    eps = fit.zero_tol if fit.zero_tol is not None else zero_tolerance(data.y)

    basis = set(fit.basis)
    candidates = np.array([label not in basis for label in data.labels])
    magnitudes = np.abs(np.asarray(fit.residuals, dtype=float))
    if not candidates.any() or np.max(magnitudes[candidates]) <= eps:
        raise DegenerateDataError("all residuals are zero: the data lie on a single hyperplane")

    top = np.max(magnitudes[candidates])
    tied = candidates & (magnitudes >= top - eps)
    return min(label for label, hit in zip(data.labels, tied) if hit)
