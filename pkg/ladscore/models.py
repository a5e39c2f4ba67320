"""Shared domain types for regression data and LAD fits.

Service-specific result types live next to the service that produces
them (scores, detection reports, classical diagnostics).
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional
import logging

import numpy as np

from .errors import DataError

logger = logging.getLogger(__name__)


def _readonly(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=float, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class Dataset:
    """n observations of p predictors and one response.

    Labels are stable observation identifiers (1-based row numbers unless
    given) and survive subsetting, so a label always names the same
    observation of the original data.
    """
    x: np.ndarray
    y: np.ndarray
    labels: tuple[int, ...] = ()
    name: str = ""
    columns: tuple[str, ...] = ()
    response_name: str = "y"

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        if x.ndim != 2 or y.ndim != 1:
            raise DataError(f"expected a 2-D predictor matrix and a 1-D response, got {x.shape} and {y.shape}")
        if x.shape[0] != y.shape[0]:
            raise DataError(f"dimension mismatch: {x.shape[0]} predictor rows but {y.shape[0]} responses")
        n, p = x.shape
        if p < 1:
            raise DataError("at least one predictor column is required")
        if n < p + 2:
            raise DataError(f"need at least p+2 = {p + 2} observations, got {n}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise DataError("all predictor and response values must be finite")

        labels = tuple(int(label) for label in self.labels) if len(self.labels) else tuple(range(1, n + 1))
        if len(labels) != n:
            raise DataError(f"{len(labels)} labels given for {n} observations")
        if len(set(labels)) != n:
            raise DataError("observation labels must be unique")

        columns = tuple(self.columns) if self.columns else tuple(f"x{j + 1}" for j in range(p))
        if len(columns) != p:
            raise DataError(f"{len(columns)} column names given for {p} predictors")

        object.__setattr__(self, "x", _readonly(x))
        object.__setattr__(self, "y", _readonly(y))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "columns", columns)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]

    def design(self) -> np.ndarray:
        """Design matrix with the intercept column first."""
        return np.column_stack([np.ones(self.n), self.x])

    def position(self, label: int) -> int:
        """Row position of an observation label."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise DataError(f"unknown observation label {label}") from None

    def subset(self, labels: Iterable[int]) -> "Dataset":
        """Dataset restricted to ``labels``, kept in the original row order."""
        wanted = set(labels)
        unknown = wanted.difference(self.labels)
        if unknown:
            raise DataError(f"unknown observation labels {sorted(unknown)}")
        rows = [i for i, label in enumerate(self.labels) if label in wanted]
        return Dataset(
            x=self.x[rows],
            y=self.y[rows],
            labels=tuple(self.labels[i] for i in rows),
            name=self.name,
            columns=self.columns,
            response_name=self.response_name,
        )

    def without(self, label: int) -> "Dataset":
        """Leave-one-out subset."""
        self.position(label)
        return self.subset(k for k in self.labels if k != label)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.columns == other.columns
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
        )

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "p": self.p,
            "columns": list(self.columns),
            "response": self.response_name,
            "labels": list(self.labels),
            "x": self.x.tolist(),
            "y": self.y.tolist(),
        }


@dataclass(frozen=True, eq=False)
class LadFit:
    """Fitted LAD hyperplane.

    ``basis`` holds the labels of the p+1 interpolated observations and
    ``labels`` the labels of all fitted observations in residual order.
    """
    beta: np.ndarray
    residuals: np.ndarray
    basis: tuple[int, ...]
    objective: float
    degenerate: bool
    labels: tuple[int, ...]
    iterations: int = 0
    zero_tol: Optional[float] = field(default=None)

    def to_dict(self) -> dict:
        return {
            "beta": self.beta.tolist(),
            "objective": self.objective,
            "basis": list(self.basis),
            "degenerate": self.degenerate,
            "iterations": self.iterations,
            "residuals": {str(label): float(r) for label, r in zip(self.labels, self.residuals)},
        }
