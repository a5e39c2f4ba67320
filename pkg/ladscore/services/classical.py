"""Classical least-squares diagnostics.

Hat-matrix leverage (h_ii > 2(p+1)/n) and studentized residuals
(|r_i| / (sigma_hat * sqrt(1 - h_ii)) > 2), both from a QR decomposition
of the design matrix.
"""

from dataclasses import dataclass, field
from enum import Enum
import logging

import numpy as np

from ..errors import NumericalError
from ..models import Dataset

logger = logging.getLogger(__name__)

STUDENTIZED_CUTOFF = 2.0


class OutlierRule(str, Enum):
    ONE_SIDED = "one"
    TWO_SIDED = "two"


@dataclass(frozen=True, eq=False)
class OlsFit:
    beta: np.ndarray
    residuals: np.ndarray
    sigma_hat: float
    rss: float
    df: int
    q: np.ndarray = field(repr=False)

    @property
    def h_diag(self) -> np.ndarray:
        return np.sum(self.q ** 2, axis=1)


@dataclass
class ClassicalReport:
    labels: list[int]
    h_diag: np.ndarray
    student_res: np.ndarray
    sigma_hat: float
    leverage_cutoff: float
    rule: OutlierRule = OutlierRule.TWO_SIDED
    leverage_flags: list[int] = field(default_factory=list)
    outlier_flags: list[int] = field(default_factory=list)
    undefined: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "sigma_hat": self.sigma_hat,
            "leverage_cutoff": self.leverage_cutoff,
            "rule": self.rule.value,
            "leverage_flags": list(self.leverage_flags),
            "outlier_flags": list(self.outlier_flags),
            "undefined": list(self.undefined),
            "h_diag": {str(k): float(h) for k, h in zip(self.labels, self.h_diag)},
            "student_res": {
                str(k): None if np.isnan(r) else float(r) for k, r in zip(self.labels, self.student_res)
            },
        }


def fit_ols(data: Dataset) -> OlsFit:
    """Least-squares fit through the thin QR decomposition of the design."""
    design = data.design()
    q, r = np.linalg.qr(design)
    diag = np.abs(np.diag(r))
    if diag.min() <= 1e-12 * max(1.0, diag.max()):
        raise NumericalError("design matrix is rank deficient")

    beta = np.linalg.solve(r, q.T @ data.y)
    residuals = data.y - design @ beta
    rss = float(residuals @ residuals)
    df = data.n - data.p - 1
    return OlsFit(
        beta=beta,
        residuals=residuals,
        sigma_hat=float(np.sqrt(rss / df)),
        rss=rss,
        df=df,
        q=q,
    )


def _exceeds(values: np.ndarray, rule: OutlierRule) -> np.ndarray:
    if rule is OutlierRule.TWO_SIDED:
        return np.abs(values) > STUDENTIZED_CUTOFF
    return values > STUDENTIZED_CUTOFF


def classical_flags(data: Dataset, rule: OutlierRule = OutlierRule.TWO_SIDED) -> ClassicalReport:
    """Leverage and outlier flags from the classical cut-offs.

    Observations with h_ii = 1 have no studentized residual; they are
    reported in ``undefined`` and never flagged as outliers.
    """
    rule = OutlierRule(rule)
    fit = fit_ols(data)
    h = fit.h_diag
    cutoff = 2.0 * (data.p + 1) / data.n

    undefined = h >= 1.0 - 1e-12
    student = np.zeros(data.n)
    if fit.sigma_hat > 1e-12 * (1.0 + float(np.max(np.abs(data.y)))):
        scale = fit.sigma_hat * np.sqrt(np.clip(1.0 - h, 0.0, None))
        defined = ~undefined
        student[defined] = fit.residuals[defined] / scale[defined]
    else:
        logger.warning("exact fit: residual standard deviation is zero, no studentized residuals")
    student[undefined] = np.nan

    outliers = _exceeds(np.where(undefined, 0.0, student), rule) & ~undefined
    return ClassicalReport(
        labels=list(data.labels),
        h_diag=h,
        student_res=student,
        sigma_hat=fit.sigma_hat,
        leverage_cutoff=cutoff,
        rule=rule,
        leverage_flags=[k for k, hit in zip(data.labels, h > cutoff) if hit],
        outlier_flags=[k for k, hit in zip(data.labels, outliers) if hit],
        undefined=[k for k, hit in zip(data.labels, undefined) if hit],
    )


def max_studentized_residual_rule(data: Dataset, rule: OutlierRule = OutlierRule.TWO_SIDED) -> list[int]:
    """Single-pass comparator: flag only the largest studentized residual if it exceeds 2."""
    report = classical_flags(data, rule)
    values = np.where(np.isnan(report.student_res), 0.0, report.student_res)
    if OutlierRule(rule) is OutlierRule.TWO_SIDED:
        values = np.abs(values)
    top = int(np.argmax(values))
    return [report.labels[top]] if values[top] > STUDENTIZED_CUTOFF else []
