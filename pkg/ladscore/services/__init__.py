"""Fitting, scoring and detection services."""

from .lad import fit_lad, brute_force_lad, max_abs_residual_index, zero_tolerance
from .scores import ScoreTable, ScoreSummary, compute_scores, score_summary, resolve_threads
from .detectors import DetectionReport, RoundTrace, detect_leverage, detect_outliers
from .classical import ClassicalReport, OlsFit, OutlierRule, classical_flags, fit_ols, max_studentized_residual_rule

__all__ = [
    "fit_lad",
    "brute_force_lad",
    "max_abs_residual_index",
    "zero_tolerance",
    "ScoreTable",
    "ScoreSummary",
    "compute_scores",
    "score_summary",
    "resolve_threads",
    "DetectionReport",
    "RoundTrace",
    "detect_leverage",
    "detect_outliers",
    "ClassicalReport",
    "OlsFit",
    "OutlierRule",
    "classical_flags",
    "fit_ols",
    "max_studentized_residual_rule",
]
