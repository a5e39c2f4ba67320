"""Leave-one-out L and O scores.

For each observation k the LAD model is refitted on the data without k.
Every basis observation of that fit earns one L point, and the non-basis
observation with the largest absolute residual earns one O point.
"""

from dataclasses import dataclass, field
from typing import Optional, Union
import logging
import os

from joblib import Parallel, delayed
from tqdm import tqdm

from ..config import config
from ..errors import DataError, UsageError
from ..models import Dataset
from .lad import fit_lad, max_abs_residual_index

logger = logging.getLogger(__name__)


@dataclass
class ScoreTable:
    """L and O scores of every observation, keyed by label."""
    l_scores: dict[int, int]
    o_scores: dict[int, int]
    n: int
    p: int
    degenerate_subsets: list[int] = field(default_factory=list)

    @property
    def l_sum(self) -> int:
        return sum(self.l_scores.values())

    @property
    def o_sum(self) -> int:
        return sum(self.o_scores.values())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "l_scores": {str(k): v for k, v in self.l_scores.items()},
            "o_scores": {str(k): v for k, v in self.o_scores.items()},
            "degenerate_subsets": list(self.degenerate_subsets),
        }


@dataclass
class ScoreSummary:
    """Observations ranked by L and by O; rows are (label, L, O)."""
    by_l: list[tuple[int, int, int]]
    by_o: list[tuple[int, int, int]]

    def to_dict(self) -> dict:
        return {
            "by_l": [{"label": k, "L": l, "O": o} for k, l, o in self.by_l],
            "by_o": [{"label": k, "L": l, "O": o} for k, l, o in self.by_o],
        }


def resolve_threads(threads: Union[int, str, None]) -> int:
    """Worker count from an int, "auto" or None (config default)."""
    if threads is None:
        threads = config.compute.threads
    if threads == "auto":
        return os.cpu_count() or 1
    try:
        count = int(threads)
    except (TypeError, ValueError):
        raise UsageError(f"threads must be a positive integer or 'auto', got {threads!r}") from None
    if count < 1:
        raise UsageError(f"threads must be a positive integer or 'auto', got {threads!r}")
    return count


def _score_subset(data: Dataset, deleted: int) -> tuple[int, tuple[int, ...], int, bool]:
    subset = data.without(deleted)
    fit = fit_lad(subset)
    return deleted, fit.basis, max_abs_residual_index(fit, subset), fit.degenerate


def compute_scores(
    data: Dataset,
    threads: Union[int, str, None] = None,
    progress: Optional[bool] = None,
) -> ScoreTable:
    """Score all n leave-one-out subsets.

    Args:
        data: Observations to score (n >= p+3)
        threads: Worker threads for the subset fits ("auto" = CPU count)
        progress: Show a progress bar on stderr

    Returns:
        ScoreTable; identical for any thread count because results are
        reduced in label order.
    """
    if data.n < data.p + 3:
        raise DataError(f"scoring needs n >= p+3 = {data.p + 3} observations, got {data.n}")
    workers = resolve_threads(threads)
    show_progress = config.compute.progress if progress is None else progress

    def collect(iterator) -> list:
        if show_progress:
            iterator = tqdm(iterator, total=data.n, desc="Scoring", leave=False)
        return list(iterator)

    if workers == 1:
        results = collect(_score_subset(data, k) for k in data.labels)
    else:
        parallel = Parallel(n_jobs=workers, prefer="threads", return_as="generator")
        results = collect(parallel(delayed(_score_subset)(data, k) for k in data.labels))

    l_scores = {label: 0 for label in data.labels}
    o_scores = {label: 0 for label in data.labels}
    degenerate = []
    for deleted, basis, top, is_degenerate in results:
        for label in basis:
            l_scores[label] += 1
        o_scores[top] += 1
        if is_degenerate:
            degenerate.append(deleted)

    if degenerate:
        logger.info(f"{len(degenerate)} of {data.n} leave-one-out fits were degenerate")
    return ScoreTable(l_scores=l_scores, o_scores=o_scores, n=data.n, p=data.p, degenerate_subsets=degenerate)


def score_summary(table: ScoreTable) -> ScoreSummary:
    """Rank observations by descending L and by descending O, ties by label."""
    rows = [(label, table.l_scores[label], table.o_scores[label]) for label in table.l_scores]
    return ScoreSummary(
        by_l=sorted(rows, key=lambda row: (-row[1], row[0])),
        by_o=sorted(rows, key=lambda row: (-row[2], row[0])),
    )
