"""Leverage point and outlier detection from leave-one-out scores.

Both detectors repeatedly score a shrinking working set S. The point with
the highest score is either flagged or parked in a quarantine set; a flag
returns every quarantined point to S, so points hidden behind a stronger
one get a second chance once it is gone.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Union
import logging

from ..errors import DataError
from ..models import Dataset
from .scores import compute_scores

logger = logging.getLogger(__name__)


class DetectionKind(str, Enum):
    LEVERAGE = "leverage"
    OUTLIERS = "outliers"


class Decision(str, Enum):
    FLAG = "flag"
    QUARANTINE = "quarantine"
    STOP = "stop"


class StopReason(str, Enum):
    SIZE_FLOOR_REACHED = "size-floor-reached"
    SCORE_SEQUENCE_BROKEN = "score-sequence-broken"
    FLAG_LIMIT_REACHED = "flag-limit-reached"


@dataclass
class RoundTrace:
    """One round: the working set size, its top-scoring point and the outcome."""
    round: int
    m: int
    k1: int
    score: int
    decision: Decision
    restored: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "m": self.m,
            "k1": self.k1,
            "score": self.score,
            "decision": self.decision.value,
            "restored": list(self.restored),
        }

    def audit_line(self) -> str:
        return (
            f"round={self.round} m={self.m} k1={self.k1} score={self.score} "
            f"decision={self.decision.value} restored={len(self.restored)}"
        )


@dataclass
class DetectionReport:
    kind: DetectionKind
    n: int
    flagged: list[int] = field(default_factory=list)
    rounds: list[RoundTrace] = field(default_factory=list)
    stop_reason: StopReason = StopReason.SIZE_FLOOR_REACHED

    @property
    def flag_scores(self) -> list[int]:
        return [r.score for r in self.rounds if r.decision is Decision.FLAG]

    def audit_lines(self) -> list[str]:
        return [f"{self.kind.value} {r.audit_line()}" for r in self.rounds]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "flagged": list(self.flagged),
            "stop_reason": self.stop_reason.value,
            "rounds": [r.to_dict() for r in self.rounds],
        }


def _argmax(scores: dict[int, int]) -> int:
    """Highest score, smallest label on ties."""
    return min(scores, key=lambda label: (-scores[label], label))


def _check_size(data: Dataset) -> None:
    if data.n < data.p + 3:
        raise DataError(f"detection needs n >= p+3 = {data.p + 3} observations, got {data.n}")


def _limit_reached(report: DetectionReport, limit: int) -> bool:
    if len(report.flagged) < limit:
        return False
    logger.info(f"{report.kind.value} flag limit of {limit} reached, stopping")
    report.stop_reason = StopReason.FLAG_LIMIT_REACHED
    return True


def _restore(data: Dataset, working: list[int], quarantine: list[int]) -> list[int]:
    """Working set with the quarantined points back, in dataset order."""
    members = set(working) | set(quarantine)
    return [label for label in data.labels if label in members]


def detect_leverage(data: Dataset, threads: Union[int, str, None] = None) -> DetectionReport:
    """Flag leverage points by their L scores.

    A point is flagged when L(k1) >= 8/9 (m-1) and L(k1) >= 3/4 (n-1);
    otherwise it is quarantined. The run stops once |S| <= 9/10 n or when
    n // 10 points have been flagged.
    """
    _check_size(data)
    n = data.n
    report = DetectionReport(kind=DetectionKind.LEVERAGE, n=n)
    working, quarantine = list(data.labels), []

    while not _limit_reached(report, n // 10):
        m = len(working)
        if m < data.p + 3:
            logger.warning(f"working set of {m} points is too small to score, stopping")
            report.stop_reason = StopReason.SIZE_FLOOR_REACHED
            break

        table = compute_scores(data.subset(working), threads=threads)
        k1 = _argmax(table.l_scores)
        score = table.l_scores[k1]
        working.remove(k1)

        if 9 * score >= 8 * (m - 1) and 4 * score >= 3 * (n - 1):
            report.flagged.append(k1)
            restored = tuple(quarantine)
            working = _restore(data, working, quarantine)
            quarantine = []
            decision = Decision.FLAG
        else:
            quarantine.append(k1)
            restored = ()
            decision = Decision.QUARANTINE

        trace = RoundTrace(len(report.rounds) + 1, m, k1, score, decision, restored)
        report.rounds.append(trace)
        logger.info(f"leverage {trace.audit_line()}")

        if 10 * len(working) <= 9 * n:
            report.stop_reason = StopReason.SIZE_FLOOR_REACHED
            break

    return report


def detect_outliers(data: Dataset, threads: Union[int, str, None] = None) -> DetectionReport:
    """Flag outliers by their O scores.

    A point with O(k1) = m-1 is flagged while the flagged scores keep
    decreasing by exactly one (LMS is the last flagged score); a point
    with O(k1) < m-1 is quarantined. The run stops when the decreasing
    run cannot continue, once |S| <= 4/5 n, or when n // 5 points have
    been flagged.
    """
    _check_size(data)
    n = data.n
    report = DetectionReport(kind=DetectionKind.OUTLIERS, n=n)
    working, quarantine = list(data.labels), []
    last_max_score = 0

    while not _limit_reached(report, n // 5):
        m = len(working)
        if m < data.p + 3:
            logger.warning(f"working set of {m} points is too small to score, stopping")
            report.stop_reason = StopReason.SIZE_FLOOR_REACHED
            break

        table = compute_scores(data.subset(working), threads=threads)
        k1 = _argmax(table.o_scores)
        score = table.o_scores[k1]
        round_no = len(report.rounds) + 1

        if score == m - 1:
            if last_max_score == 0 or score == last_max_score - 1:
                working.remove(k1)
                report.flagged.append(k1)
                last_max_score = score
                restored = tuple(quarantine)
                working = _restore(data, working, quarantine)
                quarantine = []
                trace = RoundTrace(round_no, m, k1, score, Decision.FLAG, restored)
            else:
                trace = RoundTrace(round_no, m, k1, score, Decision.STOP)
                report.rounds.append(trace)
                logger.info(f"outliers {trace.audit_line()}")
                report.stop_reason = StopReason.SCORE_SEQUENCE_BROKEN
                break
        else:
            working.remove(k1)
            quarantine.append(k1)
            trace = RoundTrace(round_no, m, k1, score, Decision.QUARANTINE)

        report.rounds.append(trace)
        logger.info(f"outliers {trace.audit_line()}")

        if 5 * len(working) <= 4 * n:
            report.stop_reason = StopReason.SIZE_FLOOR_REACHED
            break

    return report
