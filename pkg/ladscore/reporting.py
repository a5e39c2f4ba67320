"""Rendering of results as aligned text tables, CSV or JSON.

Every renderer returns a string; output is deterministic for identical
results so runs can be compared byte for byte.
"""

from dataclasses import dataclass
from io import StringIO
from typing import Iterable, Optional
import json

import pandas as pd

from .models import Dataset, LadFit
from .services.classical import ClassicalReport
from .services.detectors import DetectionReport
from .services.scores import ScoreSummary, ScoreTable

HADI_FOOTER = "Hadi's P-R plot method is not reproduced; its row of the comparison table is omitted."


@dataclass
class ComparisonBlock:
    """Classical and LAD-score detections for one dataset."""
    dataset: str
    classical: ClassicalReport
    leverage: DetectionReport
    outliers: DetectionReport

    def rows(self) -> list[tuple[str, str, list[int], list[int]]]:
        return [
            (self.dataset, "Classical", self.classical.leverage_flags, self.classical.outlier_flags),
            (self.dataset, "Ours", self.leverage.flagged, self.outliers.flagged),
        ]


def format_labels(labels: Iterable[int]) -> str:
    """Compact label list: runs of three or more become ranges, empty is '-'."""
    ordered = sorted(set(labels))
    if not ordered:
        return "-"
    parts, start, prev = [], ordered[0], ordered[0]
    for label in ordered[1:] + [None]:
        if label is not None and label == prev + 1:
            prev = label
            continue
        if prev - start >= 2:
            parts.append(f"{start}-{prev}")
        else:
            parts.extend(str(k) for k in range(start, prev + 1))
        if label is not None:
            start = prev = label
    return ", ".join(parts)


def _number(value: float, precision: int) -> str:
    return f"{value:.{precision}g}"


def _text_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _csv(frame: pd.DataFrame) -> str:
    buffer = StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue().rstrip("\n")


def _json(payload: dict) -> str:
    return json.dumps(payload, indent=2)


def render_fit(data: Dataset, fit: LadFit, fmt: str, precision: int = 6) -> str:
    names = ["intercept", *data.columns]
    if fmt == "json":
        return _json({"dataset": data.name, "n": data.n, "p": data.p, **fit.to_dict()})
    if fmt == "csv":
        basis = set(fit.basis)
        return _csv(pd.DataFrame({
            "label": list(fit.labels),
            "residual": [_number(r, precision) for r in fit.residuals],
            "basis": [int(k in basis) for k in fit.labels],
        }))

    lines = [
        f"Dataset: {data.name or '-'} (n={data.n}, p={data.p})",
        f"Objective: {_number(fit.objective, precision)}",
        f"Basis: {', '.join(str(k) for k in fit.basis)}",
        f"Degenerate: {'yes' if fit.degenerate else 'no'}",
        "",
        _text_table(["coefficient", "value"], [[n, _number(b, precision)] for n, b in zip(names, fit.beta)]),
        "",
        _text_table(
            ["label", "residual"],
            [[str(k), _number(r, precision)] for k, r in zip(fit.labels, fit.residuals)],
        ),
    ]
    return "\n".join(lines)


def render_scores(data: Dataset, table: ScoreTable, summary: ScoreSummary, fmt: str) -> str:
    if fmt == "json":
        return _json({
            "dataset": data.name,
            "n": table.n,
            "p": table.p,
            "l_sum": table.l_sum,
            "o_sum": table.o_sum,
            "degenerate_subsets": list(table.degenerate_subsets),
            **summary.to_dict(),
        })

    records = []
    for ordering, rows in (("L", summary.by_l), ("O", summary.by_o)):
        for rank, (label, l, o) in enumerate(rows, start=1):
            records.append({"ordering": ordering, "rank": rank, "label": label, "L": l, "O": o})
    if fmt == "csv":
        return _csv(pd.DataFrame(records))

    def listing(ordering: str) -> str:
        rows = [[str(r["rank"]), str(r["label"]), str(r["L"]), str(r["O"])] for r in records if r["ordering"] == ordering]
        return _text_table(["rank", "label", "L", "O"], rows)

    lines = [
        f"Dataset: {data.name or '-'} (n={table.n}, p={table.p})",
        f"Sum of L: {table.l_sum}  Sum of O: {table.o_sum}",
        f"Degenerate subsets: {format_labels(table.degenerate_subsets)}",
        "",
        "Sorted by L",
        listing("L"),
        "",
        "Sorted by O",
        listing("O"),
    ]
    return "\n".join(lines)


def render_diagnosis(
    data: Dataset,
    leverage: DetectionReport,
    outliers: DetectionReport,
    fmt: str,
    trace: bool = False,
) -> str:
    reports = (leverage, outliers)
    if fmt == "json":
        payload = {"dataset": data.name, "n": data.n, "p": data.p}
        for report in reports:
            entry = report.to_dict()
            if not trace:
                entry.pop("rounds")
            payload[report.kind.value] = entry
        return _json(payload)

    if fmt == "csv":
        flagged = _csv(pd.DataFrame(
            [
                {"detector": r.kind.value, "order": i, "label": label}
                for r in reports
                for i, label in enumerate(r.flagged, start=1)
            ],
            columns=["detector", "order", "label"],
        ))
        if not trace:
            return flagged
        rounds = _csv(pd.DataFrame(
            [
                {"detector": r.kind.value, **t.to_dict(), "restored": len(t.restored)}
                for r in reports
                for t in r.rounds
            ],
            columns=["detector", "round", "m", "k1", "score", "decision", "restored"],
        ))
        return f"{flagged}\n\n{rounds}"

    lines = [f"Dataset: {data.name or '-'} (n={data.n}, p={data.p})"]
    for report in reports:
        lines.append(
            f"{report.kind.value.capitalize()}: {format_labels(report.flagged)} "
            f"(stop: {report.stop_reason.value}, rounds: {len(report.rounds)})"
        )
    if trace:
        lines.append("")
        for report in reports:
            lines.extend(report.audit_lines())
    return "\n".join(lines)


def render_comparison(blocks: list[ComparisonBlock], fmt: str, rule: Optional[str] = None) -> str:
    rows = [row for block in blocks for row in block.rows()]
    if fmt == "json":
        return _json({
            "outlier_rule": rule,
            "rows": [
                {"dataset": d, "method": m, "leverages": sorted(lev), "outliers": sorted(out)}
                for d, m, lev, out in rows
            ],
            "note": HADI_FOOTER,
        })
    if fmt == "csv":
        return _csv(pd.DataFrame(
            [
                {"dataset": d, "method": m, "leverages": format_labels(lev), "outliers": format_labels(out)}
                for d, m, lev, out in rows
            ]
        ))

    table_rows = []
    for block in blocks:
        for i, (d, m, lev, out) in enumerate(block.rows()):
            table_rows.append([d if i == 0 else "", m, format_labels(lev), format_labels(out)])
    return "\n".join([_text_table(["Data", "Method", "Leverages", "Outliers"], table_rows), "", HADI_FOOTER])
