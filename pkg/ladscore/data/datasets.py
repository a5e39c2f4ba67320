"""Dataset ingestion, bundled classic datasets and simulated datasets."""

from pathlib import Path
from typing import IO, Literal, Optional, Union
import hashlib
import logging

import numpy as np
import pandas as pd
from pydantic import BaseModel, model_validator

from ..errors import DataError
from ..models import Dataset

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent

# name -> (file, response column, sha256)
BUNDLED = {
    "telephone": ("telephone.csv", "calls", "d0387ad4470c1270c783d639b2c3786f49df152bd1112d4b99d167ced623d6e5"),
    "hawkins": ("hawkins.csv", "y", "aa5b74f303b53fbb21f9d9fa45523ee4069ac7d72a16f12f19c2949815f41aea"),
    "scottish": ("scottish.csv", "time", "a929d02ff1cbc42150da61d4e1c44ca0105c3706aeda5204259c92183bb47bf0"),
}
BUNDLED_NAMES = tuple(BUNDLED)
GENERATOR_NAMES = ("twovariables", "threevariables")

# Contamination of the simulated datasets
CLEAN_ROWS = 50
LEVERAGE_X = (25.0, 28.0, 31.0)
# Two-predictor leverage rows, kept off a common line
LEVERAGE_XY = ((20.0, 0.0), (0.0, 20.0), (16.0, 16.0))
OUTLIER_SHIFT = 15.0
INTERCEPT = 4.0


def _resolve_response(columns: list[str], response_column: Union[int, str, None]) -> str:
    if response_column is None:
        return columns[-1]
    if isinstance(response_column, str) and response_column in columns:
        return response_column
    try:
        position = int(response_column)
    except (TypeError, ValueError):
        raise DataError(f"response column {response_column!r} not found; columns are {columns}") from None
    if not -len(columns) <= position < len(columns):
        raise DataError(f"response column index {position} out of range for {len(columns)} columns")
    return columns[position]


def load_csv(
    path: Union[str, Path],
    response_column: Union[int, str, None] = None,
    delimiter: str = ",",
    name: Optional[str] = None,
) -> Dataset:
    """Read a numeric table with a header row.

    Args:
        path: CSV file (UTF-8)
        response_column: Header name or 0-based position; defaults to the last column
        delimiter: Field separator (decimal point is always ".")
        name: Dataset name (defaults to the file stem)

    Returns:
        Dataset with the remaining columns as predictors in file order and
        labels 1..n
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"data file not found: {path}")

    try:
        header = pd.read_csv(path, sep=delimiter, header=None, nrows=1, dtype=str, encoding="utf-8")
        frame = pd.read_csv(path, sep=delimiter, dtype=str, keep_default_na=False, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataError(f"cannot parse {path}: {e}") from None

    columns = [str(c).strip() for c in header.iloc[0].tolist()]
    duplicates = sorted({c for c in columns if columns.count(c) > 1})
    if duplicates:
        raise DataError(f"duplicate header names in {path}: {duplicates}")
    frame.columns = columns

    # short rows come back as NaN even with keep_default_na=False
    frame = frame.fillna("").apply(lambda col: col.str.strip())
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    bad = numeric.isna().to_numpy()
    if bad.any():
        row, col = map(int, np.argwhere(bad)[0])
        cell = frame.iat[row, col]
        problem = "blank cell" if cell == "" else f"non-numeric value {cell!r}"
        raise DataError(f"{problem} at row {row + 1}, column {columns[col]!r} in {path}")

    response = _resolve_response(columns, response_column)
    predictors = [c for c in columns if c != response]
    if not predictors:
        raise DataError(f"{path} has no predictor columns")
    if len(frame) < len(predictors) + 3:
        raise DataError(f"{path} has {len(frame)} rows, fewer than p+3 = {len(predictors) + 3}")

    logger.info(f"Loaded {path}: n={len(frame)}, predictors={predictors}, response={response!r}")
    return Dataset(
        x=numeric[predictors].to_numpy(dtype=float),
        y=numeric[response].to_numpy(dtype=float),
        name=name or path.stem,
        columns=tuple(predictors),
        response_name=response,
    )


def bundled(name: str) -> Dataset:
    """One of the classic datasets shipped with the package."""
    if name not in BUNDLED:
        raise DataError(f"unknown bundled dataset {name!r}; valid options are {', '.join(BUNDLED_NAMES)}")
    filename, response, checksum = BUNDLED[name]
    path = DATA_DIR / filename
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    if digest != checksum:
        raise DataError(f"checksum mismatch for bundled dataset {name!r} ({path})")
    return load_csv(path, response_column=response, name=name)


def _simulate(seed: int, p: int, name: str) -> Dataset:
    rng = np.random.default_rng(seed)
    clean = rng.uniform(0.0, 10.0, size=(CLEAN_ROWS, p))
    if p == 2:
        leverage = np.array(LEVERAGE_XY)
    else:
        leverage = np.repeat(np.array(LEVERAGE_X).reshape(-1, 1), p, axis=1)
    outliers = rng.uniform(0.0, 10.0, size=(3, p))
    x = np.vstack([clean, leverage, outliers])
    y = x.sum(axis=1) + INTERCEPT + rng.normal(0.0, 1.0, size=x.shape[0])
    y[-3:] += OUTLIER_SHIFT
    return Dataset(x=x, y=y, name=name)


def generate_twovariables(seed: int) -> Dataset:
    """56 rows of Y = X1 + 4 + e; rows 51-53 leverage points, 54-56 outliers."""
    return _simulate(seed, 1, "twovariables")


def generate_threevariables(seed: int) -> Dataset:
    """56 rows of Y = X1 + X2 + 4 + e with leverage rows at (20, 0), (0, 20), (16, 16)."""
    return _simulate(seed, 2, "threevariables")


def generate(name: str, seed: int) -> Dataset:
    generators = {
        "twovariables": generate_twovariables,
        "threevariables": generate_threevariables,
    }
    if name not in generators:
        raise DataError(f"unknown generator {name!r}; valid options are {', '.join(GENERATOR_NAMES)}")
    return generators[name](seed)


def save_csv(data: Dataset, target: Union[str, Path, IO[str]], delimiter: str = ",") -> None:
    """Write a dataset as CSV (predictors then response)."""
    frame = pd.DataFrame(data.x, columns=list(data.columns))
    frame[data.response_name] = data.y
    frame.to_csv(target, sep=delimiter, index=False, float_format="%.17g", lineterminator="\n")


class DatasetSource(BaseModel):
    """Where a dataset comes from."""
    kind: Literal["csv-file", "bundled", "generated"]
    name: str
    seed: Optional[int] = None
    response_column: Optional[Union[int, str]] = None
    delimiter: str = ","

    @model_validator(mode="after")
    def _seed_iff_generated(self) -> "DatasetSource":
        if (self.kind == "generated") != (self.seed is not None):
            raise ValueError("a seed is required for generated datasets and only for them")
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return self

    def load(self) -> Dataset:
        if self.kind == "bundled":
            return bundled(self.name)
        if self.kind == "generated":
            return generate(self.name, self.seed)
        return load_csv(self.name, response_column=self.response_column, delimiter=self.delimiter)
