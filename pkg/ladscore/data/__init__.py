"""Dataset ingestion, bundled datasets and generators."""

from .datasets import (
    BUNDLED_NAMES,
    GENERATOR_NAMES,
    DatasetSource,
    bundled,
    generate,
    generate_threevariables,
    generate_twovariables,
    load_csv,
    save_csv,
)

__all__ = [
    "BUNDLED_NAMES",
    "GENERATOR_NAMES",
    "DatasetSource",
    "bundled",
    "generate",
    "generate_threevariables",
    "generate_twovariables",
    "load_csv",
    "save_csv",
]
