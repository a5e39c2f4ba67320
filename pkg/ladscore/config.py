"""Settings for ladscore.

Five sections, each a pydantic model:

- ``solver``: simplex tolerances (``LAD_ZERO_TOL``)
- ``compute``: worker threads and progress bars for the leave-one-out fits
- ``output``: default CLI format, studentized rule and printed precision
- ``simulation``: default seed and run count of the simulated datasets
- ``logging``: level and record format

Defaults come from ``LAD_*`` environment variables (a ``.env`` next to the
package is loaded first); a ``ladscore.yaml`` overrides them per section.
"""

import os
from pathlib import Path
from typing import Optional
import yaml
from pydantic import BaseModel

ENV_PREFIX = "LAD_"

# Load .env file if it exists
try:
    from dotenv import load_dotenv
    env_path = Path(__file__).parent.parent / ".env"
    if env_path.exists():
        load_dotenv(env_path)
except ImportError:
    pass  # python-dotenv not installed, skip


def _env(name: str) -> Optional[str]:
    value = os.getenv(ENV_PREFIX + name)
    if value is None or not value.strip():
        return None
    return value.strip()


def env_str(name: str, default: str) -> str:
    """LAD_<name> as a string."""
    value = _env(name)
    return default if value is None else value


def env_int(name: str, default: int) -> int:
    value = _env(name)
    return default if value is None else int(value)


def env_float(name: str, default: float) -> float:
    value = _env(name)
    return default if value is None else float(value)


def env_bool(name: str, default: bool) -> bool:
    """LAD_<name> as a flag; unrecognised values keep the default."""
    value = (_env(name) or "").lower()
    if value in ("true", "1", "yes", "on"):
        return True
    if value in ("false", "0", "no", "off"):
        return False
    return default


class SolverConfig(BaseModel):
    """Simplex tolerances."""
    # eps_zero = zero_tol * (1 + max|y|)
    zero_tol: float = env_float("ZERO_TOL", 1e-8)
    pivot_tol: float = 1e-11
    cost_tol: float = 1e-9
    max_iterations_factor: int = 50


class ComputeConfig(BaseModel):
    threads: int = env_int("THREADS", 1)
    progress: bool = env_bool("PROGRESS", False)


class OutputConfig(BaseModel):
    format: str = env_str("OUTPUT_FORMAT", "table")  # table, csv or json
    outlier_rule: str = env_str("OUTLIER_RULE", "two")  # one or two
    precision: int = 6


class SimulationConfig(BaseModel):
    default_seed: int = env_int("SEED", 2009)
    runs: int = 20


class LoggingConfig(BaseModel):
    level: str = env_str("LOG_LEVEL", "WARNING")
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class AppConfig(BaseModel):
    solver: SolverConfig = SolverConfig()
    compute: ComputeConfig = ComputeConfig()
    output: OutputConfig = OutputConfig()
    simulation: SimulationConfig = SimulationConfig()
    logging: LoggingConfig = LoggingConfig()


def load_config(config_path: Optional[str] = None) -> AppConfig:
    """Load configuration from YAML file, with env var overrides."""
    if config_path is None:
        # Look for config in common locations
        search_paths = [
            Path("ladscore.yaml"),
            Path("ladscore.yml"),
            Path(__file__).parent.parent / "ladscore.yaml",
        ]
        for path in search_paths:
            if path.exists():
                config_path = str(path)
                break

    if config_path and Path(config_path).exists():
        with open(config_path, "r") as f:
            data = yaml.safe_load(f) or {}

        # Parse nested configs, merging with env defaults
        config_data = {}

        if "solver" in data:
            solver_data = {**SolverConfig().model_dump(), **data["solver"]}
            config_data["solver"] = SolverConfig(**solver_data)

        if "compute" in data:
            compute_data = {**ComputeConfig().model_dump(), **data["compute"]}
            config_data["compute"] = ComputeConfig(**compute_data)

        if "output" in data:
            output_data = {**OutputConfig().model_dump(), **data["output"]}
            config_data["output"] = OutputConfig(**output_data)

        if "simulation" in data:
            sim_data = {**SimulationConfig().model_dump(), **data["simulation"]}
            config_data["simulation"] = SimulationConfig(**sim_data)

        if "logging" in data:
            logging_data = {**LoggingConfig().model_dump(), **data["logging"]}
            config_data["logging"] = LoggingConfig(**logging_data)

        return AppConfig(**config_data)

    # No config file, use env defaults
    return AppConfig()


# Global config instance
config = load_config()
