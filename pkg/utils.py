"""
Utility functions for the ES-GA TSP solver.
"""
import os
import sys
from typing import List, Optional, Tuple

import pandas as pd
from loguru import logger

from config import INSTANCE_EXTENSION, KNOWN_OPTIMA, LOG_FORMAT, TSPLIB_DIR


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """
    Route loguru output to stderr at a level chosen by the CLI flags.

    Args:
        verbose: Show DEBUG messages
        quiet: Show only warnings and errors
    """
    level = "WARNING" if quiet else ("DEBUG" if verbose else "INFO")
    logger.remove()
    logger.add(sys.stderr, level=level, format=LOG_FORMAT)


def err_percent(length: float, optimum: int) -> float:
    """Percentage excess of a length over the optimum."""
    return 100.0 * (length - optimum) / optimum


def instance_name(path: str) -> str:
    """Instance name from a file path: basename without .tsp and compression suffixes."""
    name = os.path.basename(path)
    for suffix in (".gz", ".bz2", INSTANCE_EXTENSION):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name


def resolve_instance_path(path: str) -> str:
    """Return path as given if it exists, else look it up under TSPLIB_DIR."""
    if os.path.exists(path):
        return path
    candidate = os.path.join(TSPLIB_DIR, path)
    if os.path.exists(candidate):
        return candidate
    if not path.endswith(INSTANCE_EXTENSION):
        candidate = os.path.join(TSPLIB_DIR, path + INSTANCE_EXTENSION)
        if os.path.exists(candidate):
            return candidate
    return path


def read_manifest(path: str) -> List[Tuple[str, int]]:
    """
    Read a benchmark manifest of (instance path, optimum) pairs.

    CSV files need `path` and `optimum` columns; any other file is read as
    whitespace-separated `path optimum` lines. Lines starting with # are skipped.

    Args:
        path: Manifest file

    Returns:
        List[Tuple[str, int]]: Entries in file order
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Manifest not found: {path}")

    if path.endswith(".csv"):
        df = pd.read_csv(path, comment="#", skipinitialspace=True)
    else:
        df = pd.read_csv(path, sep=r"\s+", comment="#", header=None, names=["path", "optimum"],
                         engine="python")
    missing = {"path", "optimum"} - set(df.columns)
    if missing:
        raise ValueError(f"Manifest {path} lacks columns: {', '.join(sorted(missing))}")
    df = df.dropna(subset=["path", "optimum"])
    return [(str(p).strip(), int(o)) for p, o in zip(df["path"], df["optimum"])]


def known_optimum(path: str) -> Optional[int]:
    """Published optimum for a TSPLIB instance, if recorded."""
    return KNOWN_OPTIMA.get(instance_name(path))


def output_path(out_dir: str, name: str, extension: str, suffix: str = "") -> str:
    """Build <out_dir>/<name><suffix><extension>, creating out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, f"{name}{suffix}{extension}")


def parse_int_list(value: str) -> List[int]:
    """Parse a comma-separated list such as '20,30,40'."""
    items = [v.strip() for v in value.split(",") if v.strip()]
    if not items:
        raise ValueError(f"empty list: '{value}'")
    return [int(v) for v in items]
