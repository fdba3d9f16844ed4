"""
LorentzEig - Utility Functions
Configuration loading, number formatting, matrix parsing and random sampling
"""

import json
import os
import sys
from pathlib import Path
from typing import Any

import numpy as np
import yaml
from colorama import Fore, Style
from dotenv import load_dotenv
from loguru import logger

from src.core import InvalidMatrixError, Mat2, Tolerance


DEFAULT_CONFIG_PATH = "config/config.yaml"

_env_loaded = False


def load_environment() -> None:
    """Load a .env file once per process (no-op if absent)"""
    global _env_loaded
    if not _env_loaded:
        load_dotenv()
        _env_loaded = True


def load_config(config_path: str = DEFAULT_CONFIG_PATH) -> dict:
    """
    Load configuration from YAML file

    Args:
        config_path: Path to configuration file

    Returns:
        Configuration dictionary (empty if the file cannot be read)
    """
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            return yaml.safe_load(f) or {}
    except FileNotFoundError:
        logger.warning(f"Config file not found: {config_path}, using defaults")
        return {}
    except yaml.YAMLError as e:
        logger.warning(f"Error parsing config {config_path}: {e}, using defaults")
        return {}


def tolerance_from_config(config: dict) -> Tolerance:
    """
    Build the Tolerance from the `tolerance` section and the environment

    LORENTZ_EIG_TOL overrides eq_tol; set_tol is raised to match if needed.

    Args:
        config: Configuration dictionary

    Returns:
        Tolerance instance
    """
    load_environment()
    section = config.get('tolerance', {}) or {}
    eq_tol = float(section.get('eq_tol', Tolerance.eq_tol))
    set_tol = float(section.get('set_tol', Tolerance.set_tol))
    cone_tol = float(section.get('cone_tol', Tolerance.cone_tol))

    override = os.environ.get('LORENTZ_EIG_TOL')
    if override:
        eq_tol = float(override)
        set_tol = max(set_tol, eq_tol)
        logger.info(f"eq_tol overridden from environment: {eq_tol:g}")

    return Tolerance(eq_tol=eq_tol, set_tol=set_tol, cone_tol=cone_tol)


def configure_logging(config: dict) -> None:
    """
    Route loguru output to stderr (and optionally a rotating file)

    Args:
        config: Configuration dictionary
    """
    load_environment()
    section = config.get('logging', {}) or {}
    level = os.environ.get('LORENTZ_EIG_LOG_LEVEL', section.get('level', 'WARNING'))

    logger.remove()
    logger.enable("src")
    logger.add(sys.stderr, level=level.upper(),
               format="<level>{level: <8}</level> | {name}:{function} - {message}")

    log_file = section.get('file')
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        logger.add(log_file, level="DEBUG", rotation=section.get('rotation', '10 MB'))


def round_sig(value: float, digits: int = 12) -> float:
    """
    Round to a number of significant digits for output

    Args:
        value: Number to round
        digits: Significant digits

    Returns:
        Rounded float (negative zero normalized to 0.0)
    """
    rounded = float(f"{value:.{digits}g}")
    return 0.0 if rounded == 0 else rounded


def format_number(value: float, digits: int = 12) -> str:
    """Format a float with `digits` significant digits"""
    return f"{round_sig(value, digits):.{digits}g}"


def format_time(seconds: float) -> str:
    """
    Format seconds to human-readable time

    Args:
        seconds: Time in seconds

    Returns:
        Formatted time string
    """
    if seconds < 1:
        return f"{seconds * 1000:.1f}ms"
    elif seconds < 60:
        return f"{seconds:.1f}s"
    else:
        minutes = seconds / 60
        return f"{minutes:.1f}m"


def colorize(text: str, color: str, enabled: bool = True) -> str:
    """
    Wrap text in a colorama color

    Args:
        text: Text to color
        color: One of 'green', 'red', 'yellow', 'cyan'
        enabled: Return plain text when False

    Returns:
        Colored text
    """
    if not enabled:
        return text
    colors = {
        'green': Fore.GREEN,
        'red': Fore.RED,
        'yellow': Fore.YELLOW,
        'cyan': Fore.CYAN
    }
    return f"{colors.get(color, '')}{text}{Style.RESET_ALL}"


def parse_matrix(text: str) -> Mat2:
    """
    Parse a matrix from JSON object form or the compact "a,b;c,d" form

    Args:
        text: '{"a": 0, "b": 1, "c": 1, "d": 0}' or '0,1;1,0'

    Returns:
        Mat2

    Raises:
        InvalidMatrixError: malformed text or non-finite entries
    """
    text = text.strip()
    if text.startswith('{'):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidMatrixError(f"malformed matrix JSON: {e}") from e
        return Mat2.from_dict(data)

    rows = [row for row in text.split(';')]
    if len(rows) != 2:
        raise InvalidMatrixError(f"expected 'a,b;c,d', got {text!r}")
    entries = []
    for row in rows:
        cells = row.split(',')
        if len(cells) != 2:
            raise InvalidMatrixError(f"expected two entries per row, got {row!r}")
        try:
            entries.extend(float(cell) for cell in cells)
        except ValueError as e:
            raise InvalidMatrixError(f"non-numeric entry in {row!r}") from e
    return Mat2(*entries)


def read_json_argument(argument: str) -> Any:
    """
    Read JSON from an inline string, a file path, or '-' for stdin

    Args:
        argument: JSON text, path to a JSON file, or '-'

    Returns:
        Decoded JSON value

    Raises:
        ValueError: the text is not valid JSON
    """
    if argument == '-':
        text = sys.stdin.read()
    elif not argument.lstrip().startswith(('{', '[')) and Path(argument).is_file():
        text = Path(argument).read_text(encoding='utf-8')
    else:
        text = argument
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed JSON: {e}") from e


def random_matrices(rng: np.random.Generator,
                    count: int,
                    entry_range: float = 5.0,
                    symmetric: bool = False) -> np.ndarray:
    """
    Draw matrices with entries uniform in [-entry_range, entry_range]

    Args:
        rng: Seeded numpy generator
        count: Number of matrices
        entry_range: Half-width of the sampling interval
        symmetric: Draw symmetric matrices (c = b)

    Returns:
        Array of shape (count, 4) holding (a, b, c, d) rows
    """
    coords = rng.uniform(-entry_range, entry_range, size=(count, 4))
    if symmetric:
        coords[:, 2] = coords[:, 1]
    return coords


def random_cone_points(rng: np.random.Generator,
                       count: int,
                       scale: float = 10.0) -> np.ndarray:
    """
    Draw points of the planar Lorentz cone |x1| <= x2

    Args:
        rng: Seeded numpy generator
        count: Number of points
        scale: Upper bound for x2

    Returns:
        Array of shape (count, 2)
    """
    x2 = rng.uniform(0.0, scale, size=count)
    x1 = rng.uniform(-1.0, 1.0, size=count) * x2
    return np.column_stack([x1, x2])

