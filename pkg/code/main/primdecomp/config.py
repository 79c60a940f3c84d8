"""
Configuration and logging setup for primdecomp.

Values come from the environment (a .env file is loaded on import), with the
defaults below when a variable is not set.
"""
import os
import sys
import logging
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def _env_int(name, default):
    value = os.getenv(name)
    if value is None or value.strip() == '':
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got {value!r}")


@dataclass(frozen=True)
class Settings:
    log_folder: str = 'logs'
    output_folder: str = 'output'
    plot_folder: str = 'plots'
    max_cone_rank: int = 4
    fm_row_budget: int = 5000
    oracle_degree_budget: int = 16
    grid_margin: int = 1
    grid_recheck_margin: int = 3
    closedness_sample_budget: int = 200
    closedness_max_multiple: int = 64
    random_seed: int = 0

    @classmethod
    def from_env(cls):
        """Build settings from environment variables"""
        return cls(
            log_folder=os.getenv('LOG_FOLDER', 'logs'),
            output_folder=os.getenv('OUTPUT_FOLDER', 'output'),
            plot_folder=os.getenv('PLOT_FOLDER', 'plots'),
            max_cone_rank=_env_int('MAX_CONE_RANK', 4),
            fm_row_budget=_env_int('FM_ROW_BUDGET', 5000),
            oracle_degree_budget=_env_int('ORACLE_DEGREE_BUDGET', 16),
            grid_margin=_env_int('GRID_MARGIN', 1),
            grid_recheck_margin=_env_int('GRID_RECHECK_MARGIN', 3),
            closedness_sample_budget=_env_int('CLOSEDNESS_SAMPLE_BUDGET', 200),
            closedness_max_multiple=_env_int('CLOSEDNESS_MAX_MULTIPLE', 64),
            random_seed=_env_int('RANDOM_SEED', 0),
        )


settings = Settings.from_env()


def session_timestamp():
    return datetime.now().strftime("%Y%m%d_%H%M%S")


def session_folders(prefix, timestamp, log_folder=None, output_folder=None, plot_folder=None):
    """
    Create the session-specific log/output/plot folders

    Args:
        prefix: Session name prefix, e.g. 'check' or 'render'
        timestamp: Timestamp string shared by all folders of the session
        log_folder, output_folder, plot_folder: Base folders (configured values when None)

    Returns:
        Tuple of (log, output, plot) session folder paths
    """
    session_folder = f"{prefix}_{timestamp}"
    folders = (
        Path(log_folder or settings.log_folder) / session_folder,
        Path(output_folder or settings.output_folder) / session_folder,
        Path(plot_folder or settings.plot_folder) / session_folder,
    )
    for folder in folders:
        folder.mkdir(parents=True, exist_ok=True)
    return folders


def setup_logging(log_file=None, level=logging.INFO):
    """Setup logging configuration for the primdecomp package logger"""
    logger = logging.getLogger('primdecomp')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file is not None:
        handlers.append(logging.FileHandler(log_file))
    for handler in handlers:
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    logger.setLevel(level)
    logger.propagate = False
    logger.info(f"Logging started at {datetime.now()}")
    return logger
