"""
Logging configuration for the gbc-forms library and CLI.
"""

import logging
import sys
from pathlib import Path

# Create logs directory if it doesn't exist
logs_dir = Path(__file__).parent.parent.parent / "logs"

_handlers = [logging.StreamHandler(sys.stderr)]  # stdout carries reports
try:
    logs_dir.mkdir(exist_ok=True)
    _handlers.append(logging.FileHandler(logs_dir / "gbc_forms.log"))
except OSError:
    pass

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=_handlers
)

# Create logger for the application
logger = logging.getLogger("gbc_forms")


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance for a specific module."""
    return logging.getLogger(f"gbc_forms.{name}")


def set_verbosity(verbose: bool = False, quiet: bool = False) -> None:
    """Adjust the application log level from CLI flags."""
    if verbose:
        logger.setLevel(logging.DEBUG)
    elif quiet:
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.INFO)
