"""
Tropical Dissimilarity Checker - Main entry point.
Exact m-dissimilarity vectors, determinant valuation checks and tropical Pluecker tests.
"""

import sys
import os
import logging
from pathlib import Path

# Add src directory to Python path for imports
if getattr(sys, 'frozen', False):
    # If frozen (compiled), we're in the executable
    base_path = sys._MEIPASS
else:
    # If not frozen, we're running from source
    base_path = Path(__file__).parent
    os.environ.setdefault('TROPDISSIM_DEV', '1')

# Add base path to system path for imports
sys.path.insert(0, str(base_path))

from utils.config import data_dir, get_config  # noqa: E402


def setup_logging(verbose: bool = False):
    """Configure logging for the application.

    Logs go to stderr (stdout carries the report) and, when logging.to_file
    is set in config, to a UTF-8 log file.
    """
    config = get_config()
    level_name = 'DEBUG' if verbose else str(config.get('logging.level', 'INFO')).upper()
    level = getattr(logging, level_name, logging.INFO)

    handlers = [logging.StreamHandler(sys.stderr)]
    log_file = None
    if config.get('logging.to_file', False):
        log_dir = Path('logs') if os.environ.get('TROPDISSIM_DEV') else data_dir() / 'logs'
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / 'tropdissim.log'
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))

    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers
    )

    logger = logging.getLogger(__name__)
    logger.debug(f"Python version: {sys.version}")
    if log_file:
        logger.debug(f"Log file: {log_file}")


def main(argv=None):
    """Main application entry point."""
    argv = sys.argv[1:] if argv is None else argv
    setup_logging(verbose='--verbose' in argv)
    logger = logging.getLogger(__name__)

    try:
        from cli.commands import dispatch
        code = dispatch(argv)
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        code = 2

    sys.exit(code)


if __name__ == "__main__":
    main()
