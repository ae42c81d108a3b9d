"""
Main entry point for StrongCert - exact optimality certificates for discrete convex minimization
"""

import logging
import sys

from src.app_state import AppState
from src.cli.layout import MainLayout
from src.config import EXIT_CODES
from src.errors import UsageError


def configure_logging(level: str):
    logging.basicConfig(level=getattr(logging, level), format='%(levelname)s: %(message)s')


def main(argv=None) -> int:
    """Parse the command line and run one command"""
    app_state = AppState()
    layout = MainLayout(app_state)
    layout.create()
    try:
        args = layout.parse(argv)
    except UsageError as e:
        layout.report_error(e)
        return EXIT_CODES['usage']
    configure_logging(args.log_level)
    return layout.run(args)


if __name__ == "__main__":
    sys.exit(main())
