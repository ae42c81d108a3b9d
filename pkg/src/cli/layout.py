"""
Command-line layout: parser construction and command dispatch
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from ..config import EXIT_CODES, LOG_LEVELS, SOLVER_CONFIG
from ..errors import CertificateError, DocumentError, UsageError
from .commands.helly import HellyCommand
from .commands.report import ReportCommand
from .commands.solve import SolveCommand
from .commands.verify import VerifyCommand

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit code 1"""

    def error(self, message):
        raise UsageError(message)


class MainLayout:
    """Top-level parser with one subcommand per command class"""

    def __init__(self, app_state):
        self.app_state = app_state
        self.parser = None
        self.commands = {}

    def create(self) -> argparse.ArgumentParser:
        """Create the parser and register every command"""
        common = _Parser(add_help=False)
        common.add_argument('--log-level', choices=LOG_LEVELS, default='WARNING',
                            help='logging verbosity on stderr (default WARNING)')
        common.add_argument('--box-inflate', dest='box_inflate', default=None,
                            help=f"dual box inflation factor, p/q (default {SOLVER_CONFIG['box_inflate']})")
        common.add_argument('--enum-cap', dest='enum_cap', type=int, default=None,
                            help=f"max integer box points to enumerate (default {SOLVER_CONFIG['enum_cap']})")
        common.add_argument('--epsilon', default=None,
                            help=f"maximality check epsilon, p/q (default {SOLVER_CONFIG['epsilon']})")

        self.parser = _Parser(prog='strongcert', description=SOLVER_CONFIG['title'])
        self.parser.add_argument('--version', action='version', version=SOLVER_CONFIG['version'])
        subparsers = self.parser.add_subparsers(dest='command', parser_class=_Parser)
        subparsers.required = True

        self.commands = {
            'solve': SolveCommand(self.app_state),
            'verify': VerifyCommand(self.app_state),
            'helly': HellyCommand(self.app_state),
            'report': ReportCommand(self.app_state),
        }
        for name, command in self.commands.items():
            command.create(subparsers.add_parser(name, parents=[common], help=command.summary))
        return self.parser

    def parse(self, argv: Optional[List[str]] = None) -> argparse.Namespace:
        if self.parser is None:
            self.create()
        return self.parser.parse_args(argv)

    def run(self, args: argparse.Namespace) -> int:
        """Run the selected command; library errors become exit code 1 with a JSON error on stderr"""
        try:
            result = self.commands[args.command].run(args)
        except CertificateError as e:
            self.report_error(e)
            return EXIT_CODES['usage']
        except Exception as e:
            logger.error(f"❌ Unexpected failure: {e}")
            self.report_error(e)
            return EXIT_CODES['usage']
        logger.info(f"Run summary: {self.app_state.export_state()}")
        return result.exit_code

    @staticmethod
    def report_error(error: Exception):
        payload = {
            'error': type(error).__name__,
            'message': error.reason if isinstance(error, DocumentError) else str(error),
            'field': getattr(error, 'field', None),
        }
        print(json.dumps(payload, ensure_ascii=False), file=sys.stderr)
