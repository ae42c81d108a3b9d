"""
helly - check a Helly lower-bound witness
"""

from . import Command
from ...app_state import CommandResult
from ...config import EXIT_CODES
from ...core.helly import witness_report


class HellyCommand(Command):
    summary = 'verify a Helly-number witness configuration'

    def create(self, parser):
        parser.add_argument('witness', help='witness JSON file')

    def run(self, args) -> CommandResult:
        witness = self.documents.parse_witness(self.documents.load(args.witness))
        self.app_state.apply_overrides({}, self.flags(args))
        report = witness_report(witness, self.app_state.settings.enum_cap)
        self.app_state.witness_report = report
        document = self.documents.serialize_witness_report(report)
        self.emit(document)
        return CommandResult(EXIT_CODES['success'] if report.valid else EXIT_CODES['verification_failed'], document)
