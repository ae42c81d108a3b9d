"""
report - tabulate a solve document for external plotting
"""

from . import Command
from ...app_state import CommandResult
from ...config import EXIT_CODES
from ...services.export_service import ExportService


class ReportCommand(Command):
    summary = 'write the certificate rows and iteration log as TSV'

    def create(self, parser):
        parser.add_argument('certificate', help='document written by solve')
        parser.add_argument('--tsv', required=True, help='output TSV file')

    def run(self, args) -> CommandResult:
        self.app_state.outcome = self.documents.parse_outcome(self.documents.load(args.certificate))
        path = ExportService(self.app_state).export_tsv(args.tsv)
        return CommandResult(EXIT_CODES['success'], {'tsv': path})
