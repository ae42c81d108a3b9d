"""
solve - run the cutting-plane solver on an instance file
"""

import logging

from . import Command
from ...app_state import CommandResult
from ...config import EXIT_CODES
from ...services.certificate_service import CertificateService, InfeasibleOutcome
from ...services.document_service import plain
from ...services.oracle_service import OracleConfig, OracleService

logger = logging.getLogger(__name__)


class SolveCommand(Command):
    """Writes a certificate, continuous-optimum or infeasible document"""
    summary = 'compute a strong optimality certificate'

    def create(self, parser):
        parser.add_argument('instance', help='instance JSON file')
        parser.add_argument('-o', '--output', default=None, help='output file (default stdout)')
        parser.add_argument('--cross-check', dest='cross_check', action='store_true',
                            help='compare the result with brute-force references')

    def run(self, args) -> CommandResult:
        instance = self.documents.parse_instance(self.documents.load(args.instance))
        self.app_state.load_instance(instance, args.instance, self.flags(args))
        settings = self.app_state.settings
        oracle = OracleService(OracleConfig(enum_cap=settings.enum_cap))
        service = CertificateService(settings.solver_config(), oracle)

        logger.info(f"🔄 Solving {args.instance}")
        outcome = service.solve(instance.objective, instance.set)
        self.app_state.outcome = outcome
        document = self.documents.serialize_outcome(outcome, instance.dimension)

        exit_code = EXIT_CODES['infeasible'] if isinstance(outcome, InfeasibleOutcome) else EXIT_CODES['success']
        if settings.cross_check:
            self.app_state.cross_check = oracle.cross_check(outcome, instance.objective, instance.set)
            document['cross_check'] = plain(self.app_state.cross_check)
            if self.app_state.cross_check:
                exit_code = EXIT_CODES['verification_failed']
        self.emit(document, args.output)
        return CommandResult(exit_code, document)
