"""
verify - recheck a solve document against its instance and report duality
"""

import logging

from . import Command
from ...app_state import CommandResult
from ...config import EXIT_CODES
from ...services.certificate_service import CertificateOutcome, CertificateService
from ...services.document_service import plain
from ...services.duality_service import DualityService
from ...services.oracle_service import OracleConfig, OracleService

logger = logging.getLogger(__name__)


class VerifyCommand(Command):
    """Prints the verification report and, for certificates, the dual report"""
    summary = 'verify a certificate independently of the solver'

    def create(self, parser):
        parser.add_argument('instance', help='instance JSON file')
        parser.add_argument('certificate', help='document written by solve')
        parser.add_argument('--cross-check', dest='cross_check', action='store_true',
                            help='also compare the document with brute-force references')

    def run(self, args) -> CommandResult:
        instance = self.documents.parse_instance(self.documents.load(args.instance))
        outcome = self.documents.parse_outcome(self.documents.load(args.certificate))
        self.app_state.load_instance(instance, args.instance, self.flags(args))
        self.app_state.outcome = outcome
        settings = self.app_state.settings
        oracle = OracleService(OracleConfig(enum_cap=settings.enum_cap))

        report = CertificateService(settings.solver_config(), oracle).verify_outcome(
            outcome, instance.objective, instance.set, settings.epsilon)
        self.app_state.verification = report
        document = {'verification': self.documents.serialize_verification(report)}
        passed = report.passed

        if isinstance(outcome, CertificateOutcome) and passed:
            dual = DualityService(settings.solver_config(), oracle).duality_report(
                outcome.certificate, instance.objective, instance.set)
            self.app_state.dual = dual
            document['dual'] = self.documents.serialize_dual(dual)
            passed = passed and dual.strong

        if settings.cross_check:
            self.app_state.cross_check = oracle.cross_check(outcome, instance.objective, instance.set)
            document['cross_check'] = plain(self.app_state.cross_check)
            passed = passed and not self.app_state.cross_check

        if not passed:
            logger.warning(f"⚠️ Verification failed: {', '.join(report.failed_names()) or 'duality'}")
        self.emit(document)
        return CommandResult(EXIT_CODES['success'] if passed else EXIT_CODES['verification_failed'], document)
