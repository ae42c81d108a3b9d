"""
Command classes, one per subcommand, all sharing the application state
"""

import sys
from typing import Any, Dict, Optional

from ...core.numerics import parse_scalar
from ...services.document_service import DocumentService


class Command:
    """Shared plumbing: flag overrides and document output"""
    summary = ''

    def __init__(self, app_state):
        self.app_state = app_state
        self.documents = DocumentService()

    def create(self, parser):
        raise NotImplementedError

    def run(self, args):
        raise NotImplementedError

    def flags(self, args) -> Dict[str, Any]:
        """Command-line overrides that were actually given"""
        flags = {'cross_check': getattr(args, 'cross_check', False) or None}
        if args.box_inflate is not None:
            flags['box_inflate'] = parse_scalar(args.box_inflate, '--box-inflate')
        if args.enum_cap is not None:
            flags['enum_cap'] = args.enum_cap
        if args.epsilon is not None:
            flags['epsilon'] = parse_scalar(args.epsilon, '--epsilon')
        return flags

    def emit(self, document: Dict[str, Any], path: Optional[str] = None):
        if path:
            self.documents.save(document, path)
        else:
            sys.stdout.write(self.documents.dumps(document))
