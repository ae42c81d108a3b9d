"""
Export service for certificate reports in tab-separated form
"""

import logging
from pathlib import Path

import pandas as pd

from ..core.numerics import format_scalar
from .certificate_service import CertificateOutcome, ContinuousOptimumOutcome, InfeasibleOutcome

logger = logging.getLogger(__name__)


class ExportService:
    """Service for exporting run results"""

    def __init__(self, app_state):
        self.app_state = app_state

    def certificate_table(self) -> pd.DataFrame:
        """One row per certificate point, with the iteration log joined on k"""
        outcome = self.app_state.outcome
        if isinstance(outcome, InfeasibleOutcome):
            return pd.DataFrame(columns=['k', 'value'])
        if isinstance(outcome, ContinuousOptimumOutcome):
            row = {'k': 0, 'value': format_scalar(outcome.value)}
            row.update({f'z_{i + 1}': format_scalar(x) for i, x in enumerate(outcome.point)})
            return pd.DataFrame([row])

        cert = outcome.certificate
        rows = []
        for k, (z, a, value, h) in enumerate(zip(cert.points, cert.subgradients, cert.values,
                                                 cert.polyhedron.halfspaces), start=1):
            row = {'k': k}
            row.update({f'z_{i + 1}': format_scalar(x) for i, x in enumerate(z)})
            row.update({f'a_{i + 1}': format_scalar(x) for i, x in enumerate(a)})
            row['value'] = format_scalar(value)
            row['offset'] = format_scalar(h.offset)
            rows.append(row)
        table = pd.DataFrame(rows)
        if isinstance(outcome, CertificateOutcome) and outcome.iterations:
            log = pd.DataFrame([{'k': r.k, 'face_dim': r.face_dim, 'tie_set_size': r.tie_set_size}
                                for r in outcome.iterations])
            table = table.merge(log, on='k', how='left')
        return table

    def export_tsv(self, path: str) -> str:
        """Write the certificate table as TSV (exact values as 'p/q' strings)"""
        table = self.certificate_table()
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        table.to_csv(path, sep='\t', index=False)
        logger.info(f"📄 Wrote {len(table)} rows to {path}")
        return str(path)
