"""
Document service for instance, certificate and witness JSON files

All numbers are exact: bare integers or "p/q" strings on input, canonical "p/q" strings
on output. Parse errors carry the path of the offending field.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..config import SOLVER_CONFIG
from ..core.feasible_set import DiscreteSet, ExplicitPoints, IntegerPolytope
from ..core.geometry import Halfspace, Polyhedron
from ..core.helly import PointHull, WitnessConfiguration, WitnessReport
from ..core.numerics import Matrix, Vector, format_scalar, parse_scalar
from ..core.objective import AffinePiece, ConvexFunction, MaxAffine, Quadratic, Sum
from ..errors import ContractViolation, DocumentError, MixedIntegerNotSupported
from .certificate_service import (
    CertificateOutcome,
    ContinuousOptimumOutcome,
    InfeasibleOutcome,
    IterationRecord,
    SolveOutcome,
    StrongCertificate,
    VerificationReport,
)
from .duality_service import DualReport

logger = logging.getLogger(__name__)

OPTION_KEYS = ('box_inflate', 'enum_cap', 'epsilon')


@dataclass
class Instance:
    dimension: int
    objective: ConvexFunction
    set: DiscreteSet
    options: Dict[str, Any] = field(default_factory=dict)


def plain(value):
    """Exact values to JSON-ready data (scalars become 'p/q' strings)"""
    if isinstance(value, Vector):
        return [format_scalar(x) for x in value]
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {k: plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return format_scalar(value)


class DocumentService:
    """Parse and serialize the JSON documents used on the command line"""

    def load(self, path: str) -> Dict[str, Any]:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise DocumentError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
        except OSError as e:
            raise DocumentError(f"cannot read {path}: {e.strerror}")
        if not isinstance(data, dict):
            raise DocumentError("top-level JSON value must be an object")
        return data

    def dumps(self, document: Dict[str, Any]) -> str:
        return json.dumps(document, indent=2, ensure_ascii=False) + '\n'

    def save(self, document: Dict[str, Any], path: str) -> str:
        Path(path).write_text(self.dumps(document), encoding='utf-8')
        return str(path)

    # ---- reading helpers ----

    def _require(self, data: Dict[str, Any], key: str, where: str):
        if not isinstance(data, dict):
            raise DocumentError("expected an object", where or None)
        if key not in data:
            raise DocumentError("missing field", f"{where}.{key}" if where else key)
        return data[key]

    def _list(self, value, where: str) -> List:
        if not isinstance(value, list):
            raise DocumentError("expected a list", where)
        return value

    def _dimension(self, data: Dict[str, Any]) -> int:
        n = self._require(data, 'dimension', '')
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise DocumentError("dimension must be a positive integer", 'dimension')
        return n

    def _vector(self, value, n: int, where: str) -> Vector:
        entries = self._list(value, where)
        if len(entries) != n:
            raise DocumentError(f"expected {n} entries, got {len(entries)}", where)
        return Vector(tuple(parse_scalar(x, f"{where}[{i}]") for i, x in enumerate(entries)))

    def _halfspaces(self, value, n: int, where: str) -> Polyhedron:
        halfspaces = []
        for i, row in enumerate(self._list(value, where)):
            at = f"{where}[{i}]"
            normal = self._vector(self._require(row, 'normal', at), n, f"{at}.normal")
            offset = parse_scalar(self._require(row, 'offset', at), f"{at}.offset")
            try:
                halfspaces.append(Halfspace(normal, offset))
            except ContractViolation as e:
                raise DocumentError(str(e), at)
        return Polyhedron(n, tuple(halfspaces))

    def _integer(self, value, where: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise DocumentError("expected an integer", where)
        return value

    # ---- objective and set ----

    def parse_objective(self, data, n: int, where: str = 'objective') -> ConvexFunction:
        kind = self._require(data, 'type', where)
        try:
            if kind == 'quadratic':
                rows = self._list(self._require(data, 'A', where), f"{where}.A")
                if len(rows) != n:
                    raise DocumentError(f"expected {n} rows, got {len(rows)}", f"{where}.A")
                A = Matrix(tuple(self._vector(r, n, f"{where}.A[{i}]").entries for i, r in enumerate(rows)), n)
                b = self._vector(data.get('b', [0] * n), n, f"{where}.b")
                c = parse_scalar(data.get('c', 0), f"{where}.c")
                return Quadratic(A, b, c)
            if kind == 'max_affine':
                pieces = []
                for i, piece in enumerate(self._list(self._require(data, 'pieces', where), f"{where}.pieces")):
                    at = f"{where}.pieces[{i}]"
                    gradient = self._vector(self._require(piece, 'gradient', at), n, f"{at}.gradient")
                    pieces.append(AffinePiece(gradient, parse_scalar(piece.get('offset', 0), f"{at}.offset")))
                return MaxAffine(tuple(pieces))
            if kind == 'sum':
                terms = self._list(self._require(data, 'terms', where), f"{where}.terms")
                return Sum(tuple(self.parse_objective(t, n, f"{where}.terms[{i}]") for i, t in enumerate(terms)))
        except ContractViolation as e:
            raise DocumentError(str(e), where)
        raise DocumentError(f"unknown objective type {kind!r}", f"{where}.type")

    def parse_set(self, data, n: int, where: str = 'set') -> DiscreteSet:
        kind = self._require(data, 'type', where)
        if kind in ('mixed_integer', 'mixed') or 'continuous' in data:
            raise MixedIntegerNotSupported(
                "sets with continuous coordinates cannot be enumerated; only finite sets are supported")
        try:
            if kind == 'points':
                points = self._list(self._require(data, 'points', where), f"{where}.points")
                return ExplicitPoints.deduplicated(
                    self._vector(p, n, f"{where}.points[{i}]") for i, p in enumerate(points))
            if kind == 'integer_polytope':
                constraints = self._halfspaces(data.get('constraints', []), n, f"{where}.constraints")
                box = self._require(data, 'box', where)
                lower = self._list(self._require(box, 'lower', f"{where}.box"), f"{where}.box.lower")
                upper = self._list(self._require(box, 'upper', f"{where}.box"), f"{where}.box.upper")
                return IntegerPolytope(
                    constraints,
                    tuple(self._integer(v, f"{where}.box.lower[{i}]") for i, v in enumerate(lower)),
                    tuple(self._integer(v, f"{where}.box.upper[{i}]") for i, v in enumerate(upper)),
                )
        except ContractViolation as e:
            raise DocumentError(str(e), where)
        raise DocumentError(f"unknown set type {kind!r}", f"{where}.type")

    def parse_instance(self, data: Dict[str, Any]) -> Instance:
        n = self._dimension(data)
        objective = self.parse_objective(self._require(data, 'objective', ''), n)
        discrete = self.parse_set(self._require(data, 'set', ''), n)
        options = {}
        for key, value in (data.get('options') or {}).items():
            if key not in OPTION_KEYS:
                raise DocumentError("unknown option", f"options.{key}")
            options[key] = parse_scalar(value, f"options.{key}")
        if 'enum_cap' in options:
            cap = options['enum_cap']
            if cap.denominator != 1 or cap < 1:
                raise DocumentError("expected a positive integer", 'options.enum_cap')
            options['enum_cap'] = int(cap)
        return Instance(n, objective, discrete, options)

    def parse_witness(self, data: Dict[str, Any]) -> WitnessConfiguration:
        n = self._dimension(data)
        discrete = self.parse_set(self._require(data, 'set', ''), n)
        regions = []
        for i, region in enumerate(self._list(self._require(data, 'regions', ''), 'regions')):
            at = f"regions[{i}]"
            kind = self._require(region, 'type', at)
            if kind == 'hull':
                points = self._list(self._require(region, 'points', at), f"{at}.points")
                regions.append(PointHull(tuple(self._vector(p, n, f"{at}.points[{j}]") for j, p in enumerate(points)), n))
            elif kind == 'polyhedron':
                regions.append(self._halfspaces(self._require(region, 'halfspaces', at), n, f"{at}.halfspaces"))
            else:
                raise DocumentError(f"unknown region type {kind!r}", f"{at}.type")
        return WitnessConfiguration(tuple(regions), discrete)

    # ---- solve outcomes ----

    def _iterations(self, data, n: int) -> List[IterationRecord]:
        records = []
        for i, item in enumerate(self._list(data, 'provenance.iterations')):
            at = f"provenance.iterations[{i}]"
            records.append(IterationRecord(
                self._integer(self._require(item, 'k', at), f"{at}.k"),
                self._vector(self._require(item, 'point', at), n, f"{at}.point"),
                parse_scalar(self._require(item, 'value', at), f"{at}.value"),
                self._vector(self._require(item, 'subgradient', at), n, f"{at}.subgradient"),
                self._integer(self._require(item, 'face_dim', at), f"{at}.face_dim"),
                self._integer(self._require(item, 'tie_set_size', at), f"{at}.tie_set_size"),
            ))
        return records

    def parse_outcome(self, data: Dict[str, Any]) -> SolveOutcome:
        kind = self._require(data, 'kind', '')
        if kind == 'infeasible':
            return InfeasibleOutcome(data.get('note', InfeasibleOutcome.note))
        n = self._dimension(data)
        iterations = tuple(self._iterations((data.get('provenance') or {}).get('iterations', []), n))
        if kind == 'continuous_optimum':
            return ContinuousOptimumOutcome(
                self._vector(self._require(data, 'point', ''), n, 'point'),
                parse_scalar(self._require(data, 'value', ''), 'value'),
                data.get('note', ContinuousOptimumOutcome.note),
                iterations,
            )
        if kind != 'certificate':
            raise DocumentError(f"unknown outcome kind {kind!r}", 'kind')
        points = [self._vector(p, n, f"points[{i}]")
                  for i, p in enumerate(self._list(self._require(data, 'points', ''), 'points'))]
        subgradients = [self._vector(a, n, f"subgradients[{i}]")
                        for i, a in enumerate(self._list(self._require(data, 'subgradients', ''), 'subgradients'))]
        values = [parse_scalar(v, f"values[{i}]")
                  for i, v in enumerate(self._list(self._require(data, 'values', ''), 'values'))]
        polyhedron = self._halfspaces(self._require(data, 'polyhedron', ''), n, 'polyhedron')
        try:
            certificate = StrongCertificate(tuple(points), tuple(subgradients), tuple(values), polyhedron)
        except ContractViolation as e:
            raise DocumentError(str(e))
        optimum = parse_scalar(data['optimum'], 'optimum') if 'optimum' in data else certificate.optimum
        argmin = self._vector(data['argmin'], n, 'argmin') if 'argmin' in data else certificate.argmin
        return CertificateOutcome(certificate, optimum, argmin, iterations)

    def _provenance(self, iterations) -> Dict[str, Any]:
        return {
            'version': SOLVER_CONFIG['version'],
            'tie_break': SOLVER_CONFIG['tie_break'],
            'iterations': [
                {
                    'k': r.k,
                    'point': plain(r.point),
                    'value': plain(r.value),
                    'subgradient': plain(r.subgradient),
                    'face_dim': r.face_dim,
                    'tie_set_size': r.tie_set_size,
                } for r in iterations
            ],
        }

    def serialize_outcome(self, outcome: SolveOutcome, dimension: Optional[int] = None) -> Dict[str, Any]:
        if isinstance(outcome, InfeasibleOutcome):
            document = {'kind': outcome.kind}
            if dimension is not None:
                document['dimension'] = dimension
            document['note'] = outcome.note
            document['provenance'] = self._provenance(())
            return document
        if isinstance(outcome, ContinuousOptimumOutcome):
            return {
                'kind': outcome.kind,
                'dimension': len(outcome.point),
                'point': plain(outcome.point),
                'value': plain(outcome.value),
                'note': outcome.note,
                'provenance': self._provenance(outcome.iterations),
            }
        cert = outcome.certificate
        return {
            'kind': outcome.kind,
            'dimension': cert.dimension,
            'k': cert.k,
            'optimum': plain(outcome.optimum),
            'argmin': plain(outcome.argmin),
            'points': plain(cert.points),
            'subgradients': plain(cert.subgradients),
            'values': plain(cert.values),
            'polyhedron': [{'normal': plain(h.normal), 'offset': plain(h.offset)}
                           for h in cert.polyhedron.halfspaces],
            'provenance': self._provenance(outcome.iterations),
        }

    # ---- reports ----

    def serialize_verification(self, report: VerificationReport) -> Dict[str, Any]:
        document = {
            'passed': report.passed,
            'verdicts': [{'name': v.name, 'passed': v.passed, 'failures': plain(v.failures)}
                         for v in report.verdicts],
        }
        if report.epsilon is not None:
            document['epsilon'] = plain(report.epsilon)
            document['maximality'] = report.maximality
            document['families'] = report.families
            document['helly_bound'] = report.helly_bound
        return document

    def serialize_dual(self, report: DualReport) -> Dict[str, Any]:
        return {
            'bound': plain(report.bound),
            'primal': plain(report.primal),
            'gap': plain(report.gap),
            'strong': report.strong,
            'weak': report.weak,
            'facet_minima': [{'facet': m.index, 'value': plain(m.value), 'point': plain(m.point)}
                             for m in report.facet_minima],
            'box': {'lower': plain(report.box.lower), 'upper': plain(report.box.upper)},
            'continuous_minimizer': plain(report.continuous_minimizer),
            'neighborhood': report.neighborhood,
            's_free': report.s_free,
            's_free_witness': plain(report.s_free_witness),
        }

    def serialize_witness_report(self, report: WitnessReport) -> Dict[str, Any]:
        return {
            'valid': report.valid,
            'lower_bound': report.lower_bound,
            'failing_condition': report.failing_condition,
            'witness_point': plain(report.witness_point),
            'failing_index': report.failing_index,
        }
