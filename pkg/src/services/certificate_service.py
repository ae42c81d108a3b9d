"""
Certificate service: the cutting-plane solver and its independent verifier

solve() repeatedly picks a minimizer of f among the points of S strictly inside the current
region and cuts it off with its relative-interior subgradient. verify() rechecks a finished
certificate from scratch without trusting anything the solver recorded.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from ..config import SOLVER_CONFIG, VERDICT_NAMES
from ..core.feasible_set import DiscreteSet, argmin_interior, contains, enumerate_points
from ..core.geometry import Halfspace, Polyhedron
from ..core.helly import bound_for, check_v_condition, iteration_bound
from ..core.numerics import Vector, to_scalar
from ..core.objective import ConvexFunction
from ..errors import ContractViolation, DegenerateCut, DimensionMismatch, InternalInvariantBroken
from .oracle_service import OracleConfig, OracleService

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IterationRecord:
    k: int
    point: Vector
    value: Fraction
    subgradient: Vector
    face_dim: int
    tie_set_size: int


@dataclass(frozen=True)
class StrongCertificate:
    """Points z_i of S, subgradients a_i, values f(z_i) and Q = {<a_i, x - z_i> <= 0}"""
    points: Tuple[Vector, ...]
    subgradients: Tuple[Vector, ...]
    values: Tuple[Fraction, ...]
    polyhedron: Polyhedron

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))
        object.__setattr__(self, 'subgradients', tuple(self.subgradients))
        object.__setattr__(self, 'values', tuple(to_scalar(v) for v in self.values))
        if not self.points:
            raise ContractViolation("certificate needs at least one point")
        if not len(self.points) == len(self.subgradients) == len(self.values):
            raise ContractViolation("certificate points, subgradients and values differ in length")
        for v in self.points + self.subgradients:
            if len(v) != self.polyhedron.dimension:
                raise DimensionMismatch(f"certificate vector of dimension {len(v)} in dimension {self.polyhedron.dimension}")

    @classmethod
    def from_cuts(cls, points, subgradients, values) -> 'StrongCertificate':
        n = len(points[0])
        halfspaces = tuple(Halfspace.through(a, z) for z, a in zip(points, subgradients))
        return cls(tuple(points), tuple(subgradients), tuple(values), Polyhedron(n, halfspaces))

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int:
        return self.polyhedron.dimension

    @property
    def optimum(self) -> Fraction:
        return min(self.values)

    @property
    def argmin(self) -> Vector:
        return self.points[self.values.index(self.optimum)]

    def gradient_halfspaces(self) -> Tuple[Optional[Halfspace], ...]:
        """<a_i, x - z_i> <= 0 for each pair; None where a_i is zero"""
        return tuple(None if a.is_zero() else Halfspace.through(a, z)
                     for z, a in zip(self.points, self.subgradients))

    def gradient_polyhedron(self) -> Polyhedron:
        """Q rebuilt from the pairs alone, ignoring the stated polyhedron"""
        return Polyhedron(self.dimension, tuple(h for h in self.gradient_halfspaces() if h is not None))

    def polyhedron_mismatches(self) -> List[Dict[str, Any]]:
        """Where the stated polyhedron differs from the pairs' gradient polyhedron"""
        stated = self.polyhedron.halfspaces
        expected = self.gradient_halfspaces()
        if len(stated) != len(expected):
            return [{'reason': 'constraint count differs', 'stated': len(stated), 'pairs': len(expected)}]
        return [{'index': i, 'normal': h.normal, 'offset': h.offset}
                for i, (h, g) in enumerate(zip(stated, expected))
                if g is None or not h.equivalent(g)]


@dataclass(frozen=True)
class CertificateOutcome:
    certificate: StrongCertificate
    optimum: Fraction
    argmin: Vector
    iterations: Tuple[IterationRecord, ...] = ()
    kind: str = 'certificate'


@dataclass(frozen=True)
class ContinuousOptimumOutcome:
    point: Vector
    value: Fraction
    note: str = "zero is a subgradient at a point of S"
    iterations: Tuple[IterationRecord, ...] = ()
    kind: str = 'continuous_optimum'


@dataclass(frozen=True)
class InfeasibleOutcome:
    note: str = "S is empty, so the whole space is S-free"
    kind: str = 'infeasible'


SolveOutcome = Union[CertificateOutcome, ContinuousOptimumOutcome, InfeasibleOutcome]


@dataclass
class Verdict:
    name: str
    passed: bool
    failures: List[Dict[str, Any]] = field(default_factory=list)


@dataclass
class VerificationReport:
    verdicts: List[Verdict] = field(default_factory=list)
    epsilon: Optional[Fraction] = None
    maximality: List[bool] = field(default_factory=list)
    families: Dict[str, bool] = field(default_factory=dict)
    helly_bound: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def verdict(self, name: str) -> Verdict:
        return next(v for v in self.verdicts if v.name == name)

    def failed_names(self) -> List[str]:
        return [v.name for v in self.verdicts if not v.passed]


class CertificateService:
    """Solver and verifier for strong optimality certificates"""

    def __init__(self, config: Optional[Dict[str, Any]] = None, oracle: Optional[OracleService] = None):
        self.config = {**SOLVER_CONFIG, **(config or {})}
        self.oracle = oracle or OracleService(OracleConfig(enum_cap=self.config['enum_cap']))

    @property
    def cap(self) -> int:
        return self.config['enum_cap']

    def solve(self, f: ConvexFunction, S: DiscreteSet) -> SolveOutcome:
        """Cutting-plane loop producing a certificate, a continuous optimum, or infeasibility"""
        if f.dimension != S.dimension:
            raise DimensionMismatch(f"objective on Q^{f.dimension}, set in Q^{S.dimension}")
        n = f.dimension
        points = enumerate_points(S, self.cap)
        if not points:
            logger.info("S is empty; nothing to certify")
            return InfeasibleOutcome()
        limit = min(len(points), iteration_bound(S))

        Q = Polyhedron.whole_space(n)
        zs: List[Vector] = []
        subgradients: List[Vector] = []
        values: List[Fraction] = []
        iterations: List[IterationRecord] = []
        while True:
            result = argmin_interior(f, S, Q, self.cap)
            if result is None:
                break
            z, t = result.minimizer, result.value
            k = len(zs) + 1
            if values and t < values[-1]:
                raise InternalInvariantBroken(f"value {t} at iteration {k} is below the previous {values[-1]}")
            if f.is_zero_subgradient_possible(z):
                logger.info(f"✅ Zero subgradient at {z}; continuous optimum {t}")
                return ContinuousOptimumOutcome(z, t, iterations=tuple(iterations))
            a = result.choice.subgradient
            Q = Q.intersect(Halfspace.through(a, z))
            if Q.strict_contains(z):
                raise InternalInvariantBroken(f"point {z} is still interior after its own cut")
            for i, (zi, ai) in enumerate(zip(zs, subgradients)):
                if ai.dot(z - zi) >= 0 or a.dot(zi - z) >= 0:
                    raise InternalInvariantBroken(f"points {i} and {k - 1} are not strictly separated")
            zs.append(z)
            subgradients.append(a)
            values.append(t)
            iterations.append(IterationRecord(k, z, t, a, result.face_dim, result.tie_set_size))
            logger.info(f"Iteration {k}: z = {z}, t = {t}, a = {a}, face dim {result.face_dim}, ties {result.tie_set_size}")
            if k > limit:
                raise InternalInvariantBroken(f"iteration {k} exceeds the size bound {limit}")

        if not Q.is_full_dimensional():
            raise InternalInvariantBroken("certificate polyhedron is not full-dimensional")
        if not check_v_condition(zs, S, self.cap):
            raise InternalInvariantBroken("certificate points violate the vertex condition")
        certificate = StrongCertificate(tuple(zs), tuple(subgradients), tuple(values), Q)
        logger.info(f"✅ Certificate of size {certificate.k}, optimum {certificate.optimum}")
        return CertificateOutcome(certificate, certificate.optimum, certificate.argmin, tuple(iterations))

    def verify(self, cert: StrongCertificate, f: ConvexFunction, S: DiscreteSet,
               epsilon: Optional[Fraction] = None) -> VerificationReport:
        """Independent recheck of every certificate property; failures become report entries"""
        if cert.dimension != f.dimension or cert.dimension != S.dimension:
            raise DimensionMismatch(f"certificate in Q^{cert.dimension}, objective in Q^{f.dimension}, set in Q^{S.dimension}")
        epsilon = to_scalar(self.config['epsilon'] if epsilon is None else epsilon)
        report = VerificationReport(epsilon=epsilon)

        membership = Verdict(VERDICT_NAMES['membership'], True)
        for i, z in enumerate(cert.points):
            if not contains(S, z):
                membership.failures.append({'index': i, 'point': z})
        membership.passed = not membership.failures

        subgradient = Verdict(VERDICT_NAMES['subgradient'], True)
        for i, (z, a) in enumerate(zip(cert.points, cert.subgradients)):
            if not f.subdifferential_contains(z, a):
                subgradient.failures.append({'index': i, 'reason': 'not in subdifferential', 'subgradient': a})
                continue
            fz = f.evaluate(z)
            for x in self.oracle.sample_points(self.oracle.sample_box(z)):
                if f.evaluate(x) < fz + a.dot(x - z):
                    subgradient.failures.append({'index': i, 'reason': 'subgradient inequality fails', 'sample': x})
                    break
        subgradient.passed = not subgradient.failures

        separation = Verdict(VERDICT_NAMES['separation'], True)
        for i, (zi, ai) in enumerate(zip(cert.points, cert.subgradients)):
            for j, zj in enumerate(cert.points):
                if i != j and ai.dot(zj - zi) >= 0:
                    separation.failures.append({'pair': [i, j], 'inner_product': ai.dot(zj - zi)})
        separation.passed = not separation.failures

        # the stated polyhedron is only compared; every region check runs on Q rebuilt from the pairs
        Q = cert.gradient_polyhedron()
        gradient = Verdict(VERDICT_NAMES['gradient_polyhedron'], True, cert.polyhedron_mismatches())
        gradient.passed = not gradient.failures

        full_dimensional = Verdict(VERDICT_NAMES['full_dimensional'], True)
        dimension = Q.affine_dimension()
        if dimension != cert.dimension:
            error = DegenerateCut(f"certificate polyhedron has affine dimension {dimension}")
            full_dimensional = Verdict(full_dimensional.name, False, [{'affine_dimension': dimension, 'message': str(error)}])

        s_free = Verdict(VERDICT_NAMES['s_free'], True)
        witness = self.oracle.brute_sfree(Q, S)
        if witness is not None:
            s_free = Verdict(s_free.name, False, [{'witness': witness}])

        optimality = Verdict(VERDICT_NAMES['optimality'], True)
        for i, (z, value) in enumerate(zip(cert.points, cert.values)):
            if f.evaluate(z) != value:
                optimality.failures.append({'index': i, 'recorded': value, 'actual': f.evaluate(z)})
        if not enumerate_points(S, self.cap):
            optimality.failures.append({'reason': 'S is empty'})
        else:
            best, argmin = self.oracle.brute_min(f, S)
            if best != cert.optimum:
                optimality.failures.append({'reason': 'minimum differs', 'certificate': cert.optimum,
                                            'brute_force': best, 'argmin': argmin})
        optimality.passed = not optimality.failures

        report.helly_bound = bound_for(S).bound
        size_bound = Verdict(VERDICT_NAMES['size_bound'], True)
        limit = iteration_bound(S)
        if cert.k > limit:
            size_bound = Verdict(size_bound.name, False, [{'k': cert.k, 'bound': limit}])

        report.verdicts = [membership, subgradient, separation, gradient, full_dimensional, s_free,
                           optimality, size_bound]
        report.maximality = self.check_maximality(cert, S, epsilon)
        report.families = {
            'gradient_polyhedron': subgradient.passed and gradient.passed,
            'points_in_S': subgradient.passed and gradient.passed and membership.passed,
            'maximal': bool(report.maximality) and all(report.maximality),
        }
        if report.passed:
            logger.info("✅ All verdicts pass")
        else:
            logger.warning(f"⚠️ Failed verdicts: {', '.join(report.failed_names())}")
        return report

    def verify_outcome(self, outcome: SolveOutcome, f: ConvexFunction, S: DiscreteSet,
                       epsilon: Optional[Fraction] = None) -> VerificationReport:
        """Check any solve outcome: certificates fully, continuous optima and infeasibility directly"""
        if isinstance(outcome, CertificateOutcome):
            return self.verify(outcome.certificate, f, S, epsilon)
        if f.dimension != S.dimension:
            raise DimensionMismatch(f"objective on Q^{f.dimension}, set in Q^{S.dimension}")
        if isinstance(outcome, ContinuousOptimumOutcome):
            if len(outcome.point) != S.dimension:
                raise DimensionMismatch(f"point of dimension {len(outcome.point)} for a set of dimension {S.dimension}")
            in_set = contains(S, outcome.point)
            zero = f.is_zero_subgradient_possible(outcome.point)
            return VerificationReport([
                Verdict(VERDICT_NAMES['membership'], in_set, [] if in_set else [{'point': outcome.point}]),
                Verdict(VERDICT_NAMES['zero_subgradient'], zero, [] if zero else [{'point': outcome.point}]),
            ])
        points = enumerate_points(S, self.cap)
        failures = [{'witness': points[0]}] if points else []
        return VerificationReport([Verdict(VERDICT_NAMES['empty_set'], not points, failures)])

    def check_maximality(self, cert: StrongCertificate, S: DiscreteSet,
                         epsilon: Optional[Fraction] = None) -> List[bool]:
        """For each constraint: does relaxing it by epsilon put some point of S in the interior?"""
        epsilon = to_scalar(self.config['epsilon'] if epsilon is None else epsilon)
        if epsilon < 0:
            raise ContractViolation("maximality check needs epsilon >= 0")
        points = enumerate_points(S, self.cap)
        halfspaces = cert.gradient_polyhedron().halfspaces
        verdicts = []
        for i, h in enumerate(halfspaces):
            relaxed = Polyhedron(cert.dimension, halfspaces[:i] + (h.relaxed(epsilon),) + halfspaces[i + 1:])
            verdicts.append(any(relaxed.strict_contains(s) for s in points))
        return verdicts
