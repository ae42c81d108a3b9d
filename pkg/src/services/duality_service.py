"""
Duality service: L(C), the minimum of f over the boundary of a polyhedron C

Each facet minimization is an exact convex program. Max-affine terms are lifted to
epigraph variables, which leaves a convex quadratic program over a polytope; that program
is solved by scanning linearly independent active sets until the KKT conditions hold.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple, Any

from ..config import SOLVER_CONFIG
from ..core.feasible_set import DiscreteSet, bounding_box
from ..core.geometry import Box, Polyhedron, Row, find_point
from ..core.numerics import Matrix, Vector, rank, solve_unique, to_scalar
from ..core.objective import ConvexFunction, MaxAffine, Quadratic, Sum
from ..errors import (
    ContractViolation,
    EmptyRegion,
    EmptySet,
    InternalInvariantBroken,
    UnboundedWithoutBox,
)
from .certificate_service import StrongCertificate
from .oracle_service import OracleConfig, OracleService

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FacetMinimum:
    index: int
    value: Fraction
    point: Vector


@dataclass(frozen=True)
class DualReport:
    facet_minima: Tuple[FacetMinimum, ...]
    bound: Fraction
    primal: Fraction
    gap: Fraction
    strong: bool
    box: Box
    continuous_minimizer: Optional[Vector] = None
    neighborhood: bool = False
    s_free: bool = True
    s_free_witness: Optional[Vector] = None

    @property
    def weak(self) -> bool:
        return self.bound <= self.primal


class _LiftedProgram:
    """min 1/2 y^T H y + <g, y> + constant  s.t.  A y <= b, E y = e  over y = (x, t_1..t_m)"""

    def __init__(self, f: ConvexFunction, region: Polyhedron):
        n = region.dimension
        terms = f.terms if isinstance(f, Sum) else (f,)
        lifted = [t for t in terms if isinstance(t, MaxAffine)]
        self.n = n
        self.size = n + len(lifted)
        N = self.size
        self.H = [[Fraction(0)] * N for _ in range(N)]
        self.g = [Fraction(0)] * N
        self.constant = Fraction(0)
        for term in terms:
            if isinstance(term, Quadratic):
                for i in range(n):
                    self.g[i] += term.b[i]
                    for j in range(n):
                        self.H[i][j] += term.A.rows[i][j]
                self.constant += term.c
            elif not isinstance(term, MaxAffine):
                raise ContractViolation(f"cannot minimize objective term of type {type(term).__name__}")

        ineq, eq = region.rows()
        self.inequalities: List[Row] = [(self._pad(a), b) for a, b in ineq]
        self.equalities: List[Row] = [(self._pad(a), b) for a, b in eq]
        for m, term in enumerate(lifted):
            var = n + m
            self.g[var] = Fraction(1)
            for piece in term.pieces:
                row = list(self._pad(piece.gradient))
                row[var] = Fraction(-1)
                self.inequalities.append((Vector(tuple(row)), -piece.offset))

    def _pad(self, v: Vector) -> Vector:
        return v.extend((0,) * (self.size - len(v)))

    def _independent_equalities(self) -> List[Row]:
        basis: List[Row] = []
        for row in self.equalities:
            candidate = basis + [row]
            if rank(Matrix.from_vectors([r[0] for r in candidate], self.size)) == len(candidate):
                basis = candidate
        return basis

    def _feasible(self, y: Vector) -> bool:
        return (all(a.dot(y) <= b for a, b in self.inequalities)
                and all(a.dot(y) == b for a, b in self.equalities))

    def _kkt_point(self, active: List[Row], basis: List[Row]) -> Optional[Vector]:
        """y with H y + g + A_J^T mu + E^T nu = 0, A_J y = b_J, feasibility and mu >= 0"""
        N, J, K = self.size, len(active), len(basis)
        D = N + J + K
        stationarity = []
        for r in range(N):
            row = self.H[r] + [a[r] for a, _ in active] + [e[r] for e, _ in basis]
            stationarity.append((Vector(tuple(row)), -self.g[r]))
        tight = [(a.extend((0,) * (J + K)), b) for a, b in active]
        primal_eq = [(e.extend((0,) * (J + K)), b) for e, b in basis]

        square = stationarity + tight + primal_eq
        M = Matrix.from_vectors([r[0] for r in square], D)
        if rank(M) == D:
            solution = solve_unique(M, Vector(tuple(r[1] for r in square)))
            if solution is None:
                return None
            y = Vector(solution.entries[:N])
            if all(mu >= 0 for mu in solution.entries[N:N + J]) and self._feasible(y):
                return y
            return None

        inequalities = [(a.extend((0,) * (J + K)), b) for a, b in self.inequalities]
        inequalities += [(-Vector.unit(D, N + j), Fraction(0)) for j in range(J)]
        equalities = stationarity + tight + [(e.extend((0,) * (J + K)), b) for e, b in self.equalities]
        solution = find_point(D, inequalities, equalities)
        return None if solution is None else Vector(solution.entries[:N])

    def solve(self) -> Vector:
        basis = self._independent_equalities()
        free = self.size - len(basis)
        for count in range(free + 1):
            for combo in combinations(range(len(self.inequalities)), count):
                active = [self.inequalities[i] for i in combo]
                rows = [r[0] for r in basis + active]
                if rows and rank(Matrix.from_vectors(rows, self.size)) < len(rows):
                    continue
                y = self._kkt_point(active, basis)
                if y is not None:
                    logger.debug(f"KKT point with active set {combo}")
                    return y
        raise InternalInvariantBroken("no KKT point found for a bounded convex program")


class DualityService:
    """Dual bounds and weak/strong duality reports"""

    def __init__(self, config: Optional[Dict[str, Any]] = None, oracle: Optional[OracleService] = None):
        self.config = {**SOLVER_CONFIG, **(config or {})}
        self.oracle = oracle or OracleService(OracleConfig(enum_cap=self.config['enum_cap']))

    def default_box(self, S: DiscreteSet) -> Box:
        """Bounding box of S, inflated around its centre"""
        box = bounding_box(S, self.config['enum_cap'])
        if box is None:
            raise EmptySet("default box of an empty set")
        return box.inflated(self.config['box_inflate'])

    def minimize_on_polyhedron(self, f: ConvexFunction, P: Polyhedron,
                               box: Optional[Box] = None) -> Tuple[Fraction, Vector]:
        """Exact minimum of f over P ∩ box with a minimizer"""
        region = P.with_box(box)
        if region.is_empty():
            raise EmptyRegion("minimization over an empty region")
        if not region.is_bounded():
            raise UnboundedWithoutBox("region is unbounded; supply box bounds")
        y = _LiftedProgram(f, region).solve()
        x = Vector(y.entries[:region.dimension])
        return f.evaluate(x), x

    def dual_bound(self, f: ConvexFunction, C: Polyhedron,
                   box: Optional[Box] = None) -> Tuple[Fraction, Tuple[FacetMinimum, ...]]:
        """L(C) = minimum over the facets of C (each intersected with the box)"""
        minima = []
        for facet in C.facets():
            region = facet.polyhedron.with_box(box)
            if region.is_empty():
                logger.warning(f"⚠️ Facet {facet.index} lies outside the box; skipped")
                continue
            value, point = self.minimize_on_polyhedron(f, region)
            logger.debug(f"Facet {facet.index}: minimum {value} at {point}")
            minima.append(FacetMinimum(facet.index, value, point))
        if not minima:
            raise EmptyRegion("no facet of the region meets the box")
        bound = min(m.value for m in minima)
        return bound, tuple(minima)

    def continuous_minimizer(self, f: ConvexFunction, box: Box) -> Optional[Vector]:
        """A minimizer of f over the whole space when one lies in the box, else None"""
        _, x = self.minimize_on_polyhedron(f, Polyhedron.from_box(box))
        return x if f.is_zero_subgradient_possible(x) else None

    def region_report(self, C: Polyhedron, f: ConvexFunction, S: DiscreteSet,
                      box: Optional[Box] = None, primal: Optional[Fraction] = None) -> DualReport:
        """L(C) against the discrete optimum, with S-freeness and neighbourhood checks"""
        box = box or self.default_box(S)
        if primal is None:
            primal, _ = self.oracle.brute_min(f, S)
        primal = to_scalar(primal)
        bound, minima = self.dual_bound(f, C, box)
        x0 = self.continuous_minimizer(f, box)
        neighborhood = x0 is not None and C.strict_contains(x0)
        witness = self.oracle.brute_sfree(C, S)
        report = DualReport(minima, bound, primal, primal - bound, bound == primal, box,
                            x0, neighborhood, witness is None, witness)
        if report.s_free and report.neighborhood and not report.weak:
            raise InternalInvariantBroken(f"dual bound {bound} exceeds the optimum {primal} for an S-free region")
        if not report.weak:
            logger.warning(f"⚠️ Weak duality fails (bound {bound} > {primal}); S-freeness witness {witness}")
        return report

    def duality_report(self, cert: StrongCertificate, f: ConvexFunction, S: DiscreteSet,
                       box: Optional[Box] = None) -> DualReport:
        report = self.region_report(cert.gradient_polyhedron(), f, S, box, primal=min(cert.values))
        if report.strong:
            logger.info(f"✅ Strong duality: L(Q) = {report.bound}")
        return report
