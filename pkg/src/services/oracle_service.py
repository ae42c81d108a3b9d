"""
Brute-force reference service

Exhaustive minimization, naive S-freeness, grid bounds over polyhedra and seeded random
sample points. Everything here is deliberately simple and exponential; it is the ground
truth the solver and verifier are cross-checked against.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..config import ORACLE_CONFIG, SOLVER_CONFIG
from ..core.feasible_set import DiscreteSet, contains, enumerate_points
from ..core.geometry import Box, Polyhedron
from ..core.numerics import Vector, to_scalar
from ..core.objective import ConvexFunction
from ..errors import ContractViolation, EmptyRegion, EmptySet, UnboundedWithoutBox

logger = logging.getLogger(__name__)

# denominators of sampled coordinates
SAMPLE_RESOLUTION = 16


@dataclass(frozen=True)
class OracleConfig:
    grid_step: Fraction = ORACLE_CONFIG['grid_step']
    sample_count: int = ORACLE_CONFIG['sample_count']
    seed: int = ORACLE_CONFIG['seed']
    sample_radius: int = ORACLE_CONFIG['sample_radius']
    enum_cap: int = SOLVER_CONFIG['enum_cap']

    def __post_init__(self):
        object.__setattr__(self, 'grid_step', to_scalar(self.grid_step))
        if self.grid_step <= 0:
            raise ContractViolation("grid step must be positive")
        if self.sample_count < 0:
            raise ContractViolation("sample count must be nonnegative")


class OracleService:
    """Exhaustive reference computations"""

    def __init__(self, config: Optional[OracleConfig] = None):
        self.config = config or OracleConfig()

    def brute_min(self, f: ConvexFunction, S: DiscreteSet) -> Tuple[Fraction, Vector]:
        """Exact minimum over S by full scan; ties go to the lexicographically smallest point"""
        points = enumerate_points(S, self.config.enum_cap)
        if not points:
            raise EmptySet("minimum over an empty set")
        return min((f.evaluate(s), s) for s in points)

    def brute_sfree(self, Q: Polyhedron, S: DiscreteSet) -> Optional[Vector]:
        """First point of S (in scan order) strictly inside Q, or None when Q is S-free"""
        for s in enumerate_points(S, self.config.enum_cap):
            if Q.strict_contains(s):
                return s
        return None

    def grid_lower_bound(self, f: ConvexFunction, P: Polyhedron,
                         step: Optional[Fraction] = None) -> Tuple[Fraction, Vector]:
        """
        Minimum of f over the grid points of P

        The grid is anchored at the lexicographically smallest vertex of P, so halving the
        step refines the grid.
        """
        step = self.config.grid_step if step is None else to_scalar(step)
        if step <= 0:
            raise ContractViolation("grid step must be positive")
        gens = P.generators
        if gens.is_empty:
            raise EmptyRegion("grid search over an empty polyhedron")
        if not gens.is_bounded:
            raise UnboundedWithoutBox("grid search needs a bounded polyhedron")
        anchor = gens.vertices[0]
        n = P.dimension
        axes = []
        for i in range(n):
            upper = max(v[i] for v in gens.vertices)
            count = int((upper - anchor[i]) // step)
            lower = min(v[i] for v in gens.vertices)
            start = -int((anchor[i] - lower) // step)
            axes.append(range(start, count + 1))
        best = None
        for offsets in product(*axes):
            x = Vector(tuple(anchor[i] + step * k for i, k in enumerate(offsets)))
            if not P.contains(x):
                continue
            candidate = (f.evaluate(x), x)
            if best is None or candidate < best:
                best = candidate
        logger.debug(f"Grid minimum at step {step}: {best[0]}")
        return best

    def sample_points(self, box: Box, count: Optional[int] = None) -> List[Vector]:
        """Seeded random rational points of the box (coordinates on a 1/16 lattice of each side)"""
        count = self.config.sample_count if count is None else count
        rng = np.random.default_rng(self.config.seed)
        ticks = rng.integers(0, SAMPLE_RESOLUTION + 1, size=(count, box.dimension))
        points = []
        for row in ticks:
            points.append(Vector(tuple(
                lo + (hi - lo) * Fraction(int(t), SAMPLE_RESOLUTION)
                for lo, hi, t in zip(box.lower, box.upper, row)
            )))
        return points

    def sample_box(self, center: Vector) -> Box:
        r = Fraction(self.config.sample_radius)
        return Box(Vector(tuple(c - r for c in center)), Vector(tuple(c + r for c in center)))

    def cross_check(self, outcome, f: ConvexFunction, S: DiscreteSet) -> List[Dict[str, Any]]:
        """Differences between a solve outcome and the brute-force references (empty when consistent)"""
        from .certificate_service import CertificateOutcome, ContinuousOptimumOutcome

        issues = []
        points = enumerate_points(S, self.config.enum_cap)
        if isinstance(outcome, CertificateOutcome):
            value, argmin = self.brute_min(f, S)
            if value != outcome.optimum:
                issues.append({'check': 'brute_min', 'expected': value, 'found': outcome.optimum})
            mismatches = outcome.certificate.polyhedron_mismatches()
            if mismatches:
                issues.append({'check': 'gradient_polyhedron', 'mismatches': mismatches})
            witness = self.brute_sfree(outcome.certificate.gradient_polyhedron(), S)
            if witness is not None:
                issues.append({'check': 'brute_sfree', 'witness': witness})
        elif isinstance(outcome, ContinuousOptimumOutcome):
            if not contains(S, outcome.point):
                issues.append({'check': 'membership', 'point': outcome.point})
            if not f.is_zero_subgradient_possible(outcome.point):
                issues.append({'check': 'zero_subgradient', 'point': outcome.point})
        elif points:
            issues.append({'check': 'empty_set', 'witness': points[0]})
        for issue in issues:
            logger.warning(f"⚠️ Cross-check mismatch: {issue}")
        return issues
