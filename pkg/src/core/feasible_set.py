"""
Finite discrete sets S and the interior minimizer oracle

S is either an explicit list of rational points or the integer points of a polyhedron
inside an integer box. The oracle scans S in a fixed order, keeps the points strictly
inside the current region, and picks the minimizer with the largest face dimension.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, List, Optional, Tuple, Union

from .geometry import Box, Polyhedron
from .numerics import Vector
from .objective import ConvexFunction, SubgradientChoice
from ..config import SOLVER_CONFIG
from ..errors import BoxTooLarge, ContractViolation, DimensionMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExplicitPoints:
    """Finite list of rational points (nonempty, no repeats)"""
    points: Tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))
        if not self.points:
            raise ContractViolation("explicit point set must be nonempty")
        if len({len(p) for p in self.points}) != 1:
            raise DimensionMismatch("explicit points differ in dimension")
        if len(set(self.points)) != len(self.points):
            raise ContractViolation("explicit point set contains duplicates")

    @classmethod
    def deduplicated(cls, points: Iterable[Vector]) -> 'ExplicitPoints':
        """Keep the first occurrence of every point"""
        return cls(tuple(dict.fromkeys(points)))

    @property
    def dimension(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True)
class IntegerPolytope:
    """{x in Z^n : x in constraints, lower <= x <= upper} with integer bounds"""
    constraints: Polyhedron
    lower: Tuple[int, ...]
    upper: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'lower', tuple(self.lower))
        object.__setattr__(self, 'upper', tuple(self.upper))
        n = self.constraints.dimension
        if len(self.lower) != n or len(self.upper) != n:
            raise DimensionMismatch(f"box bounds of length {len(self.lower)}/{len(self.upper)} for dimension {n}")
        for lo, hi in zip(self.lower, self.upper):
            if isinstance(lo, bool) or isinstance(hi, bool) or not isinstance(lo, int) or not isinstance(hi, int):
                raise ContractViolation("integer polytope box bounds must be integers")
            if lo > hi:
                raise ContractViolation(f"box lower bound {lo} exceeds upper bound {hi}")

    @property
    def dimension(self) -> int:
        return self.constraints.dimension

    @property
    def box_volume(self) -> int:
        return prod(hi - lo + 1 for lo, hi in zip(self.lower, self.upper))


DiscreteSet = Union[ExplicitPoints, IntegerPolytope]


def enumerate_points(S: DiscreteSet, cap: Optional[int] = None) -> List[Vector]:
    """Every point of S once; integer polytopes are scanned in box (product) order"""
    if isinstance(S, ExplicitPoints):
        return list(S.points)
    cap = SOLVER_CONFIG['enum_cap'] if cap is None else cap
    if S.box_volume > cap:
        raise BoxTooLarge(f"integer box holds {S.box_volume} points, cap is {cap}")
    points = []
    ranges = [range(lo, hi + 1) for lo, hi in zip(S.lower, S.upper)]
    for coords in product(*ranges):
        x = Vector(tuple(Fraction(c) for c in coords))
        if S.constraints.contains(x):
            assert all(c.denominator == 1 for c in x)
            points.append(x)
    logger.debug(f"Enumerated {len(points)} of {S.box_volume} box points")
    return points


def contains(S: DiscreteSet, x: Vector) -> bool:
    if len(x) != S.dimension:
        raise DimensionMismatch(f"point of dimension {len(x)} for a set of dimension {S.dimension}")
    if isinstance(S, ExplicitPoints):
        return x in S.points
    return (all(c.denominator == 1 for c in x)
            and all(lo <= c <= hi for c, lo, hi in zip(x, S.lower, S.upper))
            and S.constraints.contains(x))


def bounding_box(S: DiscreteSet, cap: Optional[int] = None) -> Optional[Box]:
    """Smallest box around the points of S; None when S is empty"""
    points = enumerate_points(S, cap)
    if not points:
        return None
    n = S.dimension
    lower = Vector(tuple(min(p[i] for p in points) for i in range(n)))
    upper = Vector(tuple(max(p[i] for p in points) for i in range(n)))
    return Box(lower, upper)


def size(S: DiscreteSet, cap: Optional[int] = None) -> int:
    return len(enumerate_points(S, cap))


def is_integral(S: DiscreteSet) -> bool:
    if isinstance(S, IntegerPolytope):
        return True
    return all(c.denominator == 1 for p in S.points for c in p)


@dataclass(frozen=True)
class OracleResult:
    minimizer: Vector
    value: Fraction
    face_dim: int
    tie_set_size: int
    choice: SubgradientChoice


def argmin_interior(f: ConvexFunction, S: DiscreteSet, Q: Polyhedron,
                    cap: Optional[int] = None) -> Optional[OracleResult]:
    """
    Minimizer of f over int(Q) ∩ S with the largest face dimension

    Remaining ties go to the lexicographically smallest point. Returns None when no point
    of S lies strictly inside Q.
    """
    if f.dimension != Q.dimension or S.dimension != Q.dimension:
        raise DimensionMismatch("objective, set and region must share one dimension")
    candidates = [s for s in enumerate_points(S, cap) if Q.strict_contains(s)]
    if not candidates:
        return None
    values = {s: f.evaluate(s) for s in candidates}
    t = min(values.values())
    ties = sorted(s for s in candidates if values[s] == t)
    best = None
    for s in ties:
        choice = f.relint_subgradient(s)
        face_dim = f.face_dimension(s, choice.subgradient, t)
        logger.debug(f"Candidate {s}: value {t}, face dimension {face_dim}")
        if best is None or face_dim > best.face_dim:
            best = OracleResult(s, t, face_dim, len(ties), choice)
    return best
