"""
Helly-number bounds, the vertex condition on point sets, and lower-bound witnesses

A witness is a family C_1..C_m of convex sets whose full intersection misses S while
every leave-one-out intersection meets S; it proves h(S) >= m.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .feasible_set import DiscreteSet, ExplicitPoints, contains, enumerate_points, is_integral
from .geometry import Polyhedron, hull_membership
from .numerics import Vector
from ..errors import DimensionMismatch, VNotSubsetOfS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HellyBound:
    """Upper bound on h(S); bound None means no bound is known"""
    set_kind: str  # 'integer', 'mixed' or 'explicit'
    dimension: int
    bound: Optional[int]
    continuous_dimension: int = 0


def mixed_bound(continuous_dimension: int, integer_dimension: int) -> int:
    """h((R^d x Z^n) ∩ C) <= 2^n (d + 1)"""
    return 2 ** integer_dimension * (continuous_dimension + 1)


def bound_for(S: DiscreteSet) -> HellyBound:
    if isinstance(S, ExplicitPoints):
        return HellyBound('explicit', S.dimension, len(S.points))
    return HellyBound('integer', S.dimension, mixed_bound(0, S.dimension))


def iteration_bound(S: DiscreteSet) -> int:
    """Largest certificate size the cutting-plane loop may produce for S"""
    bound = bound_for(S).bound
    if is_integral(S):
        bound = min(bound, mixed_bound(0, S.dimension))
    return bound


@dataclass(frozen=True)
class PointHull:
    """conv(points) kept in V-form; the hull of no points is empty"""
    points: Tuple[Vector, ...]
    dimension: int

    def contains(self, x: Vector) -> bool:
        if len(x) != self.dimension:
            raise DimensionMismatch(f"point of dimension {len(x)} for a hull in dimension {self.dimension}")
        return bool(self.points) and hull_membership(self.points, x)


Region = Union[Polyhedron, PointHull]


@dataclass(frozen=True)
class WitnessConfiguration:
    regions: Tuple[Region, ...]
    S: DiscreteSet

    def __post_init__(self):
        object.__setattr__(self, 'regions', tuple(self.regions))
        for region in self.regions:
            if region.dimension != self.S.dimension:
                raise DimensionMismatch(f"witness region of dimension {region.dimension} for a set of dimension {self.S.dimension}")


@dataclass(frozen=True)
class WitnessReport:
    valid: bool
    lower_bound: int
    failing_condition: Optional[str] = None
    witness_point: Optional[Vector] = None
    failing_index: Optional[int] = None


def check_v_condition(V: Sequence[Vector], S: DiscreteSet, cap: Optional[int] = None) -> bool:
    """conv(V) ∩ S = V and every point of V is a vertex of conv(V)"""
    for v in V:
        if not contains(S, v):
            raise VNotSubsetOfS(f"point {v} is not in S")
    members = set(V)
    for s in enumerate_points(S, cap):
        if s not in members and hull_membership(V, s):
            logger.debug(f"Point {s} of S lies in conv(V) but not in V")
            return False
    for i, v in enumerate(V):
        rest = [w for j, w in enumerate(V) if j != i]
        if rest and hull_membership(rest, v):
            logger.debug(f"Point {v} is not a vertex of conv(V)")
            return False
    return True


def witness_report(w: WitnessConfiguration, cap: Optional[int] = None) -> WitnessReport:
    m = len(w.regions)
    points = enumerate_points(w.S, cap)
    membership = [[region.contains(s) for region in w.regions] for s in points]
    for s, inside in zip(points, membership):
        if all(inside):
            return WitnessReport(False, m, 'full_intersection_meets_S', witness_point=s)
    for j in range(m):
        if not any(all(flag for i, flag in enumerate(inside) if i != j) for inside in membership):
            return WitnessReport(False, m, 'leave_one_out_empty', failing_index=j)
    if m == 0:
        # empty family over an empty set
        return WitnessReport(False, m, 'leave_one_out_empty')
    logger.info(f"✅ Witness valid: h(S) >= {m}")
    return WitnessReport(True, m)


def verify_witness(w: WitnessConfiguration, cap: Optional[int] = None) -> bool:
    return witness_report(w, cap).valid


def lemma_witness(V: Sequence[Vector], S: DiscreteSet) -> WitnessConfiguration:
    """C_i = conv(V without v_i), one hull per point of V"""
    regions = [PointHull(tuple(w for j, w in enumerate(V) if j != i), S.dimension) for i in range(len(V))]
    return WitnessConfiguration(tuple(regions), S)
