"""
H-representation polyhedra with exact membership, dimension and vertex/facet enumeration

Feasibility, emptiness and linear optimization all go through one exhaustive
basic-solution search on the pointed part of the polyhedron (the lineality space is
split off first), which is exact and adequate for the small dimensions used here.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .numerics import Matrix, Vector, nullspace, rank, solve_linear, solve_unique, to_scalar
from ..errors import (
    ContractViolation,
    DimensionMismatch,
    EmptyRegion,
    NotFullDimensional,
    UnboundedWithoutBox,
)

logger = logging.getLogger(__name__)

Row = Tuple[Vector, Fraction]


@dataclass(frozen=True)
class Halfspace:
    """{x : <normal, x> <= offset}"""
    normal: Vector
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'offset', to_scalar(self.offset))
        if self.normal.is_zero():
            raise ContractViolation("halfspace with zero normal (trivial constraint)")

    @classmethod
    def through(cls, normal: Vector, point: Vector) -> 'Halfspace':
        """<normal, x - point> <= 0"""
        return cls(normal, normal.dot(point))

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def slack(self, x: Vector) -> Fraction:
        return self.offset - self.normal.dot(x)

    def contains(self, x: Vector) -> bool:
        return self.slack(x) >= 0

    def strictly_contains(self, x: Vector) -> bool:
        return self.slack(x) > 0

    def relaxed(self, epsilon: Fraction) -> 'Halfspace':
        return Halfspace(self.normal, self.offset + epsilon)

    def equivalent(self, other: 'Halfspace') -> bool:
        """Same halfspace up to a positive scaling of (normal, offset)"""
        if self.dimension != other.dimension:
            return False
        j = next(i for i, v in enumerate(other.normal) if v != 0)
        ratio = self.normal[j] / other.normal[j]
        return ratio > 0 and self.normal == other.normal.scale(ratio) and self.offset == ratio * other.offset

    def flipped(self) -> 'Halfspace':
        return Halfspace(-self.normal, -self.offset)

    def as_row(self) -> Row:
        return self.normal, self.offset


@dataclass(frozen=True)
class Box:
    """Axis-aligned bounds lower <= x <= upper"""
    lower: Vector
    upper: Vector

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise DimensionMismatch("box bounds differ in dimension")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise ContractViolation("box lower bound exceeds upper bound")

    @property
    def dimension(self) -> int:
        return len(self.lower)

    def halfspaces(self) -> Tuple[Halfspace, ...]:
        n = self.dimension
        result = []
        for i in range(n):
            e = Vector.unit(n, i)
            result.append(Halfspace(e, self.upper[i]))
            result.append(Halfspace(-e, -self.lower[i]))
        return tuple(result)

    def inflated(self, factor) -> 'Box':
        """Same centre, half-widths (at least 1) multiplied by factor"""
        factor = to_scalar(factor)
        lower, upper = [], []
        for lo, hi in zip(self.lower, self.upper):
            centre = (lo + hi) / 2
            half = max((hi - lo) / 2, Fraction(1)) * factor
            lower.append(centre - half)
            upper.append(centre + half)
        return Box(Vector(tuple(lower)), Vector(tuple(upper)))


@dataclass(frozen=True)
class Generators:
    """Vertices and extreme rays of the pointed part, plus a lineality basis"""
    vertices: Tuple[Vector, ...]
    rays: Tuple[Vector, ...]
    lineality: Tuple[Vector, ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    def supremum(self, c: Vector) -> Optional[Fraction]:
        """max <c, x>, None when unbounded above"""
        if self.is_empty:
            raise EmptyRegion("supremum over an empty polyhedron")
        if any(c.dot(l) != 0 for l in self.lineality) or any(c.dot(r) > 0 for r in self.rays):
            return None
        return max(c.dot(v) for v in self.vertices)

    def infimum(self, c: Vector) -> Optional[Fraction]:
        value = self.supremum(-c)
        return None if value is None else -value


def _split_rows(dimension: int, inequalities: Sequence[Row],
                equalities: Sequence[Row]) -> Optional[Tuple[List[Row], List[Row]]]:
    """Drop zero rows; None when a zero row is infeasible"""
    ineq, eq = [], []
    for normal, offset in inequalities:
        if len(normal) != dimension:
            raise DimensionMismatch(f"row of dimension {len(normal)} in a system of dimension {dimension}")
        if normal.is_zero():
            if offset < 0:
                return None
            continue
        ineq.append((normal, offset))
    for normal, offset in equalities:
        if len(normal) != dimension:
            raise DimensionMismatch(f"row of dimension {len(normal)} in a system of dimension {dimension}")
        if normal.is_zero():
            if offset != 0:
                return None
            continue
        eq.append((normal, offset))
    return ineq, eq


def _satisfies(x: Vector, ineq: Sequence[Row]) -> bool:
    return all(normal.dot(x) <= offset for normal, offset in ineq)


def _basic_points(dimension: int, ineq: List[Row], eq: List[Row], first_only: bool = False):
    """Basic feasible points of a pointed system (eq rows plus n - rank(eq) tight ineq rows)"""
    eq_rank = rank(Matrix.from_vectors([r[0] for r in eq], dimension)) if eq else 0
    need = dimension - eq_rank
    found = []
    seen = set()
    for combo in combinations(range(len(ineq)), need):
        rows = eq + [ineq[i] for i in combo]
        A = Matrix.from_vectors([r[0] for r in rows], dimension)
        b = Vector(tuple(r[1] for r in rows))
        x = solve_unique(A, b) if rows else Vector.zeros(dimension)
        if x is None or x in seen or not _satisfies(x, ineq):
            continue
        if any(normal.dot(x) != offset for normal, offset in eq):
            continue
        seen.add(x)
        found.append(x)
        if first_only:
            break
    return found


def _extreme_rays(dimension: int, ineq: List[Row], eq: List[Row]) -> List[Vector]:
    eq_rank = rank(Matrix.from_vectors([r[0] for r in eq], dimension)) if eq else 0
    need = dimension - eq_rank - 1
    if need < 0:
        return []
    rays, seen = [], set()
    for combo in combinations(range(len(ineq)), need):
        rows = [r[0] for r in eq] + [ineq[i][0] for i in combo]
        basis = nullspace(Matrix.from_vectors(rows, dimension))
        if len(basis) != 1:
            continue
        for candidate in (basis[0], -basis[0]):
            if all(normal.dot(candidate) <= 0 for normal, _ in ineq):
                direction = candidate.direction()
                if direction not in seen:
                    seen.add(direction)
                    rays.append(direction)
    return rays


def _lineality(dimension: int, ineq: List[Row], eq: List[Row]) -> List[Vector]:
    rows = [r[0] for r in ineq] + [r[0] for r in eq]
    if not rows:
        return [Vector.unit(dimension, i) for i in range(dimension)]
    return nullspace(Matrix.from_vectors(rows, dimension))


def generators(dimension: int, inequalities: Sequence[Row],
               equalities: Sequence[Row] = ()) -> Generators:
    """Exact V-description of {A x <= b, E x = e}"""
    split = _split_rows(dimension, inequalities, equalities)
    if split is None:
        return Generators((), (), ())
    ineq, eq = split
    lineality = _lineality(dimension, ineq, eq)
    pointed_eq = eq + [(l, Fraction(0)) for l in lineality]
    vertices = _basic_points(dimension, ineq, pointed_eq)
    if not vertices:
        return Generators((), (), ())
    rays = _extreme_rays(dimension, ineq, pointed_eq)
    return Generators(tuple(sorted(vertices)), tuple(rays), tuple(lineality))


def find_point(dimension: int, inequalities: Sequence[Row],
               equalities: Sequence[Row] = ()) -> Optional[Vector]:
    """Some point of {A x <= b, E x = e}, or None if the system is infeasible"""
    split = _split_rows(dimension, inequalities, equalities)
    if split is None:
        return None
    ineq, eq = split
    lineality = _lineality(dimension, ineq, eq)
    found = _basic_points(dimension, ineq, eq + [(l, Fraction(0)) for l in lineality], first_only=True)
    return found[0] if found else None


def system_dimension(dimension: int, inequalities: Sequence[Row],
                     equalities: Sequence[Row] = ()) -> int:
    """Affine dimension of {A x <= b, E x = e}; -1 when empty"""
    gens = generators(dimension, inequalities, equalities)
    if gens.is_empty:
        return -1
    anchor = gens.vertices[0]
    spanning = [v - anchor for v in gens.vertices[1:]] + list(gens.rays) + list(gens.lineality)
    if not spanning:
        return 0
    return rank(Matrix.from_vectors(spanning, dimension))


@dataclass(frozen=True)
class Facet:
    index: int
    halfspace: Halfspace
    polyhedron: 'Polyhedron'


@dataclass(frozen=True)
class Polyhedron:
    """Finite intersection of halfspaces in Q^n; no halfspaces means all of Q^n"""
    dimension: int
    halfspaces: Tuple[Halfspace, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'halfspaces', tuple(self.halfspaces))
        for h in self.halfspaces:
            if h.dimension != self.dimension:
                raise DimensionMismatch(f"halfspace of dimension {h.dimension} in a polyhedron of dimension {self.dimension}")

    @classmethod
    def whole_space(cls, dimension: int) -> 'Polyhedron':
        return cls(dimension, ())

    @classmethod
    def from_box(cls, box: Box) -> 'Polyhedron':
        return cls(box.dimension, box.halfspaces())

    def _check_point(self, x: Vector):
        if len(x) != self.dimension:
            raise DimensionMismatch(f"point of dimension {len(x)} for a polyhedron of dimension {self.dimension}")

    def contains(self, x: Vector) -> bool:
        self._check_point(x)
        return all(h.contains(x) for h in self.halfspaces)

    def strict_contains(self, x: Vector) -> bool:
        self._check_point(x)
        return all(h.strictly_contains(x) for h in self.halfspaces)

    def intersect(self, *halfspaces: Halfspace) -> 'Polyhedron':
        return Polyhedron(self.dimension, self.halfspaces + tuple(halfspaces))

    def with_box(self, box: Optional[Box]) -> 'Polyhedron':
        if box is None:
            return self
        if box.dimension != self.dimension:
            raise DimensionMismatch("box and polyhedron differ in dimension")
        return self.intersect(*box.halfspaces())

    def rows(self) -> Tuple[List[Row], List[Row]]:
        """Inequality rows and equality rows (opposite halfspace pairs merged)"""
        ineq, eq = [], []
        used = set()
        for i, h in enumerate(self.halfspaces):
            if i in used:
                continue
            partner = next((j for j in range(i + 1, len(self.halfspaces))
                            if j not in used and self.halfspaces[j].normal == -h.normal
                            and self.halfspaces[j].offset == -h.offset), None)
            if partner is None:
                ineq.append(h.as_row())
            else:
                used.add(partner)
                eq.append(h.as_row())
        return ineq, eq

    @cached_property
    def generators(self) -> Generators:
        ineq, eq = self.rows()
        return generators(self.dimension, ineq, eq)

    def is_empty(self) -> bool:
        return self.generators.is_empty

    def is_bounded(self) -> bool:
        return self.generators.is_bounded

    def supremum(self, c: Vector) -> Optional[Fraction]:
        return self.generators.supremum(c)

    def infimum(self, c: Vector) -> Optional[Fraction]:
        return self.generators.infimum(c)

    def implicit_equalities(self) -> List[int]:
        """Indices of constraints that hold with equality on all of P (P nonempty)"""
        gens = self.generators
        if gens.is_empty:
            return []
        return [i for i, h in enumerate(self.halfspaces) if gens.infimum(h.normal) == h.offset]

    def affine_dimension(self) -> int:
        if self.is_empty():
            return -1
        implicit = [self.halfspaces[i].normal for i in self.implicit_equalities()]
        if not implicit:
            return self.dimension
        return self.dimension - rank(Matrix.from_vectors(implicit, self.dimension))

    def is_full_dimensional(self) -> bool:
        return self.affine_dimension() == self.dimension

    def enumerate_vertices(self, box: Optional[Box] = None) -> List[Vector]:
        region = self.with_box(box)
        gens = region.generators
        if gens.is_empty:
            return []
        if not gens.is_bounded:
            raise UnboundedWithoutBox("polyhedron is unbounded; supply box bounds")
        for v in gens.vertices:
            tight = [h.normal for h in region.halfspaces if h.slack(v) == 0]
            assert tight and rank(Matrix.from_vectors(tight, self.dimension)) == self.dimension
        return list(gens.vertices)

    def facets(self) -> List[Facet]:
        """Facets of a full-dimensional P, one per irredundant constraint"""
        if not self.is_full_dimensional():
            raise NotFullDimensional(f"polyhedron has affine dimension {self.affine_dimension()} < {self.dimension}")
        kept = list(range(len(self.halfspaces)))
        for i in range(len(self.halfspaces)):
            others = Polyhedron(self.dimension, tuple(self.halfspaces[j] for j in kept if j != i))
            h = self.halfspaces[i]
            bound = others.supremum(h.normal)
            if bound is not None and bound <= h.offset:
                logger.debug(f"Constraint {i} is redundant")
                kept.remove(i)
        irredundant = tuple(self.halfspaces[j] for j in kept)
        return [
            Facet(j, self.halfspaces[j],
                  Polyhedron(self.dimension, irredundant + (self.halfspaces[j].flipped(),)))
            for j in kept
        ]


def hull_membership(points: Sequence[Vector], q: Vector) -> bool:
    """q in conv(points), by Caratheodory: try affinely independent subsets of size <= n + 1"""
    if not points:
        raise ContractViolation("hull of an empty point set")
    n = len(q)
    for p in points:
        if len(p) != n:
            raise DimensionMismatch("hull points and query differ in dimension")
    if q in points:
        return True
    for i in range(n):
        if not min(p[i] for p in points) <= q[i] <= max(p[i] for p in points):
            return False
    target = q.extend((1,))
    for size in range(2, min(len(points), n + 1) + 1):
        for subset in combinations(points, size):
            columns = [p.extend((1,)) for p in subset]
            A = Matrix.from_vectors(columns, n + 1).transpose()
            weights = solve_linear(A, target)
            if weights is not None and all(w >= 0 for w in weights):
                return True
    return False


def minkowski_hull_membership(point_sets: Sequence[Sequence[Vector]], q: Vector) -> bool:
    """q in conv(P_1) + ... + conv(P_m), by exact feasibility of the weight system"""
    n = len(q)
    sizes = [len(s) for s in point_sets]
    if any(size == 0 for size in sizes):
        raise ContractViolation("Minkowski sum with an empty summand")
    if len(point_sets) == 1:
        return hull_membership(point_sets[0], q)
    total = sum(sizes)
    equalities: List[Row] = []
    for coord in range(n):
        normal = [p[coord] for s in point_sets for p in s]
        equalities.append((Vector(tuple(normal)), q[coord]))
    start = 0
    for size in sizes:
        normal = [Fraction(int(start <= j < start + size)) for j in range(total)]
        equalities.append((Vector(tuple(normal)), Fraction(1)))
        start += size
    nonnegative = [(-Vector.unit(total, j), Fraction(0)) for j in range(total)]
    return find_point(total, nonnegative, equalities) is not None
