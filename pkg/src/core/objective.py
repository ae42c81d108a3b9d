"""
Convex objectives with exactly representable subdifferentials

Three variants: pointwise maximum of affine pieces, positive-semidefinite quadratics,
and finite sums of these. Each exposes evaluation, a relative-interior subgradient,
exact subdifferential membership and the dimension of the level-set face cut out by
that subgradient.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

from .geometry import Row, minkowski_hull_membership, system_dimension
from .numerics import Matrix, Vector, is_positive_semidefinite, nullspace, to_scalar, vector_sum
from ..errors import ContractViolation, DimensionMismatch, PreconditionViolated


@dataclass(frozen=True)
class SubgradientChoice:
    """A subgradient at a point plus the variant-specific record of how it was chosen"""
    point: Vector
    subgradient: Vector
    active_witness: Any


@dataclass(frozen=True)
class AffinePiece:
    gradient: Vector
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'offset', to_scalar(self.offset))

    def value(self, x: Vector) -> Fraction:
        return self.gradient.dot(x) + self.offset


class ConvexFunction(ABC):
    """Common interface of the objective variants"""

    @property
    @abstractmethod
    def dimension(self) -> int:
        ...

    @abstractmethod
    def evaluate(self, x: Vector) -> Fraction:
        ...

    @abstractmethod
    def relint_subgradient(self, z: Vector) -> SubgradientChoice:
        ...

    @abstractmethod
    def subdifferential_parts(self, z: Vector) -> Tuple[List[List[Vector]], Vector]:
        """df(z) = conv(P_1) + ... + conv(P_m) + fixed"""

    @abstractmethod
    def tight_rows(self, z: Vector, choice: SubgradientChoice) -> Tuple[List[Row], List[Row]]:
        """Linear description of {x : f(x) = f(z) + <a, x - z>} for the chosen a"""

    @abstractmethod
    def _face_dimension(self, z: Vector, a: Vector, t: Fraction) -> int:
        ...

    def _check(self, x: Vector):
        if len(x) != self.dimension:
            raise DimensionMismatch(f"point of dimension {len(x)} for an objective on Q^{self.dimension}")

    def subdifferential_contains(self, z: Vector, a: Vector) -> bool:
        self._check(z)
        self._check(a)
        point_sets, fixed = self.subdifferential_parts(z)
        target = a - fixed
        if not point_sets:
            return target.is_zero()
        return minkowski_hull_membership(point_sets, target)

    def is_zero_subgradient_possible(self, z: Vector) -> bool:
        return self.subdifferential_contains(z, Vector.zeros(self.dimension))

    def face_dimension(self, z: Vector, a: Vector, t: Fraction) -> int:
        """dim {x : f(x) <= t, <a, x - z> = 0} for a = relint_subgradient(z), t = f(z)"""
        self._check(z)
        if self.evaluate(z) != t:
            raise PreconditionViolated(f"f(z) = {self.evaluate(z)} differs from level {t}")
        if self.relint_subgradient(z).subgradient != a:
            raise PreconditionViolated("face dimension needs the relative-interior subgradient")
        return self._face_dimension(z, a, t)


@dataclass(frozen=True)
class MaxAffine(ConvexFunction):
    """f(x) = max_j <g_j, x> + c_j"""
    pieces: Tuple[AffinePiece, ...]

    def __post_init__(self):
        object.__setattr__(self, 'pieces', tuple(self.pieces))
        if not self.pieces:
            raise ContractViolation("max-affine function needs at least one piece")
        if len({len(p.gradient) for p in self.pieces}) != 1:
            raise DimensionMismatch("max-affine pieces differ in dimension")

    @property
    def dimension(self) -> int:
        return len(self.pieces[0].gradient)

    def evaluate(self, x: Vector) -> Fraction:
        self._check(x)
        return max(p.value(x) for p in self.pieces)

    def active_pieces(self, z: Vector) -> List[int]:
        value = self.evaluate(z)
        return [j for j, p in enumerate(self.pieces) if p.value(z) == value]

    def relint_subgradient(self, z: Vector) -> SubgradientChoice:
        active = self.active_pieces(z)
        weight = Fraction(1, len(active))
        a = vector_sum([self.pieces[j].gradient for j in active], self.dimension).scale(weight)
        return SubgradientChoice(z, a, tuple(active))

    def subdifferential_parts(self, z):
        return [[self.pieces[j].gradient for j in self.active_pieces(z)]], Vector.zeros(self.dimension)

    def tight_rows(self, z, choice):
        active = list(choice.active_witness)
        lead = self.pieces[active[0]]
        equalities = [(self.pieces[j].gradient - lead.gradient, lead.offset - self.pieces[j].offset)
                      for j in active[1:]]
        inequalities = [(p.gradient - lead.gradient, lead.offset - p.offset)
                        for j, p in enumerate(self.pieces) if j not in active]
        return inequalities, equalities

    def _face_dimension(self, z, a, t):
        level = [(p.gradient, t - p.offset) for p in self.pieces]
        return system_dimension(self.dimension, level, [(a, a.dot(z))])


@dataclass(frozen=True)
class Quadratic(ConvexFunction):
    """f(x) = 1/2 x^T A x + <b, x> + c with A symmetric positive semidefinite"""
    A: Matrix
    b: Vector
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 'c', to_scalar(self.c))
        rows, cols = self.A.shape
        if rows != cols or cols != len(self.b):
            raise DimensionMismatch(f"quadratic with A of shape {self.A.shape} and b of length {len(self.b)}")
        if any(self.A.rows[i][j] != self.A.rows[j][i] for i in range(rows) for j in range(i)):
            raise ContractViolation("quadratic form must be symmetric")
        if not is_positive_semidefinite(self.A):
            raise ContractViolation("quadratic form is not positive semidefinite")

    @property
    def dimension(self) -> int:
        return len(self.b)

    def evaluate(self, x: Vector) -> Fraction:
        self._check(x)
        return self.A.quadratic_form(x) / 2 + self.b.dot(x) + self.c

    def gradient(self, z: Vector) -> Vector:
        return self.A @ z + self.b

    def relint_subgradient(self, z: Vector) -> SubgradientChoice:
        self._check(z)
        g = self.gradient(z)
        return SubgradientChoice(z, g, g)

    def subdifferential_parts(self, z):
        return [], self.gradient(z)

    def tight_rows(self, z, choice):
        Az = self.A @ z
        return [], [(self.A.row(i), Az[i]) for i in range(self.dimension)]

    def _face_dimension(self, z, a, t):
        # on the hyperplane f(x) = t + 1/2 (x-z)^T A (x-z), so f <= t forces x - z in ker A
        return len(nullspace(Matrix(self.A.rows + (a.entries,), self.dimension)))


@dataclass(frozen=True)
class Sum(ConvexFunction):
    """Finite sum of convex terms (nested sums are flattened)"""
    terms: Tuple[ConvexFunction, ...]

    def __post_init__(self):
        flat: List[ConvexFunction] = []
        for term in self.terms:
            flat.extend(term.terms if isinstance(term, Sum) else (term,))
        if not flat:
            raise ContractViolation("sum needs at least one term")
        if len({t.dimension for t in flat}) != 1:
            raise DimensionMismatch("sum terms differ in dimension")
        object.__setattr__(self, 'terms', tuple(flat))

    @property
    def dimension(self) -> int:
        return self.terms[0].dimension

    def evaluate(self, x: Vector) -> Fraction:
        return sum((t.evaluate(x) for t in self.terms), Fraction(0))

    def relint_subgradient(self, z: Vector) -> SubgradientChoice:
        choices = tuple(t.relint_subgradient(z) for t in self.terms)
        a = vector_sum([c.subgradient for c in choices], self.dimension)
        return SubgradientChoice(z, a, choices)

    def subdifferential_parts(self, z):
        point_sets: List[List[Vector]] = []
        fixed = Vector.zeros(self.dimension)
        for term in self.terms:
            sets, shift = term.subdifferential_parts(z)
            point_sets.extend(sets)
            fixed = fixed + shift
        return point_sets, fixed

    def tight_rows(self, z, choice):
        inequalities, equalities = [], []
        for term, term_choice in zip(self.terms, choice.active_witness):
            ineq, eq = term.tight_rows(z, term_choice)
            inequalities.extend(ineq)
            equalities.extend(eq)
        return inequalities, equalities

    def _face_dimension(self, z, a, t):
        inequalities, equalities = self.tight_rows(z, self.relint_subgradient(z))
        return system_dimension(self.dimension, inequalities, equalities + [(a, a.dot(z))])


def max_affine(pieces: Sequence[Tuple[Sequence, object]]) -> MaxAffine:
    """Build a MaxAffine from (gradient, offset) pairs of plain numbers"""
    return MaxAffine(tuple(AffinePiece(Vector(tuple(g)), to_scalar(c)) for g, c in pieces))


def quadratic(A: Sequence[Sequence], b: Sequence, c=0) -> Quadratic:
    return Quadratic(Matrix(tuple(tuple(r) for r in A)), Vector(tuple(b)), to_scalar(c))
