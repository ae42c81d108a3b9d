"""
Exact rational scalars, vectors and small dense linear algebra

Everything here works over fractions.Fraction; there is no tolerance anywhere.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from ..errors import ContractViolation, DimensionMismatch, DocumentError

Scalar = Fraction

_RATIONAL_PATTERN = re.compile(r'^[+-]?\d+(/\d+)?$')
_DECIMAL_PATTERN = re.compile(r'^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$')


def to_scalar(value) -> Fraction:
    """Convert ints and Fractions to a Fraction; floats are refused"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise ContractViolation(f"expected an exact rational, got {type(value).__name__} {value!r}")
    return Fraction(value)


def parse_scalar(value, field: Optional[str] = None) -> Fraction:
    """Parse a JSON literal: bare integers or strings 'p' / 'p/q'"""
    if isinstance(value, bool):
        raise DocumentError("expected an integer or a 'p/q' string, got a boolean", field)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise DocumentError("floats not accepted; use p/q", field)
    if isinstance(value, str):
        text = value.strip()
        if _RATIONAL_PATTERN.match(text):
            numerator, _, denominator = text.partition('/')
            if denominator and int(denominator) == 0:
                raise DocumentError("zero denominator", field)
            return Fraction(int(numerator), int(denominator or 1))
        if _DECIMAL_PATTERN.match(text):
            raise DocumentError("floats not accepted; use p/q", field)
    raise DocumentError(f"expected an integer or a 'p/q' string, got {value!r}", field)


def format_scalar(value: Fraction) -> str:
    """Canonical text form: 'p' for integers, 'p/q' otherwise"""
    return str(Fraction(value))


@dataclass(frozen=True, order=True)
class Vector:
    """Point or direction in Q^n; ordering is lexicographic on the entries"""
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple(to_scalar(e) for e in self.entries))

    @classmethod
    def of(cls, values: Iterable, dimension: Optional[int] = None) -> 'Vector':
        vector = cls(tuple(values))
        if dimension is not None and len(vector.entries) != dimension:
            raise DimensionMismatch(f"expected {dimension} entries, got {len(vector.entries)}")
        return vector

    @classmethod
    def zeros(cls, dimension: int) -> 'Vector':
        return cls((Fraction(0),) * dimension)

    @classmethod
    def unit(cls, dimension: int, index: int) -> 'Vector':
        return cls(tuple(Fraction(int(i == index)) for i in range(dimension)))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def _check(self, other: 'Vector'):
        if len(other.entries) != len(self.entries):
            raise DimensionMismatch(f"dimension {len(self.entries)} vs {len(other.entries)}")

    def dot(self, other: 'Vector') -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def __add__(self, other: 'Vector') -> 'Vector':
        self._check(other)
        return Vector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: 'Vector') -> 'Vector':
        self._check(other)
        return Vector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> 'Vector':
        return Vector(tuple(-a for a in self.entries))

    def scale(self, factor) -> 'Vector':
        factor = to_scalar(factor)
        return Vector(tuple(factor * a for a in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def extend(self, values: Iterable) -> 'Vector':
        return Vector(self.entries + tuple(values))

    def direction(self) -> 'Vector':
        """Rescale so the first nonzero entry has absolute value 1"""
        lead = next((a for a in self.entries if a != 0), None)
        if lead is None:
            return self
        return self.scale(1 / abs(lead))

    def __str__(self) -> str:
        return '(' + ', '.join(format_scalar(a) for a in self.entries) + ')'


def vector_sum(vectors: Sequence[Vector], dimension: int) -> Vector:
    total = Vector.zeros(dimension)
    for v in vectors:
        total = total + v
    return total


@dataclass(frozen=True)
class Matrix:
    """Dense rectangular matrix; the symmetric flag is verified entry-wise"""
    rows: Tuple[Tuple[Fraction, ...], ...]
    cols: Optional[int] = None
    symmetric: bool = False

    def __post_init__(self):
        rows = tuple(tuple(to_scalar(v) for v in row) for row in self.rows)
        cols = self.cols if self.cols is not None else (len(rows[0]) if rows else 0)
        if any(len(row) != cols for row in rows):
            raise DimensionMismatch("matrix rows have different lengths")
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'cols', cols)
        if self.symmetric:
            if len(rows) != cols:
                raise ContractViolation("symmetric matrix must be square")
            if any(rows[i][j] != rows[j][i] for i in range(cols) for j in range(i)):
                raise ContractViolation("matrix flagged symmetric is not symmetric")

    @classmethod
    def identity(cls, n: int) -> 'Matrix':
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, True)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'Matrix':
        return cls(tuple((0,) * cols for _ in range(rows)), cols)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Vector], cols: int) -> 'Matrix':
        return cls(tuple(v.entries for v in vectors), cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), self.cols

    def row(self, index: int) -> Vector:
        return Vector(self.rows[index])

    def column(self, index: int) -> Vector:
        return Vector(tuple(row[index] for row in self.rows))

    def transpose(self) -> 'Matrix':
        return Matrix(tuple(tuple(row[j] for row in self.rows) for j in range(self.cols)),
                      len(self.rows))

    def __matmul__(self, vector: Vector) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"matrix has {self.cols} columns, vector has {len(vector)} entries")
        return Vector(tuple(sum((a * b for a, b in zip(row, vector.entries)), Fraction(0))
                            for row in self.rows))

    def quadratic_form(self, vector: Vector) -> Fraction:
        return vector.dot(self @ vector)


def _reduce(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over the first ncols columns (extra columns ride along)"""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def _augmented(A: Matrix, b: Vector) -> List[List[Fraction]]:
    if len(b) != len(A.rows):
        raise DimensionMismatch(f"matrix has {len(A.rows)} rows, right-hand side has {len(b)} entries")
    return [list(row) + [rhs] for row, rhs in zip(A.rows, b.entries)]


def _back_substitute(m: List[List[Fraction]], pivots: List[int], ncols: int) -> Optional[Vector]:
    if any(row[-1] != 0 for row in m[len(pivots):]):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][-1]
    return Vector(tuple(x))


def solve_linear(A: Matrix, b: Vector) -> Optional[Vector]:
    """Some exact solution of A x = b (free variables set to zero), or None if inconsistent"""
    m, pivots = _reduce(_augmented(A, b), A.cols)
    return _back_substitute(m, pivots, A.cols)


def solve_unique(A: Matrix, b: Vector) -> Optional[Vector]:
    """The solution of A x = b when it exists and A has full column rank, else None"""
    m, pivots = _reduce(_augmented(A, b), A.cols)
    if len(pivots) < A.cols:
        return None
    return _back_substitute(m, pivots, A.cols)


def rank(A: Matrix) -> int:
    return len(_reduce([list(r) for r in A.rows], A.cols)[1])


def nullspace(A: Matrix) -> List[Vector]:
    """Basis of {d : A d = 0}; empty iff A has full column rank"""
    m, pivots = _reduce([list(r) for r in A.rows], A.cols)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        d = [Fraction(0)] * A.cols
        d[f] = Fraction(1)
        for i, c in enumerate(pivots):
            d[c] = -m[i][f]
        basis.append(Vector(tuple(d)))
    return basis


def is_positive_semidefinite(A: Matrix) -> bool:
    """Exact symmetric elimination with diagonal pivoting (LDL^T)"""
    if A.shape[0] != A.shape[1]:
        raise ContractViolation("PSD check needs a square matrix")
    m = [list(row) for row in A.rows]
    active = list(range(len(m)))
    while active:
        if any(m[i][i] < 0 for i in active):
            return False
        pivot = next((i for i in active if m[i][i] > 0), None)
        if pivot is None:
            # all remaining diagonal entries vanish, so the block must vanish too
            return all(m[i][j] == 0 for i in active for j in active)
        active.remove(pivot)
        d = m[pivot][pivot]
        for i in active:
            for j in active:
                m[i][j] -= m[i][pivot] * m[pivot][j] / d
    return True
