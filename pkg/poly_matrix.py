# poly_matrix.py - Square matrices over the Laurent ring, plus exact rational matrices

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from braid_core import Permutation
from laurent_ring import LaurentPoly, Scalar, poly_dot
from schemas import IntMatrixModel, MatrixModel

Rational = Union[int, Fraction]


class PolyMatrix:
    """n x n matrix of LaurentPoly entries sharing one variable count.

    Rows and columns are 1-indexed at every public accessor.
    """

    __slots__ = ("size", "nvars", "_rows")

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]]):
        rows = tuple(tuple(row) for row in rows)
        size = len(rows)
        if size == 0:
            raise ValueError("A matrix needs at least one row")
        if any(len(row) != size for row in rows):
            raise ValueError(f"Matrix is not square: row lengths {[len(r) for r in rows]} for {size} rows")
        nvars = rows[0][0].nvars
        for row in rows:
            for entry in row:
                if not isinstance(entry, LaurentPoly):
                    raise ValueError(f"Matrix entries must be LaurentPoly, got {type(entry).__name__}")
                if entry.nvars != nvars:
                    raise ValueError(f"Entries disagree on variable count: {entry.nvars} vs {nvars}")
        self.size = size
        self.nvars = nvars
        self._rows = rows

    @classmethod
    def _raw(cls, size: int, nvars: int, rows) -> "PolyMatrix":
        matrix = object.__new__(cls)
        matrix.size = size
        matrix.nvars = nvars
        matrix._rows = rows
        return matrix

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        one, zero = LaurentPoly.one(nvars), LaurentPoly.zero(nvars)
        return cls._raw(n, nvars, tuple(tuple(one if r == c else zero for c in range(n)) for r in range(n)))

    @classmethod
    def zero(cls, n: int, nvars: int) -> "PolyMatrix":
        zero = LaurentPoly.zero(nvars)
        return cls._raw(n, nvars, tuple((zero,) * n for _ in range(n)))

    @classmethod
    def from_ints(cls, rows: Sequence[Sequence[int]], nvars: int) -> "PolyMatrix":
        return cls([[LaurentPoly.constant(x, nvars) for x in row] for row in rows])

    @property
    def rows(self) -> Tuple[Tuple[LaurentPoly, ...], ...]:
        return self._rows

    def entry(self, r: int, c: int) -> LaurentPoly:
        if not (1 <= r <= self.size and 1 <= c <= self.size):
            raise IndexError(f"Entry ({r},{c}) out of range for a {self.size}x{self.size} matrix")
        return self._rows[r - 1][c - 1]

    def column(self, c: int) -> Tuple[LaurentPoly, ...]:
        if not 1 <= c <= self.size:
            raise IndexError(f"Column {c} out of range for size {self.size}")
        return tuple(row[c - 1] for row in self._rows)

    def is_identity(self) -> bool:
        return all(entry == (1 if r == c else 0)
                   for r, row in enumerate(self._rows) for c, entry in enumerate(row))

    def map_entries(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> "PolyMatrix":
        return PolyMatrix(tuple(tuple(fn(entry) for entry in row) for row in self._rows))

    def _check_compatible(self, other: "PolyMatrix"):
        if (self.size, self.nvars) != (other.size, other.nvars):
            raise ValueError(
                f"Dimension mismatch: {self.size}x{self.size} over {self.nvars} variables "
                f"vs {other.size}x{other.size} over {other.nvars}"
            )

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        self._check_compatible(other)
        return PolyMatrix._raw(self.size, self.nvars, tuple(
            tuple(a + b for a, b in zip(row_a, row_b)) for row_a, row_b in zip(self._rows, other._rows)
        ))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return mat_mul(self, other)

    def det(self) -> LaurentPoly:
        return mat_det(self)

    def permute_vars(self, s: Permutation) -> "PolyMatrix":
        return mat_permute_vars(s, self)

    def evaluate(self, point: Sequence[Scalar]) -> "IntMatrix":
        return mat_eval(self, point)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.nvars == other.nvars and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def format(self) -> str:
        return "\n".join("[" + ", ".join(str(entry) for entry in row) + "]" for row in self._rows)

    def __repr__(self):
        return f"PolyMatrix({self.size}x{self.size}, nvars={self.nvars})"

    def to_model(self) -> MatrixModel:
        return MatrixModel(n=self.size, rows=[[entry.to_model() for entry in row] for row in self._rows])

    @classmethod
    def from_model(cls, model: MatrixModel) -> "PolyMatrix":
        matrix = cls([[LaurentPoly.from_model(entry) for entry in row] for row in model.rows])
        if matrix.size != model.n:
            raise ValueError(f"Matrix JSON declares n={model.n} but has {matrix.size} rows")
        return matrix


def col_vector(value: LaurentPoly, i: int, j: int, n: int) -> Tuple[LaurentPoly, ...]:
    """value_{i->j}: `value` in rows i .. j-1, zero elsewhere."""
    if not 1 <= i < j <= n + 1:
        raise ValueError(f"Column vector needs 1 <= i < j <= n+1, got i={i}, j={j}, n={n}")
    zero = LaurentPoly.zero(value.nvars)
    return tuple(value if i <= row < j else zero for row in range(1, n + 1))


def col_embed(s: int, v: Sequence[LaurentPoly]) -> PolyMatrix:
    """c_s(v): the matrix whose s-th column is v and which is zero elsewhere."""
    n = len(v)
    if n == 0:
        raise ValueError("Cannot embed an empty vector")
    if not 1 <= s <= n:
        raise ValueError(f"Column index {s} out of range for a vector of length {n}")
    zero = LaurentPoly.zero(v[0].nvars)
    return PolyMatrix([[v[r] if c == s - 1 else zero for c in range(n)] for r in range(n)])


def mat_mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    A._check_compatible(B)
    n, nvars = A.size, A.nvars
    sparse_b = [[(c, entry) for c, entry in enumerate(row) if entry] for row in B._rows]
    rows = []
    for row in A._rows:
        buckets: List[List[Tuple[LaurentPoly, LaurentPoly]]] = [[] for _ in range(n)]
        for k, a in enumerate(row):
            if not a:
                continue
            for c, b in sparse_b[k]:
                buckets[c].append((a, b))
        rows.append(tuple(poly_dot(bucket, nvars) for bucket in buckets))
    return PolyMatrix._raw(n, nvars, tuple(rows))


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                sign = -sign
    return sign


def mat_det(A: PolyMatrix) -> LaurentPoly:
    """Division-free cofactor expansion.

    Columns are expanded sparsest first and minors are memoised by the set of
    rows they still use, so each minor is computed once.
    """
    n, nvars = A.size, A.nvars
    rows = A._rows
    order = sorted(range(n), key=lambda c: (sum(1 for r in range(n) if rows[r][c]), c))
    columns = [[rows[r][c] for r in range(n)] for c in order]
    one = LaurentPoly.one(nvars)
    memo: Dict[int, LaurentPoly] = {}

    def minor(k: int, mask: int) -> LaurentPoly:
        # det of the rows in mask against columns k .. n-1 (in expansion order)
        if k == n:
            return one
        if mask in memo:
            return memo[mask]
        pairs = []
        position = 0
        for r in range(n):
            if not mask >> r & 1:
                continue
            entry = columns[k][r]
            if entry:
                sub = minor(k + 1, mask & ~(1 << r))
                if sub:
                    pairs.append((-entry if position % 2 else entry, sub))
            position += 1
        memo[mask] = poly_dot(pairs, nvars)
        return memo[mask]

    det = minor(0, (1 << n) - 1)
    return det if _permutation_sign(order) > 0 else -det


def mat_permute_vars(s: Permutation, A: PolyMatrix) -> PolyMatrix:
    if s.degree != A.nvars:
        raise ValueError(f"Permutation degree {s.degree} does not match {A.nvars} variables")
    if s.is_identity():
        return A
    return PolyMatrix._raw(A.size, A.nvars, tuple(tuple(entry.permute_vars(s) for entry in row) for row in A._rows))


def mat_eval(A: PolyMatrix, point: Sequence[Scalar]) -> "IntMatrix":
    return IntMatrix([[entry.evaluate(point) for entry in row] for row in A._rows])


def _normalize(x: Rational) -> Rational:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    return int(x)


class IntMatrix:
    """Exact square matrix over the rationals (integral in every evaluation used here)."""

    __slots__ = ("size", "_rows")

    def __init__(self, rows: Sequence[Sequence[Rational]]):
        rows = tuple(tuple(_normalize(x) for x in row) for row in rows)
        size = len(rows)
        if size == 0 or any(len(row) != size for row in rows):
            raise ValueError(f"IntMatrix must be square and non-empty, got row lengths {[len(r) for r in rows]}")
        self.size = size
        self._rows = rows

    @classmethod
    def _raw(cls, rows) -> "IntMatrix":
        matrix = object.__new__(cls)
        matrix.size = len(rows)
        matrix._rows = rows
        return matrix

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._raw(tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Rational]]) -> "IntMatrix":
        return cls(list(zip(*columns)))

    @property
    def rows(self) -> Tuple[Tuple[Rational, ...], ...]:
        return self._rows

    def entry(self, r: int, c: int) -> Rational:
        if not (1 <= r <= self.size and 1 <= c <= self.size):
            raise IndexError(f"Entry ({r},{c}) out of range for a {self.size}x{self.size} matrix")
        return self._rows[r - 1][c - 1]

    def column(self, c: int) -> Tuple[Rational, ...]:
        if not 1 <= c <= self.size:
            raise IndexError(f"Column {c} out of range for size {self.size}")
        return tuple(row[c - 1] for row in self._rows)

    def _check_size(self, other: "IntMatrix"):
        if self.size != other.size:
            raise ValueError(f"Dimension mismatch: {self.size} vs {other.size}")

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        self._check_size(other)
        columns = tuple(zip(*other._rows))
        return IntMatrix._raw(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in columns) for row in self._rows
        ))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_size(other)
        return IntMatrix._raw(tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self._rows, other._rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_size(other)
        return IntMatrix._raw(tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self._rows, other._rows)))

    def apply(self, vector: Sequence[Rational]) -> Tuple[Rational, ...]:
        if len(vector) != self.size:
            raise ValueError(f"Vector of length {len(vector)} for a {self.size}x{self.size} matrix")
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self._rows)

    def is_identity(self) -> bool:
        return all(x == (1 if r == c else 0) for r, row in enumerate(self._rows) for c, x in enumerate(row))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def _echelon(self, augment: Optional["IntMatrix"] = None):
        """Gauss-Jordan over Fractions; returns (reduced rows, rank, determinant, width)."""
        n = self.size
        width = n + (augment.size if augment else 0)
        work = [[Fraction(x) for x in row] + ([Fraction(x) for x in augment._rows[r]] if augment else [])
                for r, row in enumerate(self._rows)]
        det = Fraction(1)
        rank = 0
        for col in range(n):
            pivot = next((r for r in range(rank, n) if work[r][col] != 0), None)
            if pivot is None:
                det = Fraction(0)
                continue
            if pivot != rank:
                work[rank], work[pivot] = work[pivot], work[rank]
                det = -det
            lead = work[rank][col]
            det *= lead
            work[rank] = [x / lead for x in work[rank]]
            for r in range(n):
                if r != rank and work[r][col] != 0:
                    factor = work[r][col]
                    work[r] = [x - factor * y for x, y in zip(work[r], work[rank])]
            rank += 1
        return work, rank, det, width

    def rank(self) -> int:
        return self._echelon()[1]

    def det(self) -> Rational:
        return _normalize(self._echelon()[2])

    def inverse(self) -> "IntMatrix":
        work, rank, _, _ = self._echelon(IntMatrix.identity(self.size))
        if rank < self.size:
            raise ValueError("Singular matrix has no inverse")
        return IntMatrix([row[self.size:] for row in work])

    def power(self, k: int) -> "IntMatrix":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = IntMatrix.identity(self.size)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def block(self, r: int) -> "IntMatrix":
        """The contiguous 2x2 submatrix at rows/cols r, r+1 (1-indexed)."""
        if not 1 <= r <= self.size - 1:
            raise ValueError(f"Block position {r} out of range for size {self.size}")
        return IntMatrix([row[r - 1:r + 1] for row in self._rows[r - 1:r + 1]])

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def to_lists(self) -> List[List[Union[int, str]]]:
        rows = [[_normalize(x) for x in row] for row in self._rows]
        return [[x if isinstance(x, int) else str(x) for x in row] for row in rows]

    def to_model(self) -> IntMatrixModel:
        return IntMatrixModel(n=self.size, rows=self.to_lists())

    def format(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)

    def __repr__(self):
        return f"IntMatrix({self.to_lists()})"
