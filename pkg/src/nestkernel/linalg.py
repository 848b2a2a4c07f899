"""Exact dense linear algebra over Q or Q(i).

Matrices are immutable and hashable.  Vectors are plain tuples of scalars.
Subspaces are stored by the reduced row echelon form of a row basis, which
makes equality of subspaces a syntactic comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .scalars import ONE, ZERO, GaussianRational, Scalar, conj, parse_scalar, sort_key

Vector = tuple  # tuple[Scalar, ...]


def _coerce(x) -> Scalar:
    t = type(x)
    if t is Fraction or t is GaussianRational:
        return x
    if t is int:
        return Fraction(x)
    return parse_scalar(x, "Qi" if isinstance(x, str) and "i" in x else "Q")


def vector(entries: Iterable) -> Vector:
    return tuple(_coerce(x) for x in entries)


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return not any(v)


def inner(x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    """Standard inner product, linear in ``x`` and conjugate-linear in ``y``."""
    if len(x) != len(y):
        raise DimensionMismatch(f"inner product of lengths {len(x)} and {len(y)}")
    return sum((a * conj(b) for a, b in zip(x, y)), ZERO)


def vadd(x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    if len(x) != len(y):
        raise DimensionMismatch(f"vector sum of lengths {len(x)} and {len(y)}")
    return tuple(a + b for a, b in zip(x, y))


def vscale(c: Scalar, x: Sequence[Scalar]) -> Vector:
    return tuple(c * a for a in x)


def vconj(x: Sequence[Scalar]) -> Vector:
    return tuple(conj(a) for a in x)


class Matrix:
    """Immutable dense matrix with exact entries."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(_coerce(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        # trusted constructor: rows already a tuple of tuples of scalars
        m = object.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    # constructors

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """Matrix unit with a single 1 at (i, j), zero-based."""
        return cls._raw(tuple(tuple(ONE if (r, c) == (i, j) else ZERO
                                    for c in range(n)) for r in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], nrows: int | None = None) -> "Matrix":
        if not columns:
            if nrows is None:
                raise ValueError("nrows is required when there are no columns")
            return cls._raw(tuple(() for _ in range(nrows)), 0)
        return cls(zip(*columns))

    # shape and access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> list[list[Scalar]]:
        return [list(r) for r in self.rows]

    # algebra

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = _coerce(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * col[k] for k, a in nz), ZERO) for col in cols))
        return Matrix._raw(tuple(out), other.ncols)

    def apply(self, v: Sequence[Scalar]) -> Vector:
        """Matrix-vector product ``M v``."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"cannot apply {self.shape} matrix to length {len(v)}")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nz), ZERO) for r in self.rows)

    def transpose(self) -> "Matrix":
        if self.ncols == 0:
            return Matrix._raw((), self.nrows)
        return Matrix._raw(tuple(zip(*self.rows)), self.nrows)

    def conjugate(self) -> "Matrix":
        return Matrix._raw(tuple(vconj(r) for r in self.rows), self.ncols)

    def adjoint(self) -> "Matrix":
        return self.transpose().conjugate()

    def trace(self) -> Scalar:
        if not self.is_square:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), ZERO)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def vec(self) -> Vector:
        """Row-major vectorization."""
        return tuple(a for r in self.rows for a in r)

    @classmethod
    def unvec(cls, v: Sequence[Scalar], n: int) -> "Matrix":
        return cls._raw(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)), n)

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (increasing)."""
    R, pivots = _rref_rows([list(r) for r in M.rows], M.ncols)
    return Matrix._raw(tuple(tuple(r) for r in R), M.ncols), pivots


def _rref_rows(A: list[list[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    # Gauss-Jordan in place on a list of mutable rows
    nrows = len(A)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        if piv != 1:
            inv = ONE / piv
            A[r] = [a * inv for a in A[r]]
        prow = A[r]
        for i in range(nrows):
            if i != r:
                f = A[i][c]
                if f:
                    A[i] = [a - f * b for a, b in zip(A[i], prow)]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def outer(x: Sequence[Scalar], y: Sequence[Scalar]) -> Matrix:
    """The rank-one operator ``z -> <z, y> x``; entry (i, j) is ``x_i conj(y_j)``."""
    x, y = vector(x), vector(y)
    yc = vconj(y)
    return Matrix._raw(tuple(tuple(a * b for b in yc) for a in x), len(y))


def rank_factorize(M: Matrix) -> list[tuple[Vector, Vector]]:
    """Write ``M`` as a sum of exactly ``rank(M)`` outer products ``x ⊗ y``.

    Uses ``M = C R`` with ``R`` the nonzero rows of the RREF and ``C`` the
    pivot columns of ``M``.
    """
    R, pivots = rref(M)
    terms = []
    for i, c in enumerate(pivots):
        terms.append((M.column(c), vconj(R.rows[i])))
    return terms


def inverse(M: Matrix) -> Matrix:
    if not M.is_square:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = M.nrows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(M.rows)]
    R, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix._raw(tuple(tuple(r[n:]) for r in R), n)


class Subspace:
    """A linear subspace of K^n, stored as the RREF of a row basis.

    Two subspaces are equal iff their canonical bases are identical.
    ``A <= B`` is inclusion.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, ambient_dim: int, basis: tuple, pivots: tuple):
        # trusted: use Subspace.span for arbitrary input
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots
        self._hash = None

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [list(vector(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
        R, pivots = _rref_rows(rows, ambient_dim)
        basis = tuple(tuple(r) for r in R[:len(pivots)])
        return cls(ambient_dim, basis, tuple(pivots))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls.span((unit_vector(n, i) for i in indices), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        return Matrix._raw(self.basis, self.ambient_dim)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} vs ambient {self.ambient_dim}")
        w = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = w[c]
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    def annihilates(self, v: Sequence[Scalar]) -> bool:
        """True iff the orthogonal projection onto this subspace kills ``v``."""
        return all(inner(v, b) == 0 for b in self.basis)

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"subspaces of K^{self.ambient_dim} and K^{other.ambient_dim}")

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        return all(other.contains(b) for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __gt__(self, other: "Subspace") -> bool:
        return other < self

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def sort_key(self) -> tuple:
        return (self.dim, tuple(tuple(sort_key(a) for a in r) for r in self.basis))

    def __repr__(self):
        if self.is_zero():
            return f"Subspace(0 in K^{self.ambient_dim})"
        rows = ", ".join("(" + ",".join(str(a) for a in r) + ")" for r in self.basis)
        return f"Subspace(span[{rows}] in K^{self.ambient_dim})"


def null_space(M: Matrix) -> Subspace:
    """Exact kernel ``{z : M z = 0}``."""
    R, pivots = rref(M)
    n = M.ncols
    free = [c for c in range(n) if c not in set(pivots)]
    vectors = []
    for f in free:
        z = [ZERO] * n
        z[f] = ONE
        for i, c in enumerate(pivots):
            z[c] = -R.rows[i][f]
        vectors.append(z)
    return Subspace.span(vectors, n)


def column_space(M: Matrix) -> Subspace:
    return Subspace.span(M.columns(), M.nrows)


def orthogonal_complement(S: Subspace) -> Subspace:
    n = S.ambient_dim
    if S.is_zero():
        return Subspace.full(n)
    # z ⊥ b  <=>  sum_j z_j conj(b_j) = 0
    return null_space(S.basis_matrix().conjugate())


def projector(S: Subspace) -> Matrix:
    """The orthogonal projection onto ``S``: ``A (A* A)^-1 A*`` with ``A`` = basis as columns."""
    n = S.ambient_dim
    if S.is_zero():
        return Matrix.zeros(n)
    if S.is_full():
        return Matrix.identity(n)
    A = S.basis_matrix().transpose()
    Ah = A.adjoint()
    return A @ inverse(Ah @ A) @ Ah


def subspace_of(P: Matrix) -> Subspace:
    """Range of a matrix (used to read a projection back as a subspace)."""
    return column_space(P)
