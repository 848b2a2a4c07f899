"""Finite subspace lattices and nests.

A projection is identified with its range, so lattice elements are
:class:`~nestkernel.linalg.Subspace` objects.  Lattices keep their elements in
a canonical order and precompute join/meet tables by index; nests keep the
chain order ``0 = P_0 < ... < P_k = I``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, LatticeError, NotAMember
from .linalg import (Matrix, Subspace, Vector, null_space, orthogonal_complement,
                     projector, unit_vector, vadd)


def subspace_join(A: Subspace, B: Subspace) -> Subspace:
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch(f"join of subspaces of K^{A.ambient_dim} and K^{B.ambient_dim}")
    if A <= B:
        return B
    if B <= A:
        return A
    return Subspace.span(A.basis + B.basis, A.ambient_dim)


def subspace_meet(A: Subspace, B: Subspace) -> Subspace:
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch(f"meet of subspaces of K^{A.ambient_dim} and K^{B.ambient_dim}")
    if A <= B:
        return A
    if B <= A:
        return B
    # z in A ∧ B  <=>  z is orthogonal to both complements
    constraints = orthogonal_complement(A).basis + orthogonal_complement(B).basis
    return null_space(Matrix(constraints, A.ambient_dim).conjugate())


def complement(A: Subspace) -> Subspace:
    return orthogonal_complement(A)


class SubspaceLattice:
    """A finite family of subspaces containing 0 and I, closed under ∨ and ∧."""

    def __init__(self, elements: Iterable[Subspace], ambient_dim: int | None = None):
        elems = list(dict.fromkeys(elements))
        if ambient_dim is None:
            if not elems:
                raise LatticeError("empty lattice needs an explicit ambient dimension")
            ambient_dim = elems[0].ambient_dim
        for e in elems:
            if e.ambient_dim != ambient_dim:
                raise DimensionMismatch(
                    f"element of K^{e.ambient_dim} in a lattice on K^{ambient_dim}")
        self.ambient_dim = ambient_dim
        self.elements: tuple[Subspace, ...] = tuple(self._order(elems))
        self._index = {e: i for i, e in enumerate(self.elements)}
        if Subspace.zero(ambient_dim) not in self._index:
            raise LatticeError("lattice does not contain the zero subspace")
        if Subspace.full(ambient_dim) not in self._index:
            raise LatticeError("lattice does not contain the full space")
        self.bottom = self._index[Subspace.zero(ambient_dim)]
        self.top = self._index[Subspace.full(ambient_dim)]
        self._build_tables()

    def _order(self, elems: list[Subspace]) -> list[Subspace]:
        return sorted(elems, key=Subspace.sort_key)

    def _build_tables(self) -> None:
        m = len(self.elements)
        E = self.elements
        leq = [[False] * m for _ in range(m)]
        for i in range(m):
            for j in range(m):
                leq[i][j] = i == j or (E[i].dim < E[j].dim and E[i] <= E[j])
        join = [[0] * m for _ in range(m)]
        meet = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                if leq[i][j]:
                    jn, mt = j, i
                elif leq[j][i]:
                    jn, mt = i, j
                else:
                    jn = self._lookup(subspace_join(E[i], E[j]), "join")
                    mt = self._lookup(subspace_meet(E[i], E[j]), "meet")
                join[i][j] = join[j][i] = jn
                meet[i][j] = meet[j][i] = mt
        self._leq = leq
        self._join = join
        self._meet = meet

    def _lookup(self, S: Subspace, op: str) -> int:
        try:
            return self._index[S]
        except KeyError:
            raise LatticeError(f"family is not closed under {op}: {S!r} is missing") from None

    # membership and indexing

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, S: Subspace) -> bool:
        return S in self._index

    def __getitem__(self, i: int) -> Subspace:
        return self.elements[i]

    def index(self, S: Subspace) -> int:
        try:
            return self._index[S]
        except KeyError:
            raise NotAMember(f"{S!r} is not an element of the lattice") from None

    def leq(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    def join_index(self, i: int, j: int) -> int:
        return self._join[i][j]

    def meet_index(self, i: int, j: int) -> int:
        return self._meet[i][j]

    def join_all(self, indices: Iterable[int]) -> int:
        """Index of the join of the given elements (the empty join is 0)."""
        return reduce(self.join_index, indices, self.bottom)

    def meet_all(self, indices: Iterable[int]) -> int:
        """Index of the meet of the given elements (the empty meet is I)."""
        return reduce(self.meet_index, indices, self.top)

    @property
    def is_chain(self) -> bool:
        m = len(self)
        return all(self._leq[i][j] or self._leq[j][i] for i in range(m) for j in range(m))

    def __eq__(self, other):
        if not isinstance(other, SubspaceLattice):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and set(self.elements) == set(other.elements)

    def __hash__(self):
        return hash((self.ambient_dim, frozenset(self.elements)))

    def __repr__(self):
        dims = [e.dim for e in self.elements]
        return f"{type(self).__name__}(K^{self.ambient_dim}, {len(self)} elements, dims={dims})"


class Nest(SubspaceLattice):
    """A finite chain ``0 = P_0 < P_1 < ... < P_k = I``.

    ``elements`` is the chain in increasing order, so index order is lattice
    order and joins/meets are max/min of indices.
    """

    def _order(self, elems):
        ordered = sorted(elems, key=lambda S: S.dim)
        for a, b in zip(ordered, ordered[1:]):
            if not a < b:
                raise LatticeError("subspaces are not totally ordered by inclusion")
        return ordered

    def _build_tables(self) -> None:
        m = len(self.elements)
        self._leq = [[i <= j for j in range(m)] for i in range(m)]
        self._join = [[max(i, j) for j in range(m)] for i in range(m)]
        self._meet = [[min(i, j) for j in range(m)] for i in range(m)]

    @property
    def chain(self) -> tuple[Subspace, ...]:
        return self.elements

    @property
    def is_chain(self) -> bool:
        return True

    @classmethod
    def coordinate(cls, n: int, dims: Sequence[int]) -> "Nest":
        """Nest of spans of the first ``d`` standard basis vectors; 0 and n are added."""
        ds = sorted(set(dims) | {0, n})
        if ds[0] < 0 or ds[-1] > n:
            raise LatticeError(f"dimensions {list(dims)} out of range for K^{n}")
        return cls([Subspace.coordinate(n, range(d)) for d in ds], n)

    @classmethod
    def maximal_coordinate(cls, n: int) -> "Nest":
        """The nest whose algebra is the upper triangular matrices."""
        return cls.coordinate(n, range(n + 1))

    @classmethod
    def from_flag(cls, basis_columns: Sequence[Sequence], dims: Sequence[int]) -> "Nest":
        """Nest of spans of the first ``d`` vectors of an ordered basis."""
        n = len(basis_columns)
        ds = sorted(set(dims) | {0, n})
        return cls([Subspace.span(basis_columns[:d], n) for d in ds], n)


def to_nest(L: SubspaceLattice) -> Nest:
    """View a totally ordered lattice as a :class:`Nest`."""
    if isinstance(L, Nest):
        return L
    if not L.is_chain:
        raise LatticeError("lattice is not totally ordered")
    return Nest(L.elements, L.ambient_dim)


def lattice_perp(L: SubspaceLattice) -> SubspaceLattice:
    comps = [complement(P) for P in L]
    if isinstance(L, Nest):
        return Nest(comps, L.ambient_dim)
    return SubspaceLattice(comps, L.ambient_dim)


def closure(generators: Iterable[Subspace], ambient_dim: int, max_size: int = 64) -> SubspaceLattice:
    """Smallest lattice containing the generators, 0 and I.

    Raises :class:`LatticeError` when the closure exceeds ``max_size``
    elements (subspace lattices generated by four or more subspaces can be
    infinite).
    """
    elems = {Subspace.zero(ambient_dim), Subspace.full(ambient_dim), *generators}
    frontier = list(elems)
    while frontier:
        new = []
        current = list(elems)
        for A in frontier:
            for B in current:
                for C in (subspace_join(A, B), subspace_meet(A, B)):
                    if C not in elems:
                        elems.add(C)
                        new.append(C)
                        if len(elems) > max_size:
                            raise LatticeError(f"lattice closure exceeds {max_size} elements")
        frontier = new
    return SubspaceLattice(elems, ambient_dim)


def _check_vector(L: SubspaceLattice, x: Sequence) -> None:
    if len(x) != L.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(x)} for a lattice on K^{L.ambient_dim}")


def p_of_x_index(L: SubspaceLattice, x: Sequence) -> int:
    _check_vector(L, x)
    return L.meet_all(i for i, P in enumerate(L) if P.contains(x))


def p_hat_of_x_index(L: SubspaceLattice, x: Sequence) -> int:
    _check_vector(L, x)
    return L.join_all(i for i, P in enumerate(L) if P.annihilates(x))


def p_of_x(L: SubspaceLattice, x: Sequence) -> Subspace:
    """Meet of all lattice elements containing ``x``."""
    return L[p_of_x_index(L, x)]


def p_hat_of_x(L: SubspaceLattice, x: Sequence) -> Subspace:
    """Join of all lattice elements whose projection kills ``x``."""
    return L[p_hat_of_x_index(L, x)]


def predecessor(N: Nest, P: Subspace) -> Subspace:
    """``P_-``: join of the elements strictly below ``P`` (0 for P = 0)."""
    i = N.index(P)
    return N[max(i - 1, 0)]


def successor(N: Nest, P: Subspace) -> Subspace:
    """``P_+``: meet of the elements strictly above ``P`` (I for P = I)."""
    i = N.index(P)
    return N[min(i + 1, len(N) - 1)]


def _gap_vector(upper: Subspace, lower: Subspace) -> Vector:
    # a nonzero vector of upper ⊖ lower, preferring standard basis vectors
    gap = subspace_meet(upper, complement(lower))
    if gap.is_zero():
        raise LatticeError("empty gap between consecutive nest elements")
    n = gap.ambient_dim
    for i in range(n):
        e = unit_vector(n, i)
        if gap.contains(e):
            return e
    return gap.basis[0]


def vector_with_supports(N: Nest, P: Subspace, Nn: Subspace) -> Vector:
    """A vector ``x`` with ``P_x = P`` and ``P̂_x = Nn`` (requires ``Nn < P``)."""
    i, j = N.index(P), N.index(Nn)
    if not j < i:
        raise ValueError("vector_with_supports requires Nn < P")
    P_minus = N[i - 1]
    x = _gap_vector(P, P_minus)
    if j != i - 1:
        x = vadd(x, _gap_vector(N[j + 1], Nn))
    return x


@dataclass(frozen=True)
class Partition:
    """A sub-chain ``0 = P_0 < ... < P_k = I`` of a nest, by chain indices."""

    nest: Nest
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(self.indices)
        object.__setattr__(self, "indices", idx)
        if not idx or idx[0] != 0 or idx[-1] != len(self.nest) - 1:
            raise LatticeError("partition must start at 0 and end at I")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise LatticeError("partition indices must be strictly increasing")

    @property
    def subspaces(self) -> list[Subspace]:
        return [self.nest[i] for i in self.indices]


class Truncation(NamedTuple):
    upper: Matrix
    lower: Matrix
    diagonal: Matrix


def truncations(F: Partition, T: Matrix) -> Truncation:
    """Upper, lower and block-diagonal parts of ``T`` relative to ``F``."""
    n = F.nest.ambient_dim
    if T.shape != (n, n):
        raise DimensionMismatch(f"operator of shape {T.shape} for a nest on K^{n}")
    projs = [projector(S) for S in F.subspaces]
    ident = Matrix.identity(n)
    U = L = D = Matrix.zeros(n)
    for prev, cur in zip(projs, projs[1:]):
        block = T @ (cur - prev)
        U = U + prev @ block
        L = L + (ident - cur) @ block
        D = D + (cur - prev) @ block
    return Truncation(U, L, D)
