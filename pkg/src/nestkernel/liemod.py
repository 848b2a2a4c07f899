"""Nest algebras, Lie modules over them, and a decomposability checker.

Operator spaces are linear subspaces of the n×n matrices, stored as canonical
subspaces of K^(n*n) under row-major vectorization.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .decompose import Rank1Term, decompose
from .errors import DimensionMismatch, NotAMember
from .lattice import SubspaceLattice, complement, predecessor, to_nest
from .linalg import (Matrix, Subspace, Vector, null_space, orthogonal_complement, outer,
                     rank, rank_factorize, rref, unit_vector, vconj, vector)
from .scalars import ZERO, conj

DEFAULT_SAMPLES = 64
SAMPLE_RANGE = 2 ** 16


@dataclass(frozen=True)
class OperatorSpace:
    n: int
    space: Subspace

    @classmethod
    def span(cls, matrices: Iterable[Matrix], n: int) -> "OperatorSpace":
        vecs = []
        for X in matrices:
            if X.shape != (n, n):
                raise DimensionMismatch(f"matrix of shape {X.shape} in an operator space on K^{n}")
            vecs.append(X.vec())
        return cls(n, Subspace.span(vecs, n * n))

    @classmethod
    def full(cls, n: int) -> "OperatorSpace":
        return cls(n, Subspace.full(n * n))

    @classmethod
    def scalars(cls, n: int) -> "OperatorSpace":
        return cls.span([Matrix.identity(n)], n)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list[Matrix]:
        return [Matrix.unvec(b, self.n) for b in self.space.basis]

    def __contains__(self, X: Matrix) -> bool:
        return contains(self, X)

    def __le__(self, other: "OperatorSpace") -> bool:
        return self.space <= other.space


def contains(M: OperatorSpace, X: Matrix) -> bool:
    if X.shape != (M.n, M.n):
        raise DimensionMismatch(f"matrix of shape {X.shape} vs operator space on K^{M.n}")
    return M.space.contains(X.vec())


def lie_bracket(A: Matrix, B: Matrix) -> Matrix:
    if not (A.is_square and A.shape == B.shape):
        raise DimensionMismatch(f"bracket of {A.shape} and {B.shape}")
    return A @ B - B @ A


def nest_algebra(N: SubspaceLattice) -> OperatorSpace:
    """All ``X`` with ``P^⊥ X P = 0`` for every ``P`` in the nest."""
    n = N.ambient_dim
    rows = []
    for P in N:
        if P.is_zero() or P.is_full():
            continue
        # <X b, c> = sum_ij conj(c_i) X_ij b_j for b in P, c in P^⊥
        for c in complement(P).basis:
            cc = vconj(c)
            for b in P.basis:
                rows.append([cc[i] * b[j] for i in range(n) for j in range(n)])
    if not rows:
        return OperatorSpace.full(n)
    return OperatorSpace(n, null_space(Matrix(rows, n * n)))


def _constraint_test(X: Matrix, N: SubspaceLattice) -> bool:
    return all(P.contains(X.apply(b)) for P in N for b in P.basis)


def rank_one_criterion(x: Sequence, y: Sequence, N: SubspaceLattice) -> bool:
    """``x ⊗ y`` is in the nest algebra iff some ``P`` has ``P x = x`` and ``P_- y = 0``."""
    nest = to_nest(N)
    return any(P.contains(x) and predecessor(nest, P).annihilates(y) for P in nest)


def in_nest_algebra(X: Matrix, N: SubspaceLattice) -> bool:
    n = N.ambient_dim
    if X.shape != (n, n):
        raise DimensionMismatch(f"matrix of shape {X.shape} for a nest on K^{n}")
    result = _constraint_test(X, N)
    if rank(X) == 1:
        (x, y), = rank_factorize(X)
        if rank_one_criterion(x, y, N) != result:
            raise AssertionError("rank-one criterion disagrees with the invariance test")
    return result


def lie_module_closure(generators: Iterable[Matrix], N: SubspaceLattice) -> OperatorSpace:
    """Smallest subspace containing the generators and closed under ``[·, T(N)]``."""
    n = N.ambient_dim
    gens = list(generators)
    for g in gens:
        if g.shape != (n, n):
            raise DimensionMismatch(f"generator of shape {g.shape} for a nest on K^{n}")
    algebra = nest_algebra(N).basis
    space = Subspace.span([g.vec() for g in gens], n * n)
    frontier = [Matrix.unvec(b, n) for b in space.basis]
    while frontier:
        new = []
        for A in frontier:
            for B in algebra:
                C = lie_bracket(A, B)
                v = C.vec()
                if not space.contains(v):
                    space = Subspace.span(space.basis + (v,), n * n)
                    new.append(C)
        frontier = new
    return OperatorSpace(n, space)


def rank1_partners(M: OperatorSpace, x: Sequence) -> Subspace:
    """The space ``{y : x ⊗ y ∈ M}`` for a fixed nonzero ``x``."""
    x = vector(x)
    n = M.n
    if len(x) != n:
        raise DimensionMismatch(f"vector of length {len(x)} for operators on K^{n}")
    if not any(x):
        raise ValueError("x must be nonzero")
    # x ⊗ y ∈ M  <=>  sum_ij x_i conj(y_j) conj(c_ij) = 0 for c spanning M^⊥;
    # linear in z = conj(y)
    rows = []
    for c in orthogonal_complement(M.space).basis:
        rows.append([sum((x[i] * conj(c[i * n + j]) for i in range(n)), ZERO) for j in range(n)])
    if not rows:
        return Subspace.full(n)
    Z = null_space(Matrix(rows, n))
    return Subspace.span([vconj(z) for z in Z.basis], n)


class Status(str, enum.Enum):
    DECOMPOSABLE = "DECOMPOSABLE"
    NOT_DECOMPOSABLE = "NOT_DECOMPOSABLE"
    UNDETERMINED = "UNDETERMINED"


NO_RANK_ONE_CERTIFICATE = ("no nonzero rank-1 element detected (sampled): probed all standard "
                           "basis vectors and {samples} seeded random vectors (seed {seed}); "
                           "a random probe misses rank-1 elements only on a measure-zero set")


@dataclass
class DecomposabilityVerdict:
    status: Status
    witness: list | None = None
    certificate: str | None = None
    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    stage: str = ""
    notes: dict = field(default_factory=dict)


def _witness_is_valid(T: Matrix, terms: Sequence[Rank1Term], M: OperatorSpace) -> bool:
    total = Matrix.zeros(T.nrows)
    for t in terms:
        R = t.matrix()
        if rank(R) != 1 or not contains(M, R):
            return False
        total = total + R
    return total == T


def _probe_vectors(n: int, rng: random.Random, samples: int) -> list[Vector]:
    probes = [unit_vector(n, i) for i in range(n)]
    while len(probes) < n + samples:
        v = tuple(Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)) for _ in range(n))
        if any(v):
            probes.append(v)
    return probes


def _solve_in_span(columns: list[Vector], target: Vector) -> list | None:
    """Coefficients ``c`` with ``sum c_i columns[i] = target``, or None."""
    k = len(columns)
    aug = Matrix([[col[r] for col in columns] + [target[r]] for r in range(len(target))], k + 1)
    R, pivots = rref(aug)
    if k in pivots:
        return None
    coeffs = [ZERO] * k
    for i, c in enumerate(pivots):
        coeffs[c] = R.rows[i][k]
    return coeffs


def check_decomposable(T: Matrix, M: OperatorSpace, N: SubspaceLattice, seed: int = 0,
                       samples: int = DEFAULT_SAMPLES) -> DecomposabilityVerdict:
    """Decide whether ``T`` is a finite sum of rank-one elements of ``M``.

    1. Decompose along the kernel set of ``T`` and test every term for
       membership in ``M``.
    2. Otherwise probe ``M`` for rank-one elements ``x ⊗ y`` with ``x`` a
       standard basis vector or one of ``samples`` seeded random vectors.  If
       none exist, answer NOT_DECOMPOSABLE.  If ``T`` lies in the span of the
       rank-one elements found, those give an explicit witness.
    3. Otherwise UNDETERMINED.
    """
    n = M.n
    if T.shape != (n, n):
        raise DimensionMismatch(f"operator of shape {T.shape} for operators on K^{n}")
    if not contains(M, T):
        raise NotAMember("T is not an element of M")
    verdict = dict(seed=seed, samples=samples)

    if T.is_zero():
        return DecomposabilityVerdict(Status.DECOMPOSABLE, [], stage="zero", **verdict)

    D = decompose(T, N)
    terms = list(D.terms)
    if _witness_is_valid(T, terms, M):
        return DecomposabilityVerdict(Status.DECOMPOSABLE, terms, stage="kernel-set", **verdict)

    rng = random.Random(seed)
    found: list[tuple[Vector, Subspace]] = []
    for x in _probe_vectors(n, rng, samples):
        Y = rank1_partners(M, x)
        if not Y.is_zero():
            found.append((x, Y))
    if not found:
        return DecomposabilityVerdict(Status.NOT_DECOMPOSABLE,
                                      certificate=NO_RANK_ONE_CERTIFICATE.format(**verdict),
                                      stage="rank-one-probe", **verdict)

    gens = [(x, y) for x, Y in found for y in Y.basis]
    coeffs = _solve_in_span([outer(x, y).vec() for x, y in gens], T.vec())
    if coeffs is not None:
        grouped: dict[Vector, Vector] = {}
        for (x, y), c in zip(gens, coeffs):
            if c:
                # c (x ⊗ y) = x ⊗ (conj(c) y)
                contrib = tuple(conj(c) * a for a in y)
                prev = grouped.get(x)
                grouped[x] = contrib if prev is None else tuple(a + b for a, b in zip(prev, contrib))
        witness = [Rank1Term(x, y, 0) for x, y in grouped.items() if any(y)]
        if _witness_is_valid(T, witness, M):
            return DecomposabilityVerdict(Status.DECOMPOSABLE, witness, stage="rank-one-span",
                                          **verdict)
    return DecomposabilityVerdict(Status.UNDETERMINED, stage="undetermined",
                                  notes={"rank_one_probes_found": len(found)}, **verdict)
