"""Seeded random operators, nests, lattices and partitions.

All randomness comes from a ``random.Random`` (Mersenne Twister) instance
passed in by the caller, so a seed fixes every instance on every platform.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .errors import LatticeError
from .lattice import Nest, Partition, SubspaceLattice, closure
from .linalg import Matrix, Subspace, inverse
from .scalars import GaussianRational

SMALL = (-2, -1, -1, 0, 0, 0, 1, 1, 2)


def random_scalar(rng: random.Random, field: str = "Q", fractions: bool = True):
    """A small rational (occasionally with denominator 2 or 3)."""
    num = rng.choice(SMALL)
    den = rng.choice((1, 1, 1, 2, 3)) if fractions else 1
    re = Fraction(num, den)
    if field == "Qi" and rng.random() < 0.5:
        return GaussianRational(re, rng.choice(SMALL))
    return re


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> Matrix:
    """Integer matrix with determinant ±1 built from elementary row operations."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    return Matrix(rows)


def random_matrix(rng: random.Random, n: int, kind: str | None = None, field: str = "Q") -> Matrix:
    kind = kind or rng.choice(("dense", "sparse", "sparse", "lowrank", "lowrank", "zero_cols"))
    if kind == "dense":
        return Matrix([[random_scalar(rng, field) for _ in range(n)] for _ in range(n)])
    if kind == "sparse":
        p = rng.uniform(0.1, 0.45)
        return Matrix([[random_scalar(rng, field) if rng.random() < p else 0 for _ in range(n)]
                       for _ in range(n)])
    if kind == "lowrank":
        r = rng.randint(0, n)
        A = Matrix([[random_scalar(rng, field, False) for _ in range(r)] for _ in range(n)], r)
        B = Matrix([[random_scalar(rng, field) for _ in range(n)] for _ in range(r)], n)
        return A @ B
    if kind == "zero_cols":
        # upper-triangular-ish with some columns cleared: interesting kernel sets
        M = [[random_scalar(rng, field) if j >= i - rng.randint(0, 1) else 0 for j in range(n)]
             for i in range(n)]
        for j in rng.sample(range(n), rng.randint(0, n // 2)):
            for i in range(n):
                M[i][j] = 0
        return Matrix(M)
    raise ValueError(f"unknown matrix kind {kind!r}")


def random_dims(rng: random.Random, n: int) -> list[int]:
    inner = list(range(1, n))
    return sorted(rng.sample(inner, rng.randint(0, len(inner))))


def random_nest(rng: random.Random, n: int, coordinate: bool | None = None) -> tuple[Nest, Matrix]:
    """A random nest and the basis change ``S`` whose first columns span its elements."""
    if coordinate is None:
        coordinate = rng.random() < 0.5
    S = Matrix.identity(n) if coordinate else random_unimodular(rng, n)
    return Nest.from_flag(S.columns(), random_dims(rng, n)), S


def random_nest_instance(rng: random.Random, min_dim: int = 2, max_dim: int = 8,
                         field: str = "Q") -> tuple[Matrix, Nest]:
    """A random ``(T, N)``; half the time ``T`` is built in the nest's own basis."""
    n = rng.randint(min_dim, max_dim)
    N, S = random_nest(rng, n)
    K = random_matrix(rng, n, field=field)
    if S != Matrix.identity(n) and rng.random() < 0.5:
        K = S @ K @ inverse(S)
    return K, N


def random_subspace(rng: random.Random, n: int, dim: int | None = None) -> Subspace:
    d = rng.randint(0, n) if dim is None else dim
    return Subspace.span([[rng.choice(SMALL) for _ in range(n)] for _ in range(d)], n)


def _csl(rng: random.Random, n: int) -> SubspaceLattice:
    # spans of subsets of a fixed basis; unions/intersections give joins/meets
    S = random_unimodular(rng, n) if rng.random() < 0.7 else Matrix.identity(n)
    cols = S.columns()
    sets = {frozenset(), frozenset(range(n))}
    for _ in range(rng.randint(1, 3)):
        sets.add(frozenset(rng.sample(range(n), rng.randint(1, n))))
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(sets), 2):
            for c in (a | b, a & b):
                if c not in sets:
                    sets.add(c)
                    changed = True
    return SubspaceLattice([Subspace.span([cols[i] for i in sorted(s)], n) for s in sets], n)


def random_lattice(rng: random.Random, min_dim: int = 2, max_dim: int = 6,
                   max_size: int = 24) -> SubspaceLattice:
    """A random finite subspace lattice (commutative, generated, or a nest)."""
    n = rng.randint(min_dim, max_dim)
    kind = rng.choice(("csl", "csl", "generated", "generated", "nest"))
    if kind == "nest":
        return random_nest(rng, n)[0]
    if kind == "csl":
        return _csl(rng, n)
    for _ in range(20):
        gens = [random_subspace(rng, n) for _ in range(rng.randint(1, 3))]
        try:
            return closure(gens, n, max_size=max_size)
        except LatticeError:
            continue
    return _csl(rng, n)


def random_partition(rng: random.Random, N: Nest) -> Partition:
    last = len(N) - 1
    middle = [i for i in range(1, last) if rng.random() < 0.5]
    return Partition(N, tuple([0] + middle + [last]))
