"""Kernel maps, kernel sets and the bilattice BIL(T, L).

Everything is computed by exhaustive enumeration over the finite lattice.
The basic fact used throughout is that, for ``P, A`` in ``L``,

    (P, A^⊥) ∈ BIL(T, L)   <=>   A^⊥ T P = 0   <=>   T(P) ⊆ A,

so a single table ``maps[p][a] = [T(L[p]) ⊆ L[a]]`` drives φ, ψ, σ and BIL.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence

from .errors import DimensionMismatch, WitnessNotFound
from .lattice import (Nest, SubspaceLattice, complement, p_of_x_index, subspace_join,
                      subspace_meet)
from .linalg import Matrix, Subspace, Vector, unit_vector, vadd, vscale, zero_vector

log = logging.getLogger(__name__)

WITNESS_BUDGET = 32


@dataclass(frozen=True)
class BilatticePair:
    """A pair ``(P, Q)`` ordered by ``(P1,Q1) ⪯ (P2,Q2) iff P1 <= P2 and Q2 <= Q1``."""

    p: Subspace
    q: Subspace

    def __le__(self, other: "BilatticePair") -> bool:
        return self.p <= other.p and other.q <= self.q

    def __lt__(self, other: "BilatticePair") -> bool:
        return self != other and self <= other

    def join(self, other: "BilatticePair") -> "BilatticePair":
        return BilatticePair(subspace_join(self.p, other.p), subspace_meet(self.q, other.q))

    def meet(self, other: "BilatticePair") -> "BilatticePair":
        return BilatticePair(subspace_meet(self.p, other.p), subspace_join(self.q, other.q))

    def __repr__(self):
        return f"({self.p!r}, {self.q!r})"


def pair_join_all(pairs, ambient_dim: int) -> BilatticePair:
    bottom = BilatticePair(Subspace.zero(ambient_dim), Subspace.full(ambient_dim))
    return reduce(BilatticePair.join, pairs, bottom)


def pair_meet_all(pairs, ambient_dim: int) -> BilatticePair:
    top = BilatticePair(Subspace.full(ambient_dim), Subspace.zero(ambient_dim))
    return reduce(BilatticePair.meet, pairs, top)


@dataclass(frozen=True)
class Bil:
    """All pairs ``(P, Q)`` in ``L × L^⊥`` with ``Q T P = 0``."""

    lattice: SubspaceLattice
    operator: Matrix
    pairs: frozenset

    def __contains__(self, pair: BilatticePair) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.sorted_pairs())

    def sorted_pairs(self) -> list[BilatticePair]:
        return sorted(self.pairs, key=lambda bp: (bp.p.sort_key(), bp.q.sort_key()))

    def contains_extremes(self) -> bool:
        n = self.lattice.ambient_dim
        z, i = Subspace.zero(n), Subspace.full(n)
        return all(BilatticePair(a, b) in self.pairs for a, b in ((z, z), (z, i), (i, z)))

    def is_closed(self) -> bool:
        ps = list(self.pairs)
        return all(a.join(b) in self.pairs and a.meet(b) in self.pairs
                   for k, a in enumerate(ps) for b in ps[k:])


class KernelTable:
    """φ, ψ and the inclusion table of ``T`` over a lattice, by element index."""

    def __init__(self, T: Matrix, L: SubspaceLattice):
        n = L.ambient_dim
        if T.shape != (n, n):
            raise DimensionMismatch(f"operator of shape {T.shape} for a lattice on K^{n}")
        self.operator = T
        self.lattice = L
        m = len(L)
        self.perps = [complement(P) for P in L]
        images = [[T.apply(b) for b in P.basis] for P in L]
        self.maps = [[all(L[a].contains(v) for v in images[p]) for a in range(m)]
                     for p in range(m)]
        self.phi = [L.join_all(q for q in range(m) if self.maps[q][p]) for p in range(m)]
        self.psi: list[Subspace] = []
        self.psi_perp: list[int | None] = []
        for p in range(m):
            level = [q for q in range(m) if self.phi[q] == self.phi[p]]
            psi = reduce(subspace_join, (self.perps[q] for q in level), Subspace.zero(n))
            self.psi.append(psi)
            perp = complement(psi)
            self.psi_perp.append(L.index(perp) if perp in L else None)

    def level_set(self, p: int) -> list[int]:
        return [q for q in range(len(self.lattice)) if self.phi[q] == self.phi[p]]

    def omega(self, p: int) -> BilatticePair:
        return BilatticePair(self.lattice[self.phi[p]], self.psi[p])


@lru_cache(maxsize=512)
def _analyze(T: Matrix, L: SubspaceLattice, kind: type) -> KernelTable:
    return KernelTable(T, L)


def analyze(T: Matrix, L: SubspaceLattice) -> KernelTable:
    """Cached :class:`KernelTable` for ``(T, L)``; both arguments are immutable."""
    return _analyze(T, L, type(L))


def bil(T: Matrix, L: SubspaceLattice) -> Bil:
    tab = analyze(T, L)
    m = len(L)
    pairs = frozenset(BilatticePair(L[p], tab.perps[a])
                      for p in range(m) for a in range(m) if tab.maps[p][a])
    return Bil(L, T, pairs)


def phi(T: Matrix, L: SubspaceLattice, P: Subspace) -> Subspace:
    """Join of all ``P'`` in ``L`` with ``P^⊥ T P' = 0``."""
    tab = analyze(T, L)
    return L[tab.phi[L.index(P)]]


def psi(T: Matrix, L: SubspaceLattice, P: Subspace) -> Subspace:
    """Join of ``P'^⊥`` over all ``P'`` sharing the φ-value of ``P``."""
    return analyze(T, L).psi[L.index(P)]


def omega(T: Matrix, L: SubspaceLattice, P: Subspace) -> BilatticePair:
    return analyze(T, L).omega(L.index(P))


def sigma(T: Matrix, L: SubspaceLattice, P: Subspace) -> Subspace:
    """Join of the φ-level set of ``P``."""
    tab = analyze(T, L)
    return L[L.join_all(tab.level_set(L.index(P)))]


@dataclass(frozen=True)
class KernelEntry:
    source: Subspace
    pair: BilatticePair


@dataclass(frozen=True)
class KernelSet:
    """The image of the kernel map, one entry per distinct pair.

    ``entries`` are listed in a linear extension of ⪯ (for nests, the chain
    order), each with the first lattice element mapping to it.
    """

    entries: tuple

    @property
    def pairs(self) -> list[BilatticePair]:
        return [e.pair for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, pair: BilatticePair) -> bool:
        return pair in self.pairs

    def is_totally_ordered(self) -> bool:
        ps = self.pairs
        return all(a <= b or b <= a for a in ps for b in ps)


def kernel_set(T: Matrix, L: SubspaceLattice) -> KernelSet:
    tab = analyze(T, L)
    seen: dict[BilatticePair, Subspace] = {}
    for p, P in enumerate(L):
        seen.setdefault(tab.omega(p), P)
    order = sorted(seen.items(), key=lambda kv: (kv[0].p.dim, -kv[0].q.dim, L.index(kv[1])))
    return KernelSet(tuple(KernelEntry(src, pair) for pair, src in order))


def _random_combination(rng: random.Random, basis: Sequence[Vector], n: int) -> Vector:
    x = zero_vector(n)
    for b in basis:
        c = Fraction(rng.randint(-9, 9))
        if c:
            x = vadd(x, vscale(c, b))
    return x


def omega_witness(T: Matrix, N: Nest, P: Subspace, seed: int = 0,
                  budget: int = WITNESS_BUDGET) -> Vector:
    """A vector ``x`` with ``P_x = φ_T(P)`` and ``P_{Tx} = ψ_T(P)^⊥``.

    Tries the basis vectors of φ_T(P), the standard basis vectors inside it
    and their sum, then ``budget`` seeded random combinations.  Every
    candidate is verified exactly before it is returned.
    """
    tab = analyze(T, N)
    p = N.index(P)
    n = N.ambient_dim
    target_x = tab.phi[p]
    target_tx = N.index(complement(tab.psi[p])) if complement(tab.psi[p]) in N else None
    if target_tx is None:
        raise WitnessNotFound("ψ_T(P)^⊥ is not an element of the nest")
    space = N[target_x]

    def ok(x: Vector) -> bool:
        return p_of_x_index(N, x) == target_x and p_of_x_index(N, T.apply(x)) == target_tx

    candidates: list[Vector] = [zero_vector(n)] if space.is_zero() else []
    candidates += list(space.basis)
    candidates += [unit_vector(n, i) for i in range(n) if space.contains(unit_vector(n, i))]
    if space.basis:
        candidates.append(reduce(vadd, space.basis))
    for x in candidates:
        if ok(x):
            return x
    log.debug("deterministic witness candidates failed for %r; trying %d random ones", P, budget)
    rng = random.Random(seed)
    for _ in range(budget):
        x = _random_combination(rng, space.basis, n)
        if ok(x):
            return x
    raise WitnessNotFound(f"no witness for {P!r} after {budget} random candidates")
