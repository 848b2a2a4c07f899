"""Executable invariants.

Each ``check_*`` function returns a list of human-readable violation strings
(empty when the property holds).  They are shared by the test-suite and the
``check-invariants`` CLI command.
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from .decompose import decompose, verify_decomposition
from .errors import WitnessNotFound
from .kernel import (BilatticePair, analyze, bil, kernel_set, omega_witness, pair_join_all,
                     pair_meet_all, sigma)
from .lattice import (Nest, Partition, SubspaceLattice, complement, lattice_perp, p_hat_of_x,
                      p_of_x, p_of_x_index, subspace_join, subspace_meet, truncations,
                      vector_with_supports)
from .liemod import _constraint_test
from .linalg import Matrix, Subspace, projector, rank, vadd, vscale, zero_vector

log = logging.getLogger(__name__)


def check_lattice_laws(L: SubspaceLattice) -> list[str]:
    bad = []
    E = list(L)
    zero, full = Subspace.zero(L.ambient_dim), Subspace.full(L.ambient_dim)
    for A in E:
        if subspace_join(A, zero) != A or subspace_meet(A, full) != A:
            bad.append(f"0/I are not bottom/top for {A!r}")
        for B in E:
            j, m = subspace_join(A, B), subspace_meet(A, B)
            if j != subspace_join(B, A) or m != subspace_meet(B, A):
                bad.append("join/meet not commutative")
            if subspace_join(A, m) != A or subspace_meet(A, j) != A:
                bad.append("absorption fails")
            if j.dim + m.dim != A.dim + B.dim:
                bad.append(f"dimension formula fails: {j.dim}+{m.dim} != {A.dim}+{B.dim}")
            if complement(j) != subspace_meet(complement(A), complement(B)):
                bad.append("De Morgan fails")
            if j not in L or m not in L:
                bad.append("not closed under join/meet")
    for A in E[:4]:
        for B in E[:4]:
            for C in E[:4]:
                if subspace_join(subspace_join(A, B), C) != subspace_join(A, subspace_join(B, C)):
                    bad.append("join not associative")
                if subspace_meet(subspace_meet(A, B), C) != subspace_meet(A, subspace_meet(B, C)):
                    bad.append("meet not associative")
    if lattice_perp(lattice_perp(L)) != L:
        bad.append("perp(perp(L)) != L")
    return bad


def check_order_maps(T: Matrix, L: SubspaceLattice) -> list[str]:
    """φ is monotone into L, ψ is antitone into L^⊥, extreme values are I."""
    tab = analyze(T, L)
    bad = []
    m = len(L)
    perp = lattice_perp(L)
    for p in range(m):
        if tab.psi[p] not in perp:
            bad.append(f"psi({p}) is not in L^perp")
    if L[tab.phi[L.top]] != Subspace.full(L.ambient_dim):
        bad.append("phi(I) != I")
    if not tab.psi[L.bottom].is_full():
        bad.append("psi(0) != I")
    for a in range(m):
        for b in range(m):
            if L.leq(a, b):
                if not L.leq(tab.phi[a], tab.phi[b]):
                    bad.append(f"phi not monotone on ({a},{b})")
                if not tab.psi[b] <= tab.psi[a]:
                    bad.append(f"psi not antitone on ({a},{b})")
    return bad


def check_bil_identities(T: Matrix, L: SubspaceLattice) -> list[str]:
    """ω(P) ∈ BIL, and the join/meet characterizations over the enumerated BIL."""
    tab = analyze(T, L)
    B = bil(T, L)
    n = L.ambient_dim
    bad = []
    if not B.contains_extremes():
        bad.append("BIL misses (0,0), (0,I) or (I,0)")
    pairs = list(B.pairs)
    for p, P in enumerate(L):
        phi_p = L[tab.phi[p]]
        om = tab.omega(p)
        if om not in B:
            bad.append(f"omega({p}) not in BIL")
        Pperp = tab.perps[p]
        if BilatticePair(phi_p, Pperp) not in B:
            bad.append(f"(phi({p}), P^perp) not in BIL")
        upper = pair_join_all((pr for pr in pairs if Pperp <= pr.q), n)
        if upper != BilatticePair(phi_p, Pperp):
            bad.append(f"(phi(P), P^perp) is not the join of BIL pairs above P^perp at {p}")
        level = [BilatticePair(L[tab.phi[q]], tab.perps[q]) for q in tab.level_set(p)]
        if any(pr not in B for pr in level):
            bad.append(f"level-set pair outside BIL at {p}")
        if pair_meet_all(level, n) != om:
            bad.append(f"omega({p}) is not the meet over its phi level set")
        # psi(P) as the join of Q^perp with Q^perp T phi(P) = 0, via projector products
        Tphi = T @ projector(phi_p)
        alt = Subspace.zero(n)
        ident = Matrix.identity(n)
        for Q in L:
            if ((ident - projector(Q)) @ Tphi).is_zero():
                alt = subspace_join(alt, complement(Q))
        if alt != tab.psi[p]:
            bad.append(f"psi({p}) differs from the annihilator characterization")
    return bad


def check_bil_closure(T: Matrix, L: SubspaceLattice) -> list[str]:
    B = bil(T, L)
    return [] if B.is_closed() else ["BIL not closed under pair join/meet"]


def check_bil_brute_force(T: Matrix, L: SubspaceLattice) -> list[str]:
    """BIL equals the set of pairs with Q T P = 0 computed by matrix products."""
    projs = [projector(P) for P in L]
    perps = [projector(complement(P)) for P in L]
    expected = set()
    for i, P in enumerate(L):
        for a, A in enumerate(L):
            if (perps[a] @ T @ projs[i]).is_zero():
                expected.add(BilatticePair(P, complement(A)))
    return [] if expected == set(bil(T, L).pairs) else ["BIL differs from projector enumeration"]


def check_kernel_map_nest(T: Matrix, N: SubspaceLattice) -> list[str]:
    """Fixed point through ψ^⊥, order preservation and strict separation.

    The fixed-point check needs ψ(P)^⊥ ∈ L; it is skipped (and logged) when
    that fails.
    """
    tab = analyze(T, N)
    bad = []
    m = len(N)
    for p in range(m):
        q = tab.psi_perp[p]
        if q is None:
            log.warning("psi(P)^perp not in lattice for P index %d; fixed-point check skipped", p)
            continue
        if tab.phi[q] != tab.phi[p]:
            bad.append(f"phi(psi({p})^perp) != phi({p})")
        if tab.omega(q) != tab.omega(p):
            bad.append(f"omega(psi({p})^perp) != omega({p})")
    for a in range(m):
        for b in range(m):
            if a == b or not N.leq(a, b):
                continue
            wa, wb = tab.omega(a), tab.omega(b)
            if not wa <= wb:
                bad.append(f"omega not order preserving on ({a},{b})")
            if wa != wb and not (wa.p < wb.p and wb.q < wa.q):
                bad.append(f"distinct omega values not strictly separated on ({a},{b})")
    return bad


def check_kernel_set_bound(T: Matrix, N: SubspaceLattice) -> list[str]:
    ks = kernel_set(T, N)
    r = rank(T)
    bad = []
    if len(ks) > r + 1:
        bad.append(f"|Omega| = {len(ks)} > rank + 1 = {r + 1}")
    if not ks.is_totally_ordered():
        bad.append("kernel set of a nest is not totally ordered")
    return bad


def check_sigma(T: Matrix, N: SubspaceLattice) -> list[str]:
    bad = []
    tab = analyze(T, N)
    for a, A in enumerate(N):
        sa = sigma(T, N, A)
        if not A <= sa:
            bad.append(f"sigma({a}) does not dominate its argument")
        for b, B in enumerate(N):
            if N.leq(a, b) and not sa <= sigma(T, N, B):
                bad.append(f"sigma not monotone on ({a},{b})")
        s = N.index(sa)
        if not tab.omega(a) <= tab.omega(s):
            bad.append(f"omega({a}) not below omega(sigma({a}))")
    return bad


def check_decomposition(T: Matrix, N: SubspaceLattice) -> list[str]:
    D = decompose(T, N)
    report = verify_decomposition(D, N)
    bad = [f"{c.name}: {c.detail}" for c in report.failures()]
    tab = analyze(T, N)
    # every slice is killed on both sides by every kernel pair: Ψ_l S_j Φ_l = 0
    pairs = {tab.omega(p) for p in range(len(N))}
    for s in D.slices:
        for pr in pairs:
            if not (projector(pr.q) @ s.matrix @ projector(pr.p)).is_zero():
                bad.append("slice not annihilated by a kernel pair")
                break
    phi0 = N[tab.phi[N.bottom]]
    for t in D.terms:
        if not (t.matrix() @ projector(phi0)).is_zero():
            bad.append("term does not vanish on phi(0)")
            break
    if D.total() != T:
        bad.append("terms do not sum to T")
    if len(D.terms) > D.k * rank(T):
        bad.append("term count exceeds k * rank")
    if D.k > rank(T):
        bad.append("k exceeds rank")
    return bad


def check_truncations(T: Matrix, F: Partition) -> list[str]:
    U, Lo, D = truncations(F, T)
    bad = []
    if U + Lo + D != T:
        bad.append("U + L + D != T")
    if not _constraint_test(U, F.nest):
        bad.append("upper truncation not in the nest algebra")
    if not _constraint_test(Lo.adjoint(), F.nest):
        bad.append("lower truncation not in the adjoint of the nest algebra")
    return bad


def check_vector_supports(N: Nest) -> list[str]:
    bad = []
    for i in range(1, len(N)):
        for j in range(i):
            x = vector_with_supports(N, N[i], N[j])
            if p_of_x(N, x) != N[i] or p_hat_of_x(N, x) != N[j]:
                bad.append(f"vector_with_supports({i},{j}) does not round-trip")
    return bad


def check_support_invariants(N: SubspaceLattice, x) -> list[str]:
    P, Ph = p_of_x(N, x), p_hat_of_x(N, x)
    bad = []
    if not P.contains(x):
        bad.append("P_x does not contain x")
    if not Ph.annihilates(x):
        bad.append("hat P_x does not annihilate x")
    if any(x) and not Ph <= P:
        bad.append("hat P_x not below P_x")
    return bad


def random_vector_with_support(rng: random.Random, N: Nest, i: int):
    """A random vector of ``N[i]`` whose smallest containing element is ``N[i]``."""
    n = N.ambient_dim
    while True:
        x = zero_vector(n)
        for b in N[i].basis:
            x = vadd(x, vscale(Fraction(rng.randint(-5, 5)), b))
        if p_of_x_index(N, x) == i:
            return x


def check_independence(rng: random.Random, N: Nest) -> list[str]:
    """Nonzero vectors with pairwise distinct P_x are linearly independent."""
    idx = [i for i in range(1, len(N)) if rng.random() < 0.7] or [len(N) - 1]
    family = [random_vector_with_support(rng, N, i) for i in idx]
    if len({p_of_x(N, x) for x in family}) != len(family):
        return ["family does not have distinct P_x"]
    if rank(Matrix(family)) != len(family):
        return ["vectors with distinct P_x are linearly dependent"]
    return []


def check_witnesses(T: Matrix, N: Nest, seed: int = 0) -> list[str]:
    tab = analyze(T, N)
    bad = []
    for p, P in enumerate(N):
        try:
            x = omega_witness(T, N, P, seed=seed)
        except WitnessNotFound as exc:
            bad.append(f"witness search failed at {p}: {exc}")
            continue
        if p_of_x(N, x) != N[tab.phi[p]] or complement(p_of_x(N, T.apply(x))) != tab.psi[p]:
            bad.append(f"witness at {p} does not verify")
    return bad

