"""Rank-one decompositions aligned with the kernel set of an operator on a nest.

With ``(Φ_j, Ψ_j)``, ``j = 1..k``, the kernel-set pairs whose second entry is
not ``I`` (in ⪯-order) and ``Φ_0 = φ_T(0)``, the operator splits as

    T = Σ_j Ψ_j^⊥ T (Φ_j − Φ_{j−1}),

and each slice is rank-factorized.  Every resulting rank-one term ``R``
satisfies ``ψ_T(P) R φ_T(P) = 0`` for all ``P`` in the nest.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .kernel import analyze, kernel_set, sigma
from .lattice import SubspaceLattice, complement, to_nest
from .linalg import Matrix, Subspace, Vector, outer, projector, rank, rank_factorize


@dataclass(frozen=True)
class Rank1Term:
    x: Vector
    y: Vector
    slice_index: int

    def matrix(self) -> Matrix:
        return outer(self.x, self.y)


@dataclass(frozen=True)
class Slice:
    phi_prev: Subspace
    phi: Subspace
    psi: Subspace
    matrix: Matrix


@dataclass(frozen=True)
class Decomposition:
    operator: Matrix
    terms: tuple
    slices: tuple

    @property
    def k(self) -> int:
        return len(self.slices)

    def total(self) -> Matrix:
        n = self.operator.nrows
        acc = Matrix.zeros(n)
        for t in self.terms:
            acc = acc + t.matrix()
        return acc


def slice_matrix(T: Matrix, phi_prev: Subspace, phi: Subspace, psi: Subspace) -> Matrix:
    """``Ψ^⊥ T (Φ − Φ_prev)``."""
    return projector(complement(psi)) @ T @ (projector(phi) - projector(phi_prev))


def decompose(T: Matrix, N: SubspaceLattice) -> Decomposition:
    N = to_nest(N)
    n = N.ambient_dim
    ks = kernel_set(T, N)
    full = Subspace.full(n)
    proper = [e.pair for e in ks if e.pair.q != full]
    if (not proper) != T.is_zero():
        raise AssertionError("k = 0 must coincide with T = 0")
    for a, b in zip(proper, proper[1:]):
        if not (a.p < b.p and b.q < a.q):
            raise AssertionError("kernel-set pairs are not strictly ordered")
    phi0 = N[analyze(T, N).phi[N.bottom]]
    slices = []
    terms = []
    prev = phi0
    for j, pair in enumerate(proper, start=1):
        S = slice_matrix(T, prev, pair.p, pair.q)
        slices.append(Slice(prev, pair.p, pair.q, S))
        terms.extend(Rank1Term(x, y, j) for x, y in rank_factorize(S))
        prev = pair.p
    return Decomposition(T, tuple(terms), tuple(slices))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    # informational only: Ψ_j^⊥ = σ(Ψ_{j-1}^⊥) is only guaranteed for continuous nests
    sigma_chain: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]


def verify_decomposition(D: Decomposition, N: SubspaceLattice) -> VerificationReport:
    N = to_nest(N)
    T = D.operator
    n = N.ambient_dim
    report = VerificationReport()
    tab = analyze(T, N)

    report.add("reconstruction", D.total() == T, "sum of terms equals T")
    bad_rank = [i for i, t in enumerate(D.terms) if rank(t.matrix()) != 1]
    report.add("terms_rank_one", not bad_rank, f"non rank-one terms: {bad_rank}" if bad_rank else "")

    slices_ok = all(s.matrix == slice_matrix(T, s.phi_prev, s.phi, s.psi) for s in D.slices)
    report.add("slice_formula", slices_ok)
    slice_sum = sum((s.matrix for s in D.slices), Matrix.zeros(n))
    report.add("slices_sum_to_T", slice_sum == T)
    per_slice = all(
        sum((t.matrix() for t in D.terms if t.slice_index == j), Matrix.zeros(n)) == s.matrix
        for j, s in enumerate(D.slices, start=1))
    report.add("terms_sum_to_slices", per_slice)

    r = rank(T)
    k = len([e for e in kernel_set(T, N) if e.pair.q != Subspace.full(n)])
    report.add("k_matches_kernel_set", k == D.k, f"k={k}, slices={D.k}")
    report.add("k_le_rank", k <= r, f"k={k}, rank={r}")
    report.add("term_count_bound", len(D.terms) <= k * r, f"m={len(D.terms)}, k*rank={k * r}")

    phi0 = N[tab.phi[N.bottom]]
    report.add("T_annihilates_phi0", (T @ projector(phi0)).is_zero())
    if D.slices:
        report.add("first_slice_starts_at_phi0", D.slices[0].phi_prev == phi0)

    violations = []
    projs = {}
    for p, P in enumerate(N):
        pair = tab.omega(p)
        key = (pair.p, pair.q)
        if key not in projs:
            projs[key] = (projector(pair.q), projector(pair.p))
    for idx, t in enumerate(D.terms):
        R = t.matrix()
        for q_proj, p_proj in projs.values():
            if not (q_proj @ R @ p_proj).is_zero():
                violations.append(idx)
                break
    report.add("kernel_pairs_in_BIL_of_terms", not violations,
               f"terms violating membership: {violations}" if violations else "")

    psi_prev_perp = Subspace.zero(n)
    for j, s in enumerate(D.slices, start=1):
        target = complement(s.psi)
        holds = target == sigma(T, N, psi_prev_perp) if psi_prev_perp in N else False
        report.sigma_chain.append({"j": j, "holds": holds})
        psi_prev_perp = target
    return report
