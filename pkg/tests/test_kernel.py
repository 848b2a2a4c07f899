import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import E, e
from nestkernel import properties as props
from nestkernel.errors import NotAMember
from nestkernel.kernel import (BilatticePair, analyze, bil, kernel_set, omega, omega_witness,
                               pair_join_all, pair_meet_all, phi, psi, sigma)
from nestkernel.lattice import complement, lattice_perp, p_of_x
from nestkernel.linalg import Matrix, Subspace, projector, rank
from nestkernel.random_instances import random_lattice, random_matrix, random_nest_instance
from nestkernel.scalars import GaussianRational

seeds = st.integers(0, 2**32)


def coord(n, k):
    return Subspace.coordinate(n, range(k))


def pair(p, q):
    return BilatticePair(p, q)


@pytest.fixture
def P(N4):
    return [coord(4, k) for k in range(5)]


# bilattice pairs

def test_pair_order_and_operations():
    n = 3
    a = pair(coord(n, 1), coord(n, 2))
    b = pair(coord(n, 2), coord(n, 1))
    assert a <= b and a < b and not b <= a
    assert a.join(b) == pair(coord(n, 2), coord(n, 1))
    assert a.meet(b) == pair(coord(n, 1), coord(n, 2))
    assert pair_join_all([], n) == pair(coord(n, 0), Subspace.full(n))
    assert pair_meet_all([], n) == pair(Subspace.full(n), coord(n, 0))


# BIL

def test_bil_of_zero_is_everything(N4):
    B = bil(Matrix.zeros(4), N4)
    assert len(B) == len(N4) ** 2
    assert set(B.pairs) == {pair(p, q) for p in N4 for q in lattice_perp(N4)}


def test_bil_e12_on_n2_brute_force(N2):
    T = E(2, 1, 2)
    expected = set()
    for Pp, Qq in product(N2, lattice_perp(N2)):
        # Q T P = 0 iff Q e1 = 0 or P e2 = 0
        if not any(projector(Qq).apply(e(2, 1))) or not any(projector(Pp).apply(e(2, 2))):
            expected.add(pair(Pp, Qq))
    assert len(expected) == 8
    assert set(bil(T, N2).pairs) == expected
    assert props.check_bil_brute_force(T, N2) == []


def test_bil_t1_contains_kernel_pair(T1, N4, P):
    B = bil(T1, N4)
    assert pair(P[2], complement(P[1])) in B
    assert B.contains_extremes() and B.is_closed()


# φ, ψ, ω, σ

def test_extreme_values(T1, N4, P):
    for T in (T1, Matrix.zeros(4), Matrix.identity(4)):
        assert phi(T, N4, P[4]).is_full()
        assert psi(T, N4, P[0]).is_full()


def test_phi_t1(T1, N4, P):
    assert phi(T1, N4, P[0]) == P[1]
    assert phi(T1, N4, P[1]) == P[2]


def test_psi_t1(T1, N4, P):
    assert psi(T1, N4, P[1]) == complement(P[1])
    assert psi(T1, N4, P[4]).is_zero()


def test_omega_t1(T1, N4, P):
    assert omega(T1, N4, P[0]) == pair(P[1], P[4])
    assert omega(T1, N4, P[2]) == pair(P[2], complement(P[1]))


def test_omega_of_zero(N4):
    for Q in N4:
        assert omega(Matrix.zeros(4), N4, Q) == pair(Subspace.full(4), Subspace.full(4))


def test_sigma_t1(T1, N4, P):
    assert sigma(T1, N4, P[1]) == P[3]
    assert sigma(T1, N4, P[0]) == P[0]
    assert sigma(T1, N4, P[4]) == P[4]


def test_non_member_rejected(T1, N4):
    with pytest.raises(NotAMember):
        phi(T1, N4, Subspace.span([(1, 1, 0, 0)], 4))


# kernel sets

def expected_kernel_set(P):
    return [pair(P[1], P[4]), pair(P[2], complement(P[1])), pair(P[4], P[0])]


def test_kernel_set_t1_t2(T1, T2, N4, P):
    assert kernel_set(T1, N4).pairs == expected_kernel_set(P)
    assert kernel_set(T2, N4).pairs == expected_kernel_set(P)


def test_kernel_set_zero(N4):
    assert kernel_set(Matrix.zeros(4), N4).pairs == [pair(Subspace.full(4), Subspace.full(4))]


def test_kernel_set_sources(T1, N4, P):
    assert [entry.source for entry in kernel_set(T1, N4)] == [P[0], P[1], P[4]]


def test_kernel_set_over_gaussian_rationals(N4, P):
    i = GaussianRational(0, 1)
    T = Matrix([[0, i, 0, 1], [0, 0, i, 1], [0, 0, 1, i], [0, 0, 1, i]])
    assert kernel_set(T, N4).pairs == expected_kernel_set(P)
    assert props.check_kernel_map_nest(T, N4) == []


def test_analyze_is_cached(T1, N4):
    assert analyze(T1, N4) is analyze(Matrix([list(r) for r in T1.rows]), N4)


# witnesses

def test_witness_t1_p1(T1, N4, P):
    x = omega_witness(T1, N4, P[1])
    assert x == e(4, 2)
    assert T1.apply(x) == e(4, 1)


def test_witness_for_zero_operator(N4, P):
    for Q in P:
        x = omega_witness(Matrix.zeros(4), N4, Q)
        assert p_of_x(N4, x).is_full()


def test_witness_t2_top(T2, N4, P):
    x = omega_witness(T2, N4, P[4])
    assert p_of_x(N4, x).is_full() and p_of_x(N4, T2.apply(x)).is_full()


# properties over random instances

@settings(max_examples=40, deadline=None)
@given(seeds)
def test_properties_on_random_nests(seed):
    T, N = random_nest_instance(random.Random(seed), 2, 6)
    for check in (props.check_order_maps, props.check_bil_identities, props.check_bil_closure,
                  props.check_bil_brute_force, props.check_kernel_map_nest,
                  props.check_kernel_set_bound, props.check_sigma):
        assert check(T, N) == [], check.__name__
    assert props.check_witnesses(T, N, seed) == []


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_properties_on_random_lattices(seed):
    rng = random.Random(seed)
    L = random_lattice(rng, 2, 5)
    T = random_matrix(rng, L.ambient_dim)
    for check in (props.check_order_maps, props.check_bil_identities, props.check_bil_closure,
                  props.check_bil_brute_force):
        assert check(T, L) == [], check.__name__


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_properties_over_gaussian_rationals(seed):
    T, N = random_nest_instance(random.Random(seed), 2, 4, field="Qi")
    assert props.check_bil_brute_force(T, N) == []
    assert props.check_kernel_map_nest(T, N) == []
    assert props.check_kernel_set_bound(T, N) == []


def test_psi_perp_always_in_lattice():
    # ψ is a join of complements, so its complement is a meet of lattice elements
    rng = random.Random(11)
    for _ in range(60):
        L = random_lattice(rng, 2, 5)
        tab = analyze(random_matrix(rng, L.ambient_dim), L)
        assert None not in tab.psi_perp


def test_kernel_set_bound_is_sharp(T1, N4):
    assert len(kernel_set(T1, N4)) == rank(T1) + 1
