import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import T1_ROWS, e
from nestkernel import properties as props
from nestkernel.errors import DimensionMismatch, LatticeError, NotAMember
from nestkernel.lattice import (Nest, Partition, SubspaceLattice, closure, complement,
                                lattice_perp, p_hat_of_x, p_of_x, predecessor, subspace_join,
                                subspace_meet, successor, to_nest, truncations,
                                vector_with_supports)
from nestkernel.linalg import Matrix, Subspace
from nestkernel.random_instances import random_lattice, random_nest, random_subspace


def span(*vs):
    return Subspace.span(vs, len(vs[0]))


def coord(n, *idx):
    return Subspace.coordinate(n, [i - 1 for i in idx])


# joins, meets, complements

def test_join_examples():
    assert subspace_join(span(e(2, 1)), span(e(2, 2))) == Subspace.full(2)
    A = span((1, 2, 3))
    assert subspace_join(A, Subspace.zero(3)) == A
    assert subspace_join(span((1, 1, 0)), span((1, -1, 0))) == coord(3, 1, 2)


def test_meet_examples():
    A = span((1, 2, 3), (0, 1, 1))
    assert subspace_meet(A, Subspace.full(3)) == A
    assert subspace_meet(span(e(3, 1)), span(e(3, 2))).is_zero()
    assert subspace_meet(coord(3, 1, 2), coord(3, 2, 3)) == coord(3, 2)


def test_complement_examples():
    assert complement(Subspace.zero(3)).is_full()
    assert complement(coord(3, 1)) == coord(3, 2, 3)
    assert complement(span((1, 1))) == span((1, -1))


def brute_force_meet(A, B):
    # vectors of a small integer grid lying in both, spanned
    n = A.ambient_dim
    pts = [v for v in product(range(-2, 3), repeat=n) if A.contains(v) and B.contains(v)]
    return Subspace.span(pts, n)


@settings(max_examples=40)
@given(st.integers(0, 2**32))
def test_meet_against_grid_search(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    A, B = random_subspace(rng, n), random_subspace(rng, n)
    M = subspace_meet(A, B)
    assert M.dim + subspace_join(A, B).dim == A.dim + B.dim
    G = brute_force_meet(A, B)
    assert G <= M
    if M.dim == 1:
        # a one-dimensional meet of small-integer spans may still need large entries;
        # whenever the grid catches it, it must agree
        assert G.is_zero() or G == M


# lattices

def test_lattice_needs_extremes_and_closure():
    with pytest.raises(LatticeError):
        SubspaceLattice([Subspace.zero(2), coord(2, 1)])
    # two distinct lines in K^2 are closed, three distinct lines in K^3 are not
    SubspaceLattice([Subspace.zero(2), Subspace.full(2), coord(2, 1), coord(2, 2)])
    with pytest.raises(LatticeError):
        SubspaceLattice([Subspace.zero(3), Subspace.full(3), coord(3, 1), coord(3, 2)])


def test_lattice_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        SubspaceLattice([Subspace.zero(2), Subspace.full(3)])


def test_nest_rejects_incomparable():
    with pytest.raises(LatticeError):
        Nest([Subspace.zero(2), coord(2, 1), coord(2, 2), Subspace.full(2)])


def test_closure_of_three_lines():
    L = closure([span((1, 0, 0)), span((0, 1, 0)), span((1, 1, 0))], 3)
    assert len(L) == 6  # 0, three lines, their common plane, I
    assert coord(3, 1, 2) in L and not L.is_chain


def test_closure_bound():
    rng = random.Random(5)
    gens = [random_subspace(rng, 4, 2) for _ in range(4)]
    with pytest.raises(LatticeError):
        closure(gens, 4, max_size=6)


def test_to_nest():
    L = SubspaceLattice([Subspace.zero(3), coord(3, 1), Subspace.full(3)])
    assert isinstance(to_nest(L), Nest)
    with pytest.raises(LatticeError):
        to_nest(closure([coord(2, 1), coord(2, 2)], 2))


def test_lattice_perp_examples():
    trivial = SubspaceLattice([Subspace.zero(2), Subspace.full(2)])
    assert lattice_perp(trivial) == trivial
    N = Nest.maximal_coordinate(2)
    assert set(lattice_perp(N)) == {Subspace.zero(2), coord(2, 2), Subspace.full(2)}


def test_lattice_perp_round_trip_on_eight_element_lattice():
    rng = random.Random(0)
    while True:
        L = random_lattice(rng, 3, 5)
        if len(L) == 8:
            break
    assert lattice_perp(lattice_perp(L)) == L


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_random_lattice_laws(seed):
    assert props.check_lattice_laws(random_lattice(random.Random(seed), 2, 5)) == []


# supports

def test_p_of_x(N4):
    assert p_of_x(N4, e(4, 1)) == coord(4, 1)
    assert p_of_x(N4, (0, 0, 0, 0)).is_zero()
    assert p_of_x(N4, (1, 0, 1, 0)) == coord(4, 1, 2, 3)


def test_p_hat_of_x(N4):
    assert p_hat_of_x(N4, e(4, 1)).is_zero()
    assert p_hat_of_x(N4, (0, 0, 0, 0)).is_full()
    assert p_hat_of_x(N4, e(4, 3)) == coord(4, 1, 2)


def test_support_vector_length_checked(N4):
    with pytest.raises(DimensionMismatch):
        p_of_x(N4, (1, 0))


def test_predecessor_successor(N4):
    P1, P2, P3 = coord(4, 1), coord(4, 1, 2), coord(4, 1, 2, 3)
    assert predecessor(N4, P2) == P1 and successor(N4, P2) == P3
    assert predecessor(N4, Subspace.zero(4)).is_zero()
    assert successor(N4, Subspace.full(4)).is_full()
    with pytest.raises(NotAMember):
        predecessor(N4, span((1, 1, 0, 0)))


def test_vector_with_supports_examples(N4):
    P1, P2, P3 = coord(4, 1), coord(4, 1, 2), coord(4, 1, 2, 3)
    assert vector_with_supports(N4, P1, Subspace.zero(4)) == e(4, 1)
    assert vector_with_supports(N4, P3, P1) == (0, 1, 1, 0)
    assert vector_with_supports(N4, P2, P1) == e(4, 2)
    with pytest.raises(ValueError):
        vector_with_supports(N4, P1, P2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_vector_with_supports_random_nests(seed):
    N, _ = random_nest(random.Random(seed), random.Random(seed).randint(1, 6))
    assert props.check_vector_supports(N) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_support_invariants_on_lattices(seed):
    rng = random.Random(seed)
    L = random_lattice(rng, 2, 4)
    x = tuple(rng.randint(-2, 2) for _ in range(L.ambient_dim))
    assert props.check_support_invariants(L, x) == []


# truncations

def test_truncation_full_chain_upper_triangular(N4):
    T = Matrix([[1, 2, 3, 4], [0, 5, 6, 7], [0, 0, 8, 9], [0, 0, 0, 10]])
    U, Lo, D = truncations(Partition(N4, range(5)), T)
    assert D == Matrix([[1, 0, 0, 0], [0, 5, 0, 0], [0, 0, 8, 0], [0, 0, 0, 10]])
    assert Lo.is_zero() and U + D == T


def test_truncation_single_block(N4, T1):
    U, Lo, D = truncations(Partition(N4, (0, 4)), T1)
    assert U.is_zero() and Lo.is_zero() and D == T1


def test_truncation_two_blocks_on_t1(N4, T1):
    U, Lo, D = truncations(Partition(N4, (0, 2, 4)), T1)
    expected_U = Matrix([[0, 0, 0, 1], [0, 0, 1, 1], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert U == expected_U
    assert Lo.is_zero()
    assert U + Lo + D == T1


def block_truncations(T, dims):
    # independent oracle: sort entries by the block of their row and column
    n = T.nrows
    block = [next(b for b, d in enumerate(dims[1:]) if i < d) for i in range(n)]
    U = [[0] * n for _ in range(n)]
    Lo = [[0] * n for _ in range(n)]
    D = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            target = U if block[i] < block[j] else Lo if block[i] > block[j] else D
            target[i][j] = T[i, j]
    return Matrix(U), Matrix(Lo), Matrix(D)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_truncations_match_block_extraction(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    N = Nest.maximal_coordinate(n)
    idx = [0] + sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) + [n]
    T = Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
    assert tuple(truncations(Partition(N, idx), T)) == block_truncations(T, idx)


def test_partition_validation(N4):
    with pytest.raises(LatticeError):
        Partition(N4, (0, 2))
    with pytest.raises(LatticeError):
        Partition(N4, (0, 3, 2, 4))
    with pytest.raises(DimensionMismatch):
        truncations(Partition(N4, (0, 4)), Matrix(T1_ROWS[:3]))
