"""Smith normal form, integer linear systems, homology presentations."""
from hypothesis import given, settings
from hypothesis import strategies as st

from dkchains.intmat import IntMatrix
from dkchains.linalg import (homology_of_maps, invert_unimodular,
                             kernel_basis, smith_normal_form, solve)


def m(rows):
    return IntMatrix.from_rows(rows)


def test_snf_oracle_divisibility():
    # frozen: invariant factors of [[2,4,4],[-6,6,12],[10,-4,-16]] are
    # 2, 6, 12 (cross-checked against an independent implementation)
    dec = smith_normal_form(m([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert dec.diagonal == [2, 6, 12]


def test_snf_reconstruction_small():
    a = m([[1, 2], [3, 4]])
    dec = smith_normal_form(a)
    assert dec.u @ a @ dec.v == dec.s
    assert dec.u @ dec.u_inv == IntMatrix.identity(2)
    assert dec.v @ dec.v_inv == IntMatrix.identity(2)
    assert dec.diagonal == [1, 2]


random_matrix = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.lists(
        st.lists(st.integers(-9, 9), min_size=s[1], max_size=s[1]),
        min_size=s[0], max_size=s[0]))


@settings(max_examples=60, deadline=None)
@given(random_matrix)
def test_snf_properties(rows):
    a = m(rows)
    dec = smith_normal_form(a)
    assert dec.u @ a @ dec.v == dec.s
    diag = dec.diagonal
    for x, y in zip(diag, diag[1:]):
        assert y == 0 or (x != 0 and y % x == 0)
        assert x >= 0
    # off-diagonal of s vanishes
    assert all(i == j for (i, j) in dec.s.data)


def test_kernel_basis_oracle():
    k = kernel_basis(m([[1, 1, 1]]))
    assert k.ncols == 2
    assert (m([[1, 1, 1]]) @ k).is_zero()


def test_solve_and_unsolvable():
    a = m([[2, 0], [0, 3]])
    b = m([[4], [9]])
    x = solve(a, b)
    assert a @ x == b
    assert solve(a, m([[1], [1]])) is None


def test_invert_unimodular():
    u = m([[1, 1], [1, 2]])
    assert invert_unimodular(u) @ u == IntMatrix.identity(2)
    assert invert_unimodular(m([[2, 0], [0, 1]])) is None


def test_homology_circle_presentation():
    # 1-sphere as a complex: d1 = 0 from Z to Z^1? use 0 matrices
    h = homology_of_maps(IntMatrix.zeros(0, 1), IntMatrix.zeros(1, 0))
    assert (h.free_rank, h.torsion) == (1, [])


def test_homology_torsion():
    # 0 -> Z --2--> Z: H_0 of the target position is Z/2
    h = homology_of_maps(IntMatrix.zeros(0, 1), m([[2]]))
    assert (h.free_rank, h.torsion) == (0, [2])
    assert not h.is_trivial()


def test_homology_reduce_kills_boundaries():
    h = homology_of_maps(IntMatrix.zeros(0, 1), m([[2]]))
    gens = h.generator_cycles()
    two = gens.scale(2)
    assert h.reduce(two).data == {}  # 2x is a boundary in Z/2
