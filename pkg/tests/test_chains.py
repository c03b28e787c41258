"""Chain complexes, normalization, tensors, homotopies, homology."""
import pytest

from dkchains.chains import (ChainMap, DegreeRangeError, associator,
                             complex_from_diffs, homology,
                             induced_map_on_homology, koszul_swap,
                             middle_koszul_swap, normalized_chains,
                             single_term_complex, solve_homotopy,
                             tensor_blocks, tensor_chain, tensor_chain_map,
                             unnormalized_chains)
from dkchains.intmat import IntMatrix
from dkchains.simplicial import constant_z, free_on_standard_simplex


def test_unnormalized_differential_oracle(delta1):
    c = unnormalized_chains(delta1)
    # d1 on basis (00),(01),(11): alternating sum d0 - d1
    assert c.d(1).to_rows() == [[0, -1, 0], [0, 1, 0]]
    c.check_d_squared()


def test_complex_constructor_rejects_bad_d_squared():
    with pytest.raises(AssertionError):
        complex_from_diffs([1, 1, 1],
                           [IntMatrix.from_rows([[1]]),
                            IntMatrix.from_rows([[1]])])


def test_normalized_ranks_of_simplices():
    # N(delta:p) has rank C(p+1, n+1) in degree n (nondegenerate chains)
    import math
    for p in range(3):
        a = free_on_standard_simplex(p, 4)
        nc = normalized_chains(a)
        for n in range(5):
            assert nc.quotient.ranks[n] == math.comb(p + 1, n + 1)


def test_normalized_projection_section(nerve_z2):
    nc = normalized_chains(nerve_z2)
    for n in range(4):
        p, j = nc.projection.levels[n], nc.section.levels[n]
        assert p @ j == IntMatrix.identity(nc.quotient.ranks[n])
    assert nc.projection.is_chain_map()
    # the degenerate span dies in the quotient
    for n, span in enumerate(nc.degenerate_span):
        if span.ncols:
            assert (nc.projection.levels[n] @ span).is_zero()


def test_moore_comparison(nerve_z2):
    nc = normalized_chains(nerve_z2, moore=True)
    assert nc.moore is not None
    # Moore complex ranks agree with the quotient model
    assert nc.moore.ranks == nc.quotient.ranks


def test_homology_oracles(nerve_z2, delta2):
    # classifying space of Z/2: H_0 = Z, H_1 = Z/2, H_2 = 0 (truncated at 3)
    c = unnormalized_chains(nerve_z2)
    h0 = homology(c, 0)
    assert (h0.free_rank, h0.torsion) == (1, [])
    h1 = homology(c, 1)
    assert (h1.free_rank, h1.torsion) == (0, [2])
    h2 = homology(c, 2)
    assert (h2.free_rank, h2.torsion) == (0, [])
    # the simplex is contractible
    cd = unnormalized_chains(delta2)
    assert homology(cd, 0).free_rank == 1
    for n in (1, 2, 3):
        assert homology(cd, n).is_trivial()
    with pytest.raises(DegreeRangeError):
        homology(cd, 4)


def test_tensor_blocks_layout():
    blocks = tensor_blocks([1, 2, 3], [1, 1, 1], 2)
    # ascending p: (0,2), (1,1), (2,0)
    assert [(p, q) for p, q, _, _ in blocks] == [(0, 2), (1, 1), (2, 0)]
    offs = [off for _, _, off, _ in blocks]
    assert offs == [0, 1, 3]


def test_tensor_chain_koszul_sign():
    # (d(x) (x) y) + (-1)^p (x (x) d(y)); check d^2 = 0 on a product
    x = single_term_complex(1, 2)
    c = complex_from_diffs([1, 1], [IntMatrix.from_rows([[3]])])
    pad = complex_from_diffs([1, 1, 0],
                             [IntMatrix.from_rows([[3]]),
                              IntMatrix.zeros(1, 0)])
    t = tensor_chain(x, pad)
    t.check_d_squared()
    # degree 2 = x (x) pad_1 with sign (-1)^1 on the second differential
    assert t.d(2).to_rows() == [[-3]]


def test_koszul_swap_is_chain_map_and_involution(delta1):
    c = unnormalized_chains(delta1)
    sw = koszul_swap(c, c)
    assert sw.is_chain_map()
    for n in range(4):
        assert sw.levels[n] @ sw.levels[n] == \
            IntMatrix.identity(sw.source.ranks[n])


def test_associator_is_chain_iso(delta1):
    c = unnormalized_chains(delta1)
    al = associator(c, c, c)
    assert al.is_chain_map()
    for n in range(4):
        m = al.levels[n]
        assert m.nrows == m.ncols and m.transpose() @ m == \
            IntMatrix.identity(m.nrows)


def test_middle_koszul_sign_oracle():
    # on y (x) z both in degree 1 the interchange carries sign -1
    one = single_term_complex(1, 2)
    zero = single_term_complex(0, 2)
    mk = middle_koszul_swap(zero, one, one, zero)
    assert mk.levels[2].to_rows() == [[-1]]
    assert mk.is_chain_map()
    # overriding the sign rule flips it (fault-injection hook)
    bad = middle_koszul_swap(zero, one, one, zero,
                             sign_fn=lambda q, r: 1)
    assert bad.levels[2].to_rows() == [[1]]


def test_solve_homotopy_finds_contraction(delta1):
    # identity vs 0 on the (augmented-acyclic) chains of a point
    pt = unnormalized_chains(constant_z(3))
    ident = ChainMap.identity(pt)
    # projection to degree-0 component composed with inclusion
    proj = ChainMap(pt, pt, [IntMatrix.identity(1)]
                    + [IntMatrix.zeros(1, 1)] * 3)
    h = solve_homotopy(ident, proj)
    assert h is not None and h.verify()


def test_solve_homotopy_reports_unsolvable():
    # identity and zero on Z in degree 0 with no differentials at all
    c = single_term_complex(0, 1)
    h = solve_homotopy(ChainMap.identity(c), ChainMap.zero(c, c))
    assert h is None


def test_induced_map_on_homology(nerve_z2):
    c = unnormalized_chains(nerve_z2)
    ident = ChainMap.identity(c)
    assert induced_map_on_homology(ident, 1) == IntMatrix.identity(1)


def test_tensor_chain_map_functorial(delta1):
    c = unnormalized_chains(delta1)
    t = tensor_chain_map(ChainMap.identity(c), ChainMap.identity(c))
    for n in range(4):
        assert t.levels[n] == IntMatrix.identity(t.source.ranks[n])
