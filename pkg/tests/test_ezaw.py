"""Alexander-Whitney and shuffle maps: identities, compatibility, faults."""
import math

import pytest

from dkchains.chains import solve_homotopy
from dkchains.ezaw import (BialgebraInstance, NormalizedCache, ShuffleTable,
                           aw_map, aw_symmetry_defect, bialgebra_check,
                           chains_of_map, enumerate_shuffles, shuffle_map,
                           shuffle_symmetry_check, unit_coherence_check)
from dkchains.intmat import IntMatrix
from dkchains.simplicial import free_on_standard_simplex


def flipped_tables(k, l):
    """Fault injection: negate the sign of every nontrivial shuffle."""
    t = enumerate_shuffles(k, l)
    if k == 0 or l == 0:
        return t
    return ShuffleTable(t.k, t.l,
                        tuple((a, b, -s) for a, b, s in t.entries))


def test_shuffle_table_oracle_1_1():
    # frozen: the two (1,1)-shuffles with their signs
    t = enumerate_shuffles(1, 1)
    assert t.entries == (((0,), (1,), 1), ((1,), (0,), -1))


def test_shuffle_table_oracle_2_2():
    t = enumerate_shuffles(2, 2)
    assert len(t) == 6
    signs = {entry[:2]: entry[2] for entry in t.entries}
    # inversion parities computed by hand
    assert signs[((0, 1), (2, 3))] == 1
    assert signs[((0, 2), (1, 3))] == -1
    assert signs[((0, 3), (1, 2))] == 1
    assert signs[((1, 2), (0, 3))] == 1
    assert signs[((1, 3), (0, 2))] == -1
    assert signs[((2, 3), (0, 1))] == 1


def test_shuffle_counts():
    for k in range(4):
        for l in range(4):
            assert len(enumerate_shuffles(k, l)) == math.comb(k + l, k)


def test_aw_and_shuffle_are_chain_maps(delta1, delta2):
    for a, b in ((delta1, delta1), (delta1, delta2)):
        for norm in (False, True):
            aw_map(a, b, normalized=norm)        # verify=True raises on fail
            shuffle_map(a, b, normalized=norm)


def test_aw_counit_compatibility_degree0(delta2):
    # in degree 0 both maps are the identity reindexing
    aw = aw_map(delta2, delta2, verify=False)
    assert aw.levels[0] == IntMatrix.identity(aw.levels[0].nrows)
    sh = shuffle_map(delta2, delta2, verify=False)
    assert sh.levels[0] == IntMatrix.identity(sh.levels[0].nrows)


def test_aw_nabla_identity_normalized(delta0, delta1, delta2):
    cache = NormalizedCache()
    for a in (delta0, delta1, delta2):
        for b in (delta0, delta1, delta2):
            aw = aw_map(a, b, normalized=True, verify=False, cache=cache)
            sh = shuffle_map(a, b, normalized=True, verify=False,
                             cache=cache)
            comp = aw.compose(sh)
            for n in range(5):
                assert comp.levels[n] == \
                    IntMatrix.identity(comp.source.ranks[n])


def test_aw_nabla_not_identity_unnormalized(delta0):
    # frozen counterexample: on unnormalized chains the composite sends
    # the degree-1 generator u(x)v of C(pt)(x)C(pt) to u(x)v + v(x)s0(v),
    # so it differs from the identity already for two points
    aw = aw_map(delta0, delta0, verify=False)
    sh = shuffle_map(delta0, delta0, verify=False)
    comp = aw.compose(sh)
    assert comp.levels[0] == IntMatrix.identity(1)
    assert comp.levels[1] != IntMatrix.identity(comp.source.ranks[1])
    # but the composite is chain homotopic to the identity
    from dkchains.chains import ChainMap
    h = solve_homotopy(comp, ChainMap.identity(comp.source))
    assert h is not None and h.verify()


def test_nabla_aw_homotopic_to_identity(delta1):
    from dkchains.chains import ChainMap
    comp = shuffle_map(delta1, delta1, verify=False).compose(
        aw_map(delta1, delta1, verify=False))
    ident = ChainMap.identity(comp.source)
    for n in range(5):
        if comp.levels[n] != ident.levels[n]:
            break
    else:
        pytest.fail("composite unexpectedly equals the identity")
    h = solve_homotopy(comp, ident)
    assert h is not None and h.verify()


def test_shuffle_symmetry(delta1, delta2):
    for norm in (False, True):
        assert shuffle_symmetry_check(delta1, delta2, norm).passed
        assert shuffle_symmetry_check(delta2, delta1, norm).passed


def test_aw_symmetry_only_up_to_homotopy(delta1):
    lhs, rhs = aw_symmetry_defect(delta1, delta1, normalized=True)
    assert any(lhs.levels[n] != rhs.levels[n] for n in range(5))
    h = solve_homotopy(lhs, rhs)
    assert h is not None and h.verify()


def test_bialgebra_delta_tuples(delta0, delta1):
    for norm in (False, True):
        rep = bialgebra_check(delta1, delta0, delta0, delta1,
                              normalized=norm, max_level=2)
        assert rep.passed, rep.to_dict()


def test_bialgebra_flipped_shuffle_sign_fails(delta1):
    inst = BialgebraInstance(delta1, delta1, delta1, delta1)
    rep = inst.check(normalized=True, max_level=2,
                     table_fn=flipped_tables)
    assert rep.status == "fail"
    assert rep.witnesses


def test_bialgebra_wrong_koszul_exponent_fails(delta1):
    inst = BialgebraInstance(delta1, delta1, delta1, delta1)
    rep = inst.check(normalized=True, max_level=2,
                     sign_fn=lambda q, r: (-1) ** (q * r + q))
    assert rep.status == "fail"
    assert rep.witnesses


def test_unit_coherence(delta1, nerve_z2):
    assert unit_coherence_check(delta1).passed
    assert unit_coherence_check(nerve_z2).passed


def test_unit_coherence_fault():
    a = free_on_standard_simplex(1, 2)
    rep = unit_coherence_check(a, unit_scale=-1)
    assert rep.status == "fail" and rep.witnesses


def test_chains_of_map_functorial(delta1, delta2):
    from dkchains.simplicial import SimplicialMap
    for norm in (False, True):
        f = chains_of_map(SimplicialMap.identity(delta2), normalized=norm)
        for n in range(5):
            assert f.levels[n] == IntMatrix.identity(f.source.ranks[n])
