"""Truncated simplicial abelian groups: constructors and identities."""
import math

import pytest

from dkchains.delta import DeltaMorphism, canonical_factorization
from dkchains.intmat import IntMatrix
from dkchains.simplicial import (MonoidTableError, SimplicialMap,
                                 apply_word, constant_z, degeneracy_composite,
                                 first_faces, free_on_nerve,
                                 free_on_standard_simplex, last_faces,
                                 middle_swap, swap, tensor, tensor_map,
                                 validate)
from tests.conftest import Z3


def test_standard_simplex_ranks(delta2):
    # level n of the p-simplex has C(p+1, .) monotone-tuple basis:
    # rank = number of monotone (n+1)-tuples in [p] = C(p+n+1, n+1)
    for p in range(4):
        a = free_on_standard_simplex(p, 4)
        for n in range(5):
            assert a.ranks[n] == math.comb(p + n + 1, n + 1)


def test_nerve_ranks(nerve_z2):
    assert nerve_z2.ranks == [1, 2, 4, 8]


def test_validate_passes(delta1, delta2, nerve_z2):
    for a in (delta1, delta2, nerve_z2, constant_z(3)):
        assert validate(a).status == "pass"


def test_validate_catches_corruption(nerve_z2):
    import copy
    bad = copy.deepcopy(nerve_z2)
    mat = bad.faces[(2, 1)]
    bad.faces[(2, 1)] = mat + IntMatrix(mat.nrows, mat.ncols, {(0, 0): 1})
    rep = validate(bad)
    assert rep.status == "fail"
    assert rep.witnesses  # at least one concrete disagreement


def test_functoriality_via_words(delta2):
    # apply_word of a canonical factorization equals composing generators
    f = DeltaMorphism(1, 3, (0, 2))
    word = canonical_factorization(f)
    m1 = apply_word(delta2, word)
    # independently: the simplex map acts on monotone tuples by composition
    assert m1.shape == (delta2.ranks[1], delta2.ranks[3])


def test_face_degeneracy_action_on_tuples(delta1):
    # frozen action on the level-1 basis (00), (01), (11) of delta:1
    assert delta1.face(1, 0).to_rows() == [[1, 0, 0], [0, 1, 1]]
    assert delta1.face(1, 1).to_rows() == [[1, 1, 0], [0, 0, 1]]
    # s0 doubles the vertex: (0) -> (00), (1) -> (11)
    assert delta1.degeneracy(0, 0).to_rows() == [[1, 0], [0, 0], [0, 1]]


def test_iterated_faces(delta2):
    # last_faces(a, n, k): k successive top faces; first_faces: k times d_0
    n = 3
    lf = last_faces(delta2, n, 2)
    assert lf.shape == (delta2.ranks[1], delta2.ranks[3])
    assert last_faces(delta2, n, 0) == IntMatrix.identity(delta2.ranks[3])
    ff = first_faces(delta2, n, 3)
    assert ff.shape == (delta2.ranks[0], delta2.ranks[3])
    # d0 d0 equals d0 d1 by the simplicial identities
    assert delta2.face(1, 0) @ delta2.face(2, 0) == \
        delta2.face(1, 0) @ delta2.face(2, 1)


def test_degeneracy_composite_ascending(delta1):
    # s_1 s_0 from level 0 to level 2 (lowest applied first)
    m = degeneracy_composite(delta1, 0, (0, 1))
    assert m == delta1.degeneracy(1, 1) @ delta1.degeneracy(0, 0)
    assert degeneracy_composite(delta1, 2, ()) == \
        IntMatrix.identity(delta1.ranks[2])


def test_tensor_and_swap(delta1, delta2):
    t = tensor(delta1, delta2)
    assert t.ranks == [a * b for a, b in zip(delta1.ranks, delta2.ranks)]
    assert validate(t).status == "pass"
    sw = swap(delta1, delta2)
    assert sw.is_simplicial()
    back = swap(delta2, delta1)
    for n in range(4):
        assert back.levels[n] @ sw.levels[n] == \
            IntMatrix.identity(t.ranks[n])


def test_middle_swap_is_simplicial_involution(delta0, delta1):
    ms = middle_swap(delta0, delta1, delta1, delta0)
    assert ms.is_simplicial()
    back = middle_swap(delta0, delta1, delta1, delta0)
    for n in range(5):
        r = ms.levels[n].ncols
        # swapping equal middle factors twice is the identity
        assert back.levels[n] @ ms.levels[n] == IntMatrix.identity(r)


def test_tensor_map_functorial(delta1):
    ident = SimplicialMap.identity(delta1)
    tm = tensor_map(ident, ident)
    for n in range(5):
        assert tm.levels[n] == IntMatrix.identity(delta1.ranks[n] ** 2)


def test_nerve_needs_monoid():
    with pytest.raises(MonoidTableError):
        free_on_nerve([[0, 1], [0, 0]], 2)  # no two-sided identity
    free_on_nerve(Z3, 2)
