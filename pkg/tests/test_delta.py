"""Simplex-category morphisms, operator words, canonical factorization."""
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dkchains.delta import (DEGEN, FACE, CompositionError, DeltaMorphism,
                            OperatorWord, all_monotone_maps,
                            canonical_factorization, compose, normalize)


def test_monotone_map_validation():
    with pytest.raises(ValueError):
        DeltaMorphism(1, 1, (1, 0))
    with pytest.raises(ValueError):
        DeltaMorphism(1, 1, (0, 2))
    DeltaMorphism(1, 1, (0, 1))


def test_compose_order():
    # g first, then f
    f = DeltaMorphism.codegeneracy(0, 0)   # [1] -> [0]
    g = DeltaMorphism.coface(0, 1)         # [0] -> [1]
    assert compose(f, g).is_identity()
    with pytest.raises(CompositionError):
        compose(g, g)


def test_all_monotone_maps_count_and_order():
    # |Hom([q], [p])| = C(p + q + 1, q + 1), lexicographic enumeration
    for q in range(4):
        for p in range(4):
            maps = all_monotone_maps(q, p)
            assert len(maps) == math.comb(p + q + 1, q + 1)
            vals = [f.values for f in maps]
            assert vals == sorted(vals)


def test_canonical_factorization_shape():
    # faces (descending) strictly before degeneracies (ascending)
    f = DeltaMorphism(3, 2, (0, 0, 2, 2))
    word = canonical_factorization(f)
    # all faces precede all degeneracies
    seen_degen = False
    for k, _ in word.generators:
        if k == DEGEN:
            seen_degen = True
        else:
            assert not seen_degen
    faces = [i for k, i in word.generators if k == FACE]
    degens = [j for k, j in word.generators if k == DEGEN]
    assert faces == sorted(faces, reverse=True)
    assert degens == sorted(degens)


def test_canonical_factorization_roundtrip_exhaustive():
    for q in range(5):
        for p in range(5):
            for f in all_monotone_maps(q, p):
                word = canonical_factorization(f)
                assert word.evaluate() == f


def test_canonical_factorization_oracle():
    # frozen: the surjection [2] -> [1] doubling 0 is the single s_0
    f = DeltaMorphism(2, 1, (0, 0, 1))
    assert canonical_factorization(f).generators == ((DEGEN, 0),)
    # frozen: [0] -> [2] hitting 1 is d_2 d_0 (outermost first)
    g = DeltaMorphism(0, 2, (1,))
    assert canonical_factorization(g).generators == ((FACE, 2), (FACE, 0))


def test_normalize_agrees_with_canonical():
    # s_0 d_0 at the right ranks collapses to the identity word
    w = OperatorWord(0, ((DEGEN, 0), (FACE, 0)))
    assert normalize(w).generators == ()


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_normalize_preserves_evaluation(data):
    rank = data.draw(st.integers(0, 3))
    gens = []
    cur = rank
    for _ in range(data.draw(st.integers(0, 5))):
        if cur == 0 or data.draw(st.booleans()):
            i = data.draw(st.integers(0, cur + 1))
            gens.append((FACE, i))
            cur += 1
        else:
            j = data.draw(st.integers(0, cur - 1))
            gens.append((DEGEN, j))
            cur -= 1
    gens.reverse()  # built source-to-target; words store outermost first
    word = OperatorWord(rank, tuple(gens))
    canon = normalize(word)
    assert canon.evaluate() == word.evaluate()
    assert canonical_factorization(word.evaluate()).generators == \
        canon.generators


def test_word_rank_validation():
    with pytest.raises(CompositionError):
        OperatorWord(0, ((DEGEN, 0),)).target_rank
    with pytest.raises(CompositionError):
        OperatorWord(0, ((FACE, 2),)).target_rank
