import random

import pytest

from ramlie.freeassoc import (
    AssocElement,
    Gen,
    dynkin_project,
    is_lie,
    is_lyndon,
    left_bracket_expansion,
    lyndon_words,
    necklace_count,
    standard_bracketing,
    standard_alphabet,
)


def test_standard_alphabet_order():
    gens = standard_alphabet(3, 2, 2)
    assert [g.label() for g in gens] == ["D0", "D(1,0)", "D(1,1)", "D(2,0)", "D(2,1)"]
    assert all(g.a % 3 or g.a == 0 for g in gens)


def test_gen_labels_roundtrip():
    for g in standard_alphabet(5, 2, 6):
        assert Gen.from_label(g.label()) == g


def test_lyndon_words_two_letters():
    # x, y, xy in the graded order
    assert lyndon_words(2, 2) == [(0,), (1,), (0, 1)]


def test_lyndon_single_letter():
    assert lyndon_words(1, 3) == [(0,)]


def test_lyndon_counts_match_necklace_formula():
    for k in (2, 3, 5):
        for max_len in (1, 2, 3, 4):
            words = lyndon_words(k, max_len)
            for n in range(1, max_len + 1):
                assert sum(1 for w in words if len(w) == n) == necklace_count(k, n)
    assert necklace_count(3, 2) == 3


def test_standard_bracketing_examples():
    assert standard_bracketing((0, 1)) == (0, 1)
    assert standard_bracketing((0, 1, 1)) == ((0, 1), 1)
    assert standard_bracketing((0, 0, 1)) == (0, (0, 1))
    with pytest.raises(ValueError):
        standard_bracketing((1, 0))


def test_multiply(alg_c1):
    rng = random.Random(21)
    one = alg_c1.one()
    v = alg_c1.gen(Gen(1, 0))
    assert one * v == v
    # truncation: (length 2) * (length 1) = 0 at p = 3
    w2 = alg_c1.term((0, 1), alg_c1.ring.one)
    assert not w2 * v

    def rand_elem():
        terms = {}
        for _ in range(3):
            w = tuple(rng.randrange(5) for _ in range(rng.randrange(0, 3)))
            terms[w] = alg_c1.ring.from_coeffs([rng.randrange(3), rng.randrange(3)])
        return AssocElement(alg_c1, terms)

    for _ in range(200):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_dynkin_degree_one_is_identity(alg_c1):
    d = alg_c1.gen(Gen(1, 0))
    assert dynkin_project(d, 1) == d


def test_dynkin_fixes_commutators(alg_c1):
    x, y = alg_c1.gen(Gen(1, 0)), alg_c1.gen(Gen(1, 1))
    comm = x * y - y * x
    assert dynkin_project(comm, 2) == comm
    assert is_lie(comm)


def test_dynkin_on_plain_word(alg_c1):
    x, y = alg_c1.gen(Gen(1, 0)), alg_c1.gen(Gen(1, 1))
    xy = x * y
    proj = dynkin_project(xy, 2)
    inv2 = pow(2, -1, 3)
    assert proj == (x * y - y * x) * inv2
    assert dynkin_project(proj, 2) == proj
    assert not is_lie(xy)


def test_is_lie_on_bracket_combinations(alg_c1):
    rng = random.Random(22)
    ring = alg_c1.ring
    for _ in range(100):
        acc = alg_c1.zero()
        for w in alg_c1.lyndon:
            if rng.random() < 0.3:
                coeff = ring.from_coeffs([rng.randrange(3), rng.randrange(3)])
                for ww, s in alg_c1.bracket_expansion(w).items():
                    acc = acc + alg_c1.term(ww, coeff * s)
        assert is_lie(acc)


def test_lyndon_triangularity(alg_c1):
    for w in alg_c1.lyndon:
        exp = alg_c1.bracket_expansion(w)
        assert exp[w] == 1
        for ww in exp:
            assert len(ww) == len(w)
            assert ww >= w


def test_left_bracket_expansion_matches_bracketing():
    # [[x,y],y] expansion: xyy - 2 yxy + yyx
    exp = left_bracket_expansion((0, 1, 1))
    assert exp == {(0, 1, 1): 1, (1, 0, 1): -2, (1, 1, 0): 1}


def test_is_lyndon():
    assert is_lyndon((0, 1))
    assert not is_lyndon((1, 0))
    assert not is_lyndon((0, 1, 0, 1))
    assert not is_lyndon(())
