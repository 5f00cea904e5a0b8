import random

import pytest

from ramlie.coeffring import RingContext, conway_poly, truncated_exp, truncated_log
from ramlie.freeassoc import AssocElement, FreeAlgebra, Gen, standard_alphabet


def test_conway_table_is_irreducible():
    for (p, n) in [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (7, 2), (7, 3)]:
        RingContext(p, 1, n)  # construction validates irreducibility


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        RingContext(3, 1, 2, modulus_poly=[1, 2, 1])  # (x+1)^2 mod 3


def test_frobenius_on_explicit_modulus():
    # h = x^2 + x + 2 over F_3: sigma(x) = x^3 = 2x + 2 mod h
    ctx = RingContext(3, 1, 2, modulus_poly=[2, 1, 1])
    x = ctx.from_coeffs([0, 1])
    assert ctx.frobenius(x, 1) == ctx.from_coeffs([2, 2])


def test_frobenius_order_and_prime_subring():
    for (p, M, n) in [(3, 1, 2), (3, 2, 2), (5, 2, 1), (3, 2, 3)]:
        ctx = RingContext(p, M, n)
        rng = random.Random(5)
        for _ in range(50):
            a = ctx.from_coeffs([rng.randrange(ctx.modulus) for _ in range(n)])
            assert ctx.frobenius(a, n) == a
        c = ctx.from_int(7)
        assert ctx.frobenius(c, 1) == c


def test_frobenius_is_ring_automorphism():
    ctx = RingContext(3, 2, 2)
    rng = random.Random(6)
    for _ in range(1000):
        a = ctx.from_coeffs([rng.randrange(9), rng.randrange(9)])
        b = ctx.from_coeffs([rng.randrange(9), rng.randrange(9)])
        assert ctx.frobenius(a + b) == ctx.frobenius(a) + ctx.frobenius(b)
        assert ctx.frobenius(a * b) == ctx.frobenius(a) * ctx.frobenius(b)


def test_units_and_inverses():
    ctx = RingContext(3, 2, 2)
    rng = random.Random(7)
    seen_units = 0
    for _ in range(300):
        a = ctx.from_coeffs([rng.randrange(9), rng.randrange(9)])
        if a.is_unit():
            seen_units += 1
            assert a * a.inv() == ctx.one
        else:
            with pytest.raises(ZeroDivisionError):
                a.inv()
    assert seen_units > 200


def test_trace_one_element():
    # N0 = 1: trace is the identity, alpha0 = 1
    ctx1 = RingContext(5, 2, 1)
    assert ctx1.alpha0 == ctx1.one
    # defining property and lexicographic minimality by exhaustion
    ctx = RingContext(3, 1, 2)
    assert ctx.trace(ctx.alpha0) == 1
    smallest = None
    for c0 in range(3):
        for c1 in range(3):
            if ctx.trace(ctx.from_coeffs([c0, c1])) == 1:
                smallest = (c0, c1)
                break
        if smallest:
            break
    assert ctx.alpha0.coeffs == smallest


def test_trace_one_element_m2():
    ctx = RingContext(3, 2, 2)
    assert ctx.trace(ctx.alpha0) == 1


def _random_nilpotent(alg, rng):
    terms = {}
    for _ in range(4):
        length = rng.randrange(1, alg.p)
        w = tuple(rng.randrange(len(alg.gens)) for _ in range(length))
        terms[w] = alg.ring.from_coeffs(
            [rng.randrange(alg.ring.modulus) for _ in range(alg.ring.N0)]
        )
    return AssocElement(alg, terms)


def test_exp_log_roundtrip():
    ring = RingContext(3, 2, 2)
    alg = FreeAlgebra(ring, standard_alphabet(3, 2, 2))
    rng = random.Random(8)
    for _ in range(1000):
        x = _random_nilpotent(alg, rng)
        e = truncated_exp(x, ring.p, ring.modulus)
        assert truncated_log(e, ring.p, ring.modulus) == x
        y = alg.one() + x
        assert truncated_exp(truncated_log(y, ring.p, ring.modulus), ring.p, ring.modulus) == y


def test_exp_log_base_cases():
    ring = RingContext(3, 1, 2)
    alg = FreeAlgebra(ring, standard_alphabet(3, 2, 2))
    zero, one = alg.zero(), alg.one()
    assert truncated_exp(zero, 3, 3) == one
    assert truncated_log(one, 3, 3) == zero
    # class 2: exp(x) = 1 + x + x^2/2
    x = alg.gen(Gen(1, 0))
    inv2 = pow(2, -1, 3)
    assert truncated_exp(x, 3, 3) == one + x + (x * x) * inv2
    # log(1+w) = w when w*w vanishes (length-2 word at p = 3)
    w = alg.term((0, 1), ring.one)
    assert not w * w
    assert truncated_log(one + w, 3, 3) == w
