import random

import pytest

from ramlie.filtration import build_Lp, build_Lw
from ramlie.freeassoc import Gen, is_lie
from ramlie.modlinalg import contains
from ramlie.nilpotentlie import (
    LieElement,
    bracket,
    d0n,
    flatten,
    from_assoc,
    ideal_closure,
    lie_gen,
    lie_zero,
    quotient_map,
    sigma,
    unflatten,
)
from conftest import C1, C2


def rand_lie(alg, rng, density=0.35):
    coords = {}
    for w in alg.lyndon:
        if rng.random() < density:
            coords[w] = alg.ring.from_coeffs(
                [rng.randrange(alg.ring.modulus) for _ in range(alg.ring.N0)]
            )
    return LieElement(alg, coords)


def test_bracket_basics(alg_c1):
    x = lie_gen(alg_c1, Gen(1, 0))
    y = lie_gen(alg_c1, Gen(1, 1))
    assert not bracket(x, x)
    b = bracket(x, y)
    # D(1,0) < D(1,1): the bracket is the Lyndon basis element of that word
    w = alg_c1.word_of_gens([Gen(1, 0), Gen(1, 1)])
    assert b.coords == {w: alg_c1.ring.one}
    assert bracket(y, x) == -b


def test_jacobi_antisymmetry_bilinearity(alg_p5):
    rng = random.Random(31)
    zero = lie_zero(alg_p5)
    for _ in range(1000):
        x, y, z = (rand_lie(alg_p5, rng, 0.15) for _ in range(3))
        assert bracket(x, y) == -bracket(y, x)
        jac = (
            bracket(bracket(x, y), z)
            + bracket(bracket(y, z), x)
            + bracket(bracket(z, x), y)
        )
        assert jac == zero
    x, y, z = (rand_lie(alg_p5, rng, 0.3) for _ in range(3))
    assert bracket(x + y, z) == bracket(x, z) + bracket(y, z)
    assert bracket(x * 7, z) == bracket(x, z) * 7


def test_roundtrip_assoc(alg_c1, alg_p5):
    rng = random.Random(32)
    for alg in (alg_c1, alg_p5):
        for _ in range(100):
            x = rand_lie(alg, rng)
            xa = x.to_assoc()
            assert is_lie(xa)
            assert from_assoc(xa) == x


def test_from_assoc_rejects_non_lie(alg_c1):
    xy = alg_c1.gen(Gen(1, 0)) * alg_c1.gen(Gen(1, 1))
    with pytest.raises(ValueError):
        from_assoc(xy)
    with pytest.raises(ValueError):
        from_assoc(alg_c1.one())


def test_sigma_on_generators(alg_c1):
    assert sigma(lie_gen(alg_c1, Gen(1, 0)), 1) == lie_gen(alg_c1, Gen(1, 1))
    assert sigma(lie_gen(alg_c1, Gen(1, 1)), 1) == lie_gen(alg_c1, Gen(1, 0))
    d0 = lie_gen(alg_c1, Gen(0, 0))
    assert sigma(d0, 1) == d0


def test_sigma_order_and_semilinearity(alg_c1):
    rng = random.Random(33)
    n0 = alg_c1.ring.N0
    for _ in range(200):
        x, y = rand_lie(alg_c1, rng), rand_lie(alg_c1, rng)
        assert sigma(sigma(x, 1), n0 - 1) == x
        assert sigma(bracket(x, y), 1) == bracket(sigma(x, 1), sigma(y, 1))


def test_d0n(alg_c1):
    ring = alg_c1.ring
    total = ring.zero
    w = (alg_c1.index[Gen(0, 0)],)
    for n in range(ring.N0):
        elem = d0n(n, alg_c1)
        assert list(elem.coords) == [w]
        total = total + elem.coords[w]
    assert total == ring.one  # sum of sigma^n(alpha0) = Tr(alpha0) = 1


def test_d0n_trivial_for_n0_one(ring_p5):
    from ramlie.freeassoc import FreeAlgebra, standard_alphabet

    alg = FreeAlgebra(ring_p5, standard_alphabet(5, 1, 6))
    expected = lie_gen(alg, Gen(0, 0))  # alpha0 = 1 when N0 = 1
    for n in range(4):
        assert d0n(n, alg) == expected


def test_flatten_roundtrip(alg_c1):
    rng = random.Random(34)
    for _ in range(50):
        x = rand_lie(alg_c1, rng)
        assert unflatten(alg_c1, flatten(x)) == x


def test_ideal_closure_basics(alg_c1):
    zero_span = ideal_closure(alg_c1, [])
    assert zero_span.basis.rows == ()
    d0 = lie_gen(alg_c1, Gen(0, 0))
    span = ideal_closure(alg_c1, [d0])
    assert span.contains_elem(d0)
    # class 2: one saturation round reaches all [D_0, D_an] and sigma-orbits
    for g in alg_c1.gens:
        assert span.contains_elem(bracket(d0, lie_gen(alg_c1, g)))
        assert span.contains_elem(bracket(lie_gen(alg_c1, g), d0))
    assert span.contains_elem(sigma(d0, 1))


def test_ideal_closure_idempotent_and_monotone(alg_c1):
    rng = random.Random(35)
    g1, g2 = rand_lie(alg_c1, rng), rand_lie(alg_c1, rng)
    s1 = ideal_closure(alg_c1, [g1])
    s12 = ideal_closure(alg_c1, [g1, g2])
    for row in s1.basis.rows:
        assert contains(s12.basis, row)
    again = ideal_closure(alg_c1, [unflatten(alg_c1, r) for r in s1.basis.rows])
    assert again.basis.rows == s1.basis.rows


def test_build_Lp_contains_high_generators(alg_c1):
    # every D_an with a >= (p-1) v0 dies in the quotient
    span = build_Lp(C1, alg_c1)
    for g in alg_c1.gens:
        if g.a and g.a >= (C1.p - 1) * C1.v0:
            assert span.contains_elem(lie_gen(alg_c1, g))
    assert span.contains_elem(lie_zero(alg_c1))


def test_build_Lp_contains_saturated_monomials(alg_c1):
    # length p-1 = 2 with one extra filtration slot satisfied: [D_{1,n}, D_{1,n'}]
    span = build_Lp(C1, alg_c1)
    x = bracket(lie_gen(alg_c1, Gen(1, 0)), lie_gen(alg_c1, Gen(1, 1)))
    assert span.contains_elem(x)


def test_quotient_map(alg_c1):
    span = build_Lp(C1, alg_c1).basis
    d2 = lie_gen(alg_c1, Gen(2, 0))
    assert not any(quotient_map(d2, span))  # 2 >= (p-1) v0 = 2
    d1 = lie_gen(alg_c1, Gen(1, 0))
    assert any(quotient_map(d1, span))
    for row in span.rows:
        assert not any(quotient_map(unflatten(alg_c1, row), span))


def test_ideal_closure_of_weight_span_is_stable(alg_c1):
    # build_Lw emits a module span that is already an ideal and sigma-stable
    span = build_Lw(2, C1, alg_c1)
    closed = ideal_closure(
        alg_c1, [unflatten(alg_c1, r) for r in span.basis.rows], sigma_stable=True
    )
    assert closed.basis.rows == span.basis.rows
