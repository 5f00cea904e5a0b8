import random
from fractions import Fraction

import pytest

from ramlie.params import GlobalParams, parse_rational, vp


def test_vp_examples():
    assert vp(3, 3) == 1
    assert vp(5, 5) == 1
    assert vp(1, 3) == 0
    assert vp(18, 3) == 2
    assert vp(Fraction(4, 3), 3) == -1


def test_vp_zero_rejected():
    with pytest.raises(ValueError):
        vp(0, 3)


def test_vp_is_multiplicative():
    rng = random.Random(1)
    for _ in range(500):
        x = Fraction(rng.randrange(-400, 400) or 1, rng.randrange(1, 400))
        y = Fraction(rng.randrange(-400, 400) or 1, rng.randrange(1, 400))
        assert vp(x * y, 3) == vp(x, 3) + vp(y, 3)


def test_vp_ultrametric():
    rng = random.Random(2)
    for _ in range(500):
        x = Fraction(rng.randrange(-300, 300) or 1, rng.randrange(1, 300))
        y = Fraction(rng.randrange(-300, 300) or 1, rng.randrange(1, 300))
        if x + y == 0:
            continue
        assert vp(x + y, 5) >= min(vp(x, 5), vp(y, 5))
        if vp(x, 5) != vp(y, 5):
            assert vp(x + y, 5) == min(vp(x, 5), vp(y, 5))


def test_rational_field_identities():
    rng = random.Random(3)
    for _ in range(1000):
        a, b, c = (
            Fraction(rng.randrange(-50, 50), rng.randrange(1, 50)) for _ in range(3)
        )
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if a:
            assert a * (1 / a) == 1


def test_parse_rational():
    assert parse_rational("5/8") == Fraction(5, 8)
    assert parse_rational("7") == 7
    assert parse_rational(3) == 3
    with pytest.raises(ValueError):
        parse_rational(0.5)


def test_validate_good_config():
    assert GlobalParams(3, 2, 2, Fraction(1), 2).validate() == []


def test_validate_rejects_p2():
    errs = GlobalParams(2, 1, 1, Fraction(1), 1).validate()
    assert any("p must be >= 3" in e for e in errs)


def test_validate_rejects_composite_p():
    errs = GlobalParams(9, 1, 1, Fraction(1), 18).validate()
    assert any("not prime" in e for e in errs)


def test_validate_rejects_small_amax():
    errs = GlobalParams(3, 1, 1, Fraction(1), 1).validate()
    assert any("a_max" in e for e in errs)
