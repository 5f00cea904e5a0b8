import random

from ramlie.modlinalg import SpanBasis, contains, howellize, reduce_vector, span_equal


def H(rows, p=2, M=2, dim=2):
    return howellize(rows, p ** M, dim, p, M)


def test_empty():
    b = H([])
    assert b.rows == ()
    assert contains(b, (0, 0))


def test_already_normalized():
    b = H([(2, 2)])
    assert b.rows == ((2, 2),)


def test_membership_example():
    # over Z/4: span of (1,1) and (0,2); (1,3) = (1,1) + (0,2)
    b = H([(1, 1), (0, 2)])
    assert contains(b, (1, 3))
    assert contains(b, (0, 2))
    assert not contains(b, (0, 1))


def test_two_by_two_over_z4():
    b = H([(2, 0)])
    assert contains(b, (2, 0))
    assert not contains(b, (1, 0))


def test_howell_closure_property():
    # span{(1,2)} over Z/4 contains 2*(1,2) = (2,0); a plain echelon basis
    # would miss the leading-zero row (0, ...) shadows
    b = howellize([(2, 1)], 4, 2, 2, 2)
    assert contains(b, (0, 2))


def _random_span(rng, dim, p, M, nrows):
    m = p ** M
    return [tuple(rng.randrange(m) for _ in range(dim)) for _ in range(nrows)]


def test_random_membership_constructive():
    rng = random.Random(11)
    for _ in range(300):
        p, M, dim = 3, 2, 4
        rows = _random_span(rng, dim, p, M, 3)
        b = howellize(rows, p ** M, dim, p, M)
        # a random combination is always contained
        combo = [0] * dim
        for r in rows:
            c = rng.randrange(p ** M)
            combo = [(x + c * y) % p ** M for x, y in zip(combo, r)]
        assert contains(b, combo)
        for r in rows:
            assert contains(b, r)


def test_canonical_under_recombination():
    rng = random.Random(12)
    for _ in range(1000):
        p, M, dim = 2, 3, 3
        m = p ** M
        rows = _random_span(rng, rng.randrange(1, 4), p, M, 3)
        rows = [tuple(rng.randrange(m) for _ in range(dim)) for _ in range(3)]
        b1 = howellize(rows, m, dim, p, M)
        # shuffle, rescale by units, add combinations
        alt = [list(r) for r in rows]
        rng.shuffle(alt)
        unit = rng.choice([1, 3, 5, 7])
        alt[0] = [(x * unit) % m for x in alt[0]]
        extra = [
            (a + 2 * b) % m for a, b in zip(alt[0], alt[-1])
        ]
        alt.append(extra)
        b2 = howellize(alt, m, dim, p, M)
        assert b1.rows == b2.rows


def test_mutual_containment_iff_equal():
    rng = random.Random(13)
    agree = 0
    for _ in range(1000):
        p, M, dim = 3, 1, 3
        m = p ** M
        r1 = _random_span(rng, dim, p, M, 2)
        r2 = _random_span(rng, dim, p, M, 2)
        b1 = howellize(r1, m, dim, p, M)
        b2 = howellize(r2, m, dim, p, M)
        mutual = all(contains(b1, r) for r in b2.rows) and all(
            contains(b2, r) for r in b1.rows
        )
        assert mutual == span_equal(b1, b2)
        agree += mutual
    assert 0 < agree < 1000  # both outcomes exercised


def test_reduce_vector_is_canonical():
    rng = random.Random(14)
    for _ in range(200):
        p, M, dim = 3, 2, 3
        m = p ** M
        rows = _random_span(rng, dim, p, M, 2)
        b = howellize(rows, m, dim, p, M)
        v = tuple(rng.randrange(m) for _ in range(dim))
        red = reduce_vector(b, v)
        # same coset, and reduction is idempotent
        diff = tuple((a - c) % m for a, c in zip(v, red))
        assert contains(b, diff)
        assert reduce_vector(b, red) == red


def test_span_equal_ignores_redundant_rows():
    b1 = H([(2, 0)])
    b2 = H([(2, 0), (0, 0), (2, 0)])
    assert span_equal(b1, b2)
