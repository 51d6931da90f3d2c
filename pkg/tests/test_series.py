import random

import pytest

from localp1p1.rational import QQ, qq
from localp1p1.series import (
    BiSeries,
    HalfPowerSeries,
    NotASquare,
    NotInvertible,
    TruncationMismatch,
    bis_pow,
    geometric,
)

D = 8


def rand_series(rng, trunc=D, maxnum=9, unit=False):
    terms = []
    for d1 in range(trunc + 1):
        for d2 in range(trunc + 1 - d1):
            if rng.random() < 0.6:
                terms.append((d1, d2, QQ(rng.randint(-maxnum, maxnum), rng.randint(1, 7))))
    s = BiSeries.from_terms(terms, trunc)
    if unit and not s.constant_term():
        s = s + 1
    return s


def test_mul_difference_of_squares():
    one = BiSeries.one(D)
    q1 = BiSeries.monomial(1, 0, D)
    assert (one + q1) * (one - q1) == one - BiSeries.monomial(2, 0, D)


def test_mul_identity():
    rng = random.Random(1)
    a = rand_series(rng)
    assert a * BiSeries.one(D) == a


def test_mul_geometric_series_oracle():
    # (sum_{i<=D} q1^i) * (1 - q1) == 1 to order D
    geo = geometric(1, 0, D)
    q1 = BiSeries.monomial(1, 0, D)
    assert geo * (BiSeries.one(D) - q1) == BiSeries.one(D)


def test_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(5):
        a, b, c = (rand_series(rng, trunc=5) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_truncation_mismatch_raises():
    with pytest.raises(TruncationMismatch):
        BiSeries.one(4) * BiSeries.one(5)


def test_invert_cases():
    assert BiSeries.one(D).invert() == BiSeries.one(D)
    assert BiSeries.const(2, D).invert() == BiSeries.const(qq(1, 2), D)
    a = BiSeries.one(D) + BiSeries.monomial(1, 0, D)
    assert a * a.invert() == BiSeries.one(D)
    # 1/(1+q1) equals the alternating geometric series
    alt = BiSeries.from_terms([(i, 0, (-1) ** i) for i in range(D + 1)], D)
    assert a.invert() == alt


def test_invert_roundtrip_random():
    rng = random.Random(3)
    for _ in range(4):
        a = rand_series(rng, trunc=5, unit=True)
        assert a.invert().invert() == a


def test_invert_requires_unit():
    with pytest.raises(NotInvertible):
        BiSeries.monomial(1, 0, D).invert()


def test_sqrt_perfect_square():
    one = BiSeries.one(D)
    q1 = BiSeries.monomial(1, 0, D)
    sq = one + 2 * q1 + BiSeries.monomial(2, 0, D)
    assert sq.sqrt(1) == one + q1


def test_sqrt_constant_and_branch():
    assert BiSeries.const(4, D).sqrt(2) == BiSeries.const(2, D)
    assert BiSeries.const(4, D).sqrt(-2) == BiSeries.const(-2, D)


def test_sqrt_binomial_series():
    one = BiSeries.one(D)
    q1 = BiSeries.monomial(1, 0, D)
    r = (one + q1).sqrt(1)
    assert r * r == one + q1
    assert r.get(1, 0) == qq(1, 2)
    assert r.get(2, 0) == qq(-1, 8)


def test_sqrt_random_roundtrip():
    rng = random.Random(11)
    a = rand_series(rng, trunc=6, unit=True)
    sq = a * a
    assert sq.sqrt(a.constant_term()) == a


def test_sqrt_rejects_nonsquare():
    with pytest.raises(NotASquare):
        (BiSeries.const(2, D)).sqrt(1)


def test_euler_examples():
    q1 = BiSeries.monomial(1, 0, D)
    assert q1.euler("q1") == q1
    assert BiSeries.const(5, D).euler("both").is_zero()
    m = BiSeries.monomial(2, 1, D)
    assert m.euler("both") == 3 * m


def test_euler_is_derivation():
    rng = random.Random(23)
    a = rand_series(rng, trunc=5)
    b = rand_series(rng, trunc=5)
    lhs = (a * b).euler("both")
    rhs = a.euler("both") * b + a * b.euler("both")
    assert lhs == rhs


def test_log_deriv():
    one = BiSeries.one(D)
    s = one + BiSeries.monomial(1, 0, D) + BiSeries.monomial(0, 1, D)
    ld = s.log_deriv("both")
    # multiply back: euler(s) = ld * s
    assert ld * s == s.euler("both")
    assert BiSeries.one(D).log_deriv("both").is_zero()
    assert BiSeries.const(5, D).log_deriv("both").is_zero()


def test_ddq_and_mul_q():
    s = BiSeries.from_terms([(2, 1, 3), (0, 2, 5)], D)
    d = s.ddq("q1")
    assert d.trunc == D - 1
    assert d.get(1, 1) == 6
    shifted = s.mul_q(1, 0)
    assert shifted.get(3, 1) == 3


def test_swap():
    s = BiSeries.from_terms([(2, 1, 3), (0, 2, 5)], D)
    w = s.swap()
    assert w.get(1, 2) == 3 and w.get(2, 0) == 5
    assert w.swap() == s


def test_json_roundtrip():
    rng = random.Random(5)
    s = rand_series(rng, trunc=4)
    assert BiSeries.from_json(s.to_json()) == s
    obj = s.to_json_obj()
    assert obj["trunc"] == 4
    assert obj["coeffs"] == sorted(obj["coeffs"])  # lexicographic order


def test_half_power_bookkeeping():
    base = BiSeries.one(D) + BiSeries.monomial(1, 0, D)
    h = HalfPowerSeries(base, 1)
    assert not h.is_even
    sq = h * h
    assert sq.is_even and sq.materialize() == base
    neg = HalfPowerSeries(base, -2)
    assert neg.materialize() == base.invert()
    with pytest.raises(ValueError):
        h.materialize()


def test_bis_pow_negative():
    a = BiSeries.one(D) + BiSeries.monomial(0, 1, D)
    assert bis_pow(a, -2) * a * a == BiSeries.one(D)
