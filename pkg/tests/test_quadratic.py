import math
import random
from fractions import Fraction

import pytest

from apercut.errors import EmptyIntervalError, FieldMismatchError
from apercut.quadratic import (
    QuadNum,
    RingSpec,
    RingVariant,
    deserialize_quadnum,
    enumerate_ring_in_rectangle,
    exact_sign,
    floor_div,
    floor_sqrt,
    in_ring,
    is_square_free,
    serialize_quadnum,
)

SQRT2 = QuadNum(0, 1, 2)


# ---------------------------------------------------------------------------
# independent oracle: decide sign(a + b*sqrt(d)) by bracketing sqrt(d) between
# isqrt(d * N^2)/N and (isqrt(d * N^2) + 1)/N at growing precision N
# ---------------------------------------------------------------------------

def oracle_sign(a: Fraction, b: Fraction, d: int) -> int:
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return (a > 0) - (a < 0)
    n = 10 ** 8
    for _ in range(8):
        root_lo = Fraction(math.isqrt(d * n * n), n)
        root_hi = root_lo + Fraction(1, n)
        if b > 0:
            lo, hi = a + b * root_lo, a + b * root_hi
        else:
            lo, hi = a + b * root_hi, a + b * root_lo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        n *= 10 ** 4
    raise AssertionError("oracle ran out of precision (value too close to zero?)")


def oracle_in_interval(a, b, d, lo, hi) -> bool:
    return oracle_sign(Fraction(a) - lo, Fraction(b), d) >= 0 and (
        oracle_sign(Fraction(a) - hi, Fraction(b), d) <= 0
    )


def oracle_enumerate(ring, phys, grid, internal):
    """Brute-force grid scan, completely independent of the library route."""
    p1, p2 = Fraction(phys[0]), Fraction(phys[1])
    i1, i2 = Fraction(internal[0]), Fraction(internal[1])
    hits = []
    if ring.variant is RingVariant.Z_SQRT_D:
        candidates = [
            (Fraction(a), Fraction(b))
            for a in range(-grid, grid + 1)
            for b in range(-grid, grid + 1)
        ]
    else:
        candidates = [
            (Fraction(p, 2), Fraction(q, 2))
            for p in range(-2 * grid, 2 * grid + 1)
            for q in range(-2 * grid, 2 * grid + 1)
            if (p - q) % 2 == 0
        ]
    for a, b in candidates:
        if oracle_in_interval(a, b, ring.d, p1, p2) and oracle_in_interval(
            a, -b, ring.d, i1, i2
        ):
            hits.append((a, b))
    return sorted(hits, key=lambda ab: (ab[0] + ab[1] * math.sqrt(ring.d)))


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def test_known_inverse():
    x = QuadNum(1, 1, 2)
    assert x.inverse() == QuadNum(-1, 1, 2)
    assert x * x.inverse() == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        QuadNum(0, 0, 2).inverse()
    with pytest.raises(ZeroDivisionError):
        QuadNum(1, 1, 2) / QuadNum(0, 0, 5)


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        QuadNum(0, 1, 2) + QuadNum(0, 1, 3)
    with pytest.raises(FieldMismatchError):
        QuadNum(1, 2, 2) * QuadNum(3, 1, 5)


def test_rational_values_cross_fields():
    # a d=3 rational combines fine with sqrt(2)
    assert QuadNum(1, 0, 3) + SQRT2 == QuadNum(1, 1, 2)
    assert QuadNum(2, 0, 5) * SQRT2 == QuadNum(0, 2, 2)
    assert QuadNum(7, 0, 3) == QuadNum(7, 0, 5) == 7
    assert hash(QuadNum(7, 0, 3)) == hash(7)


def test_pow():
    x = QuadNum(1, 1, 2)
    expected = QuadNum(1, 0, 2)
    for _ in range(7):
        expected = expected * x
    assert x ** 7 == expected
    assert x ** 0 == 1
    assert x ** -3 == (x ** 3).inverse()


def test_d_validation():
    for bad in (1, 0, -2, 4, 8, 9, 12, 18):
        with pytest.raises(ValueError):
            QuadNum(1, 1, bad)
    for good in (2, 3, 5, 6, 7, 10, 11, 13):
        QuadNum(1, 1, good)
        assert is_square_free(good)


def test_conjugation_is_homomorphism_randomized():
    rng = random.Random(20260823)
    for _ in range(300):
        d = rng.choice([2, 3, 5])
        x = QuadNum(Fraction(rng.randint(-50, 50), rng.randint(1, 9)),
                    Fraction(rng.randint(-50, 50), rng.randint(1, 9)), d)
        y = QuadNum(Fraction(rng.randint(-50, 50), rng.randint(1, 9)),
                    Fraction(rng.randint(-50, 50), rng.randint(1, 9)), d)
        assert (x + y).conjugate() == x.conjugate() + y.conjugate()
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()
        assert (x * y).norm() == x.norm() * y.norm()
        assert x * x.conjugate() == x.norm()


# ---------------------------------------------------------------------------
# exact sign
# ---------------------------------------------------------------------------

def test_sign_basics():
    assert exact_sign(QuadNum(0, 0, 2)) == 0
    assert exact_sign(QuadNum(1, 1, 2)) == 1
    assert exact_sign(QuadNum(1, -1, 2)) == -1
    assert exact_sign(QuadNum(-1, 1, 2)) == 1
    assert exact_sign(QuadNum(-1, -1, 2)) == -1
    assert exact_sign(QuadNum(3, -2, 2)) == 1       # 3 > 2*sqrt(2)
    assert exact_sign(QuadNum(-3, 2, 2)) == -1


def test_sign_defeats_float_precision():
    # Pell-style convergents p/q of sqrt(2): p^2 - 2 q^2 = +-1, so the
    # difference p/q - sqrt(2) is far below float resolution but has a
    # knowable exact sign.
    p, q = 1, 1
    for _ in range(30):
        p, q = p + 2 * q, p + q
    x = QuadNum(Fraction(p, q), -1, 2)
    assert abs(float(x)) < 1e-12  # the whole point: floats cannot see it
    assert exact_sign(x) == (1 if p * p - 2 * q * q > 0 else -1)
    assert exact_sign(x) == oracle_sign(Fraction(p, q), Fraction(-1), 2)


def test_sign_matches_oracle_randomized():
    rng = random.Random(7)
    for _ in range(500):
        d = rng.choice([2, 3, 5, 7])
        a = Fraction(rng.randint(-100, 100), rng.randint(1, 20))
        b = Fraction(rng.randint(-100, 100), rng.randint(1, 20))
        assert exact_sign(QuadNum(a, b, d)) == oracle_sign(a, b, d)


def test_total_order():
    values = [QuadNum(1, 1, 2), QuadNum(0, 0, 2), QuadNum(2, -1, 2),
              QuadNum(-1, 2, 2), QuadNum(3, -2, 2), QuadNum(0, 1, 2)]
    ordered = sorted(values)
    floats = [float(v) for v in ordered]
    assert floats == sorted(floats)
    assert ordered[0] == QuadNum(0, 0, 2)


def test_floor():
    assert math.floor(SQRT2) == 1
    assert math.floor(-SQRT2) == -2
    assert math.floor(QuadNum(3, 0, 2)) == 3
    assert math.floor(QuadNum(Fraction(1, 2), Fraction(1, 2), 5)) == 1
    assert math.ceil(SQRT2) == 2
    assert floor_div(SQRT2, Fraction(1, 2)) == 2
    assert floor_div(QuadNum(-1, -1, 2), Fraction(1, 2)) == -5


def test_floor_sqrt_exact():
    rng = random.Random(99)
    for _ in range(300):
        q = Fraction(rng.randint(0, 10 ** 6), rng.randint(1, 10 ** 3))
        k = floor_sqrt(q)
        assert k * k <= q < (k + 1) * (k + 1)


# ---------------------------------------------------------------------------
# rings and membership
# ---------------------------------------------------------------------------

def test_ring_validation():
    RingSpec(2)
    RingSpec(5, RingVariant.FULL_INTEGERS)
    RingSpec(13, RingVariant.FULL_INTEGERS)
    with pytest.raises(ValueError):
        RingSpec(2, RingVariant.FULL_INTEGERS)  # 2 != 1 (mod 4)
    with pytest.raises(ValueError):
        RingSpec(3, RingVariant.FULL_INTEGERS)
    with pytest.raises(ValueError):
        RingSpec(4)
    with pytest.raises(ValueError):
        RingSpec(1)


def test_membership():
    golden = QuadNum(Fraction(1, 2), Fraction(1, 2), 5)
    assert in_ring(golden, RingSpec(5, RingVariant.FULL_INTEGERS))
    assert not in_ring(golden, RingSpec(5))
    assert in_ring(QuadNum(0, 1, 5), RingSpec(5))
    assert in_ring(QuadNum(0, 1, 5), RingSpec(5, RingVariant.FULL_INTEGERS))
    assert not in_ring(QuadNum(Fraction(1, 2), 0, 5),
                       RingSpec(5, RingVariant.FULL_INTEGERS))
    assert not in_ring(QuadNum(Fraction(1, 2), Fraction(3, 2), 5), RingSpec(5))
    # half-integer parts of opposite parity are not in the full ring either
    assert not in_ring(QuadNum(Fraction(1, 2), 1, 5),
                       RingSpec(5, RingVariant.FULL_INTEGERS))
    with pytest.raises(FieldMismatchError):
        in_ring(QuadNum(1, 1, 2), RingSpec(5))


def test_full_ring_closed_under_multiplication():
    ring = RingSpec(5, RingVariant.FULL_INTEGERS)
    one, omega = ring.fundamental_elements()
    assert in_ring(omega * omega, ring)
    assert in_ring((one + omega) * omega - omega, ring)


# ---------------------------------------------------------------------------
# rectangle enumeration
# ---------------------------------------------------------------------------

def test_enumerate_documented_example():
    # brute-force oracle answer for phys [0, 3], internal [-1, 1] over Z[sqrt2]:
    # 2 is excluded (conjugate 2 misses the internal window), 2+sqrt2 > 3
    got = enumerate_ring_in_rectangle(RingSpec(2), (0, 3), (-1, 1))
    assert got == [QuadNum(0, 0, 2), QuadNum(1, 0, 2), QuadNum(1, 1, 2)]
    oracle = oracle_enumerate(RingSpec(2), (0, 3), 10, (-1, 1))
    assert [(x.a, x.b) for x in got] == oracle


def test_enumerate_point_rectangle():
    got = enumerate_ring_in_rectangle(RingSpec(2), (0, 0), (0, 0))
    assert got == [QuadNum(0, 0, 2)]


def test_enumerate_empty_interval_raises():
    with pytest.raises(EmptyIntervalError):
        enumerate_ring_in_rectangle(RingSpec(2), (5, 4), (-1, 1))
    with pytest.raises(EmptyIntervalError):
        enumerate_ring_in_rectangle(RingSpec(2), (0, 1), (1, 0))


def test_enumerate_sorted_and_distinct():
    got = enumerate_ring_in_rectangle(RingSpec(2), (-10, 10), (-3, 3))
    assert all(got[i] < got[i + 1] for i in range(len(got) - 1))


def test_enumerate_against_oracle_randomized():
    rng = random.Random(20260823)
    rings = [RingSpec(2), RingSpec(3), RingSpec(5),
             RingSpec(5, RingVariant.FULL_INTEGERS)]
    for ring in rings:
        for _ in range(8):
            # endpoints within [-20, 20] keep every solution inside the
            # oracle's |a|, |b| <= 30 grid
            ends = sorted(Fraction(rng.randint(-100, 100), rng.randint(5, 9))
                          for _ in range(2))
            iends = sorted(Fraction(rng.randint(-100, 100), rng.randint(5, 9))
                           for _ in range(2))
            got = enumerate_ring_in_rectangle(ring, tuple(ends), tuple(iends))
            want = oracle_enumerate(ring, tuple(ends), 30, tuple(iends))
            assert [(x.a, x.b) for x in got] == want, (ring, ends, iends)


def test_enumerate_monotone_in_intervals():
    ring = RingSpec(2)
    small = set(enumerate_ring_in_rectangle(ring, (-5, 5), (-1, 1)))
    wider_phys = set(enumerate_ring_in_rectangle(ring, (-8, 8), (-1, 1)))
    wider_int = set(enumerate_ring_in_rectangle(ring, (-5, 5), (-2, 2)))
    assert small <= wider_phys
    assert small <= wider_int


def test_enumerate_full_ring_contains_zsqrt():
    z = enumerate_ring_in_rectangle(RingSpec(5), (-6, 6), (-6, 6))
    full = enumerate_ring_in_rectangle(
        RingSpec(5, RingVariant.FULL_INTEGERS), (-6, 6), (-6, 6))
    assert set(z) <= set(full)
    golden = QuadNum(Fraction(1, 2), Fraction(1, 2), 5)
    assert golden in set(full) and golden not in set(z)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_serialize_round_trip():
    x = QuadNum(Fraction(-3, 7), Fraction(22, 5), 5)
    parts = serialize_quadnum(x)
    assert parts == ["-3", "7", "22", "5"]
    assert deserialize_quadnum(parts, 5) == x
    with pytest.raises(ValueError):
        deserialize_quadnum(["1", "2", "3"], 5)
