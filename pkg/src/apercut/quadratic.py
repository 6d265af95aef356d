"""Exact arithmetic in real quadratic fields Q(sqrt(d)).

Numbers are a + b*sqrt(d) with rational a, b and a fixed square-free d >= 2.
Everything is exact: comparisons reduce to integer comparisons, never floats.
The two subrings used for lattices are Z[sqrt(d)] and, for d = 1 (mod 4), the
full ring of integers { (p + q*sqrt(d))/2 : p = q (mod 2) }.

Internally a number is the canonical integer triple (p, q, den) representing
(p + q*sqrt(d))/den with den > 0 and gcd(p, q, den) = 1, so every operation
is plain integer arithmetic; Fractions only appear at the API boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Tuple, Union

from .errors import EmptyIntervalError, FieldMismatchError

RationalLike = Union[int, Fraction]
Interval = Tuple[RationalLike, RationalLike]


def is_square_free(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _check_d(d: int) -> int:
    if not isinstance(d, int) or d < 2 or not is_square_free(d):
        raise ValueError(f"d must be a square-free integer >= 2, got {d!r}")
    return d


def floor_sqrt(q: Fraction) -> int:
    """floor(sqrt(q)) for a nonnegative rational q, exactly."""
    if q < 0:
        raise ValueError("floor_sqrt of a negative number")
    # sqrt(p/q) = sqrt(p*q)/q and floor(x/q) = floor(floor(x)/q) for integer q
    return math.isqrt(q.numerator * q.denominator) // q.denominator


def _sign_pq(p: int, q: int, d: int) -> int:
    """Exact sign of p + q*sqrt(d) by integer comparison."""
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return 1 if q > 0 else -1
    if p > 0:
        if q > 0:
            return 1
        lhs, rhs = p * p, q * q * d
        if lhs == rhs:
            # would mean sqrt(d) rational; unreachable for square-free d >= 2
            raise ArithmeticError(f"sqrt({d}) behaved rationally")
        return 1 if lhs > rhs else -1
    if q < 0:
        return -1
    lhs, rhs = p * p, q * q * d
    if lhs == rhs:
        raise ArithmeticError(f"sqrt({d}) behaved rationally")
    return 1 if rhs > lhs else -1


class QuadNum:
    """An immutable exact number a + b*sqrt(d).

    Values with b == 0 compare equal to, and hash like, the rational a, so
    they mix safely with int/Fraction keys in sets and dicts.
    """

    __slots__ = ("_p", "_q", "_den", "_d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 2) -> None:
        if isinstance(a, int) and isinstance(b, int):
            p, q, den = a, b, 1
        else:
            fa, fb = Fraction(a), Fraction(b)
            den = fa.denominator * fb.denominator // math.gcd(
                fa.denominator, fb.denominator
            )
            p = fa.numerator * (den // fa.denominator)
            q = fb.numerator * (den // fb.denominator)
            g = math.gcd(math.gcd(p, q), den)
            if g > 1:
                p, q, den = p // g, q // g, den // g
        self._p = p
        self._q = q
        self._den = den
        self._d = _check_d(d)

    @classmethod
    def _mk(cls, p: int, q: int, den: int, d: int) -> "QuadNum":
        """Internal constructor from a raw integer triple; d is trusted."""
        if den < 0:
            p, q, den = -p, -q, -den
        elif den == 0:
            raise ZeroDivisionError("zero denominator")
        g = math.gcd(math.gcd(p, q), den)
        if g > 1:
            p, q, den = p // g, q // g, den // g
        self = object.__new__(cls)
        self._p = p
        self._q = q
        self._den = den
        self._d = d
        return self

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._den)

    @property
    def d(self) -> int:
        return self._d

    @classmethod
    def from_rational(cls, q: RationalLike, d: int = 2) -> "QuadNum":
        return cls(q, 0, d)

    @classmethod
    def sqrt_d(cls, d: int) -> "QuadNum":
        return cls(0, 1, d)

    @property
    def is_rational(self) -> bool:
        return self._q == 0

    @property
    def is_zero(self) -> bool:
        return self._p == 0 and self._q == 0

    def conjugate(self) -> "QuadNum":
        """Galois conjugate a - b*sqrt(d)."""
        return QuadNum._mk(self._p, -self._q, self._den, self._d)

    def norm(self) -> Fraction:
        """Field norm a^2 - b^2 d (the product with the conjugate)."""
        return Fraction(
            self._p * self._p - self._q * self._q * self._d,
            self._den * self._den,
        )

    def trace(self) -> Fraction:
        return Fraction(2 * self._p, self._den)

    def sign(self) -> int:
        """Exact sign in {-1, 0, +1}, decided by integer comparisons only."""
        return _sign_pq(self._p, self._q, self._d)

    def _coerce(self, other: object) -> "QuadNum":
        if isinstance(other, QuadNum):
            if other._d == self._d or self._q == 0 or other._q == 0:
                return other
            raise FieldMismatchError(
                f"cannot combine sqrt({self._d}) with sqrt({other._d})"
            )
        if isinstance(other, int):
            return QuadNum._mk(other, 0, 1, self._d)
        if isinstance(other, Fraction):
            return QuadNum._mk(other.numerator, 0, other.denominator, self._d)
        return NotImplemented  # type: ignore[return-value]

    def _merge_d(self, other: "QuadNum") -> int:
        return other._d if self._q == 0 and other._q != 0 else self._d

    def __add__(self, other: object) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._merge_d(o)
        e1, e2 = self._den, o._den
        if e1 == e2:
            return QuadNum._mk(self._p + o._p, self._q + o._q, e1, d)
        return QuadNum._mk(
            self._p * e2 + o._p * e1, self._q * e2 + o._q * e1, e1 * e2, d
        )

    __radd__ = __add__

    def __sub__(self, other: object) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._merge_d(o)
        e1, e2 = self._den, o._den
        if e1 == e2:
            return QuadNum._mk(self._p - o._p, self._q - o._q, e1, d)
        return QuadNum._mk(
            self._p * e2 - o._p * e1, self._q * e2 - o._q * e1, e1 * e2, d
        )

    def __rsub__(self, other: object) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._merge_d(o)
        return QuadNum._mk(
            self._p * o._p + self._q * o._q * d,
            self._p * o._q + self._q * o._p,
            self._den * o._den,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadNum":
        n = self._p * self._p - self._q * self._q * self._d
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/x = den*(p - q*sqrt(d)) / (p^2 - q^2 d)
        return QuadNum._mk(
            self._den * self._p, -self._den * self._q, n, self._d
        )

    def __truediv__(self, other: object) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "QuadNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "QuadNum":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadNum._mk(1, 0, 1, self._d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self) -> "QuadNum":
        return QuadNum._mk(-self._p, -self._q, self._den, self._d)

    def __pos__(self) -> "QuadNum":
        return self

    def __abs__(self) -> "QuadNum":
        return -self if self.sign() < 0 else self

    def __eq__(self, other: object) -> bool:
        # the triple is canonical, so equality is componentwise
        if isinstance(other, QuadNum):
            if self._q == 0 and other._q == 0:
                return self._p == other._p and self._den == other._den
            return (
                self._d == other._d
                and self._p == other._p
                and self._q == other._q
                and self._den == other._den
            )
        if isinstance(other, int):
            return self._q == 0 and self._den == 1 and self._p == other
        if isinstance(other, Fraction):
            return (
                self._q == 0
                and self._p == other.numerator
                and self._den == other.denominator
            )
        return NotImplemented

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(Fraction(self._p, self._den))
        return hash((self._p, self._q, self._den, self._d))

    def _cmp(self, other: object) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented  # type: ignore[return-value]
        e1, e2 = self._den, o._den
        if e1 == e2:
            return _sign_pq(self._p - o._p, self._q - o._q, self._d)
        return _sign_pq(
            self._p * e2 - o._p * e1, self._q * e2 - o._q * e1, self._d
        )

    def __lt__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __float__(self) -> float:
        return (self._p + self._q * math.sqrt(self._d)) / self._den

    def __floor__(self) -> int:
        """Exact floor via isqrt; q*sqrt(d) is irrational whenever q != 0."""
        p, q, den = self._p, self._q, self._den
        if q == 0:
            return p // den
        r = math.isqrt(q * q * self._d)
        f = r if q > 0 else -r - 1
        return (p + f) // den

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __repr__(self) -> str:
        return f"QuadNum({self.a!r}, {self.b!r}, d={self._d})"

    def __str__(self) -> str:
        if self._q == 0:
            return str(self.a)
        sign = "+" if self._q >= 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self._d})"


def conjugate(x: QuadNum) -> QuadNum:
    return x.conjugate()


def exact_sign(x: QuadNum) -> int:
    return x.sign()


class RingVariant(Enum):
    Z_SQRT_D = "zsqrt"
    FULL_INTEGERS = "full"


@dataclass(frozen=True)
class RingSpec:
    """A real quadratic order: Z[sqrt(d)], or the full ring of integers
    when d = 1 (mod 4)."""

    d: int
    variant: RingVariant = RingVariant.Z_SQRT_D

    def __post_init__(self) -> None:
        _check_d(self.d)
        if self.variant is RingVariant.FULL_INTEGERS and self.d % 4 != 1:
            raise ValueError(
                f"full ring of integers requires d = 1 (mod 4), got d={self.d}"
            )

    def contains(self, x: QuadNum) -> bool:
        if x.d != self.d and not x.is_rational:
            raise FieldMismatchError(f"element of Q(sqrt({x.d})) vs ring with d={self.d}")
        if self.variant is RingVariant.Z_SQRT_D:
            return x.a.denominator == 1 and x.b.denominator == 1
        p, q = 2 * x.a, 2 * x.b
        return (
            p.denominator == 1
            and q.denominator == 1
            and (p.numerator - q.numerator) % 2 == 0
        )

    def fundamental_elements(self) -> Tuple[QuadNum, QuadNum]:
        """A Z-basis (1, omega) of the ring."""
        one = QuadNum(1, 0, self.d)
        if self.variant is RingVariant.Z_SQRT_D:
            return one, QuadNum(0, 1, self.d)
        return one, QuadNum(Fraction(1, 2), Fraction(1, 2), self.d)


def in_ring(x: QuadNum, ring: RingSpec) -> bool:
    return ring.contains(x)


def _as_fraction_interval(iv: Interval, what: str) -> Tuple[Fraction, Fraction]:
    lo, hi = Fraction(iv[0]), Fraction(iv[1])
    if lo > hi:
        raise EmptyIntervalError(f"{what} interval [{lo}, {hi}] is empty")
    return lo, hi


def enumerate_ring_in_rectangle(
    ring: RingSpec, phys: Interval, internal: Interval
) -> list[QuadNum]:
    """All ring elements x with x in phys and conjugate(x) in internal,
    sorted ascending.

    Writing x = a + b*sqrt(d): a = (x + conj x)/2 and b*sqrt(d) = (x - conj x)/2,
    so both lie in intervals computable from the two inputs. Integer (or
    half-integer) candidates in those ranges are enumerated and filtered
    exactly; the candidate ranges make the result provably complete.
    """
    p1, p2 = _as_fraction_interval(phys, "physical")
    i1, i2 = _as_fraction_interval(internal, "internal")
    d = ring.d

    a_lo = (p1 + i1) / 2
    a_hi = (p2 + i2) / 2
    c_lo = (p1 - i2) / 2  # range of b*sqrt(d)
    c_hi = (p2 - i1) / 2
    bd_sq = max(c_lo * c_lo, c_hi * c_hi)  # (b*sqrt(d))^2 <= bd_sq

    out: list[QuadNum] = []
    if ring.variant is RingVariant.Z_SQRT_D:
        b_abs = floor_sqrt(bd_sq / d)
        for a in range(math.ceil(a_lo), math.floor(a_hi) + 1):
            for b in range(-b_abs, b_abs + 1):
                x = QuadNum(a, b, d)
                if p1 <= x <= p2 and i1 <= x.conjugate() <= i2:
                    out.append(x)
    else:
        # x = (p + q*sqrt(d))/2 with p = q (mod 2)
        q_abs = floor_sqrt(4 * bd_sq / d)
        for p in range(math.ceil(2 * a_lo), math.floor(2 * a_hi) + 1):
            for q in range(-q_abs, q_abs + 1):
                if (p - q) % 2 != 0:
                    continue
                x = QuadNum._mk(p, q, 2, d)
                if p1 <= x <= p2 and i1 <= x.conjugate() <= i2:
                    out.append(x)
    out.sort()
    return out


def serialize_quadnum(x: QuadNum) -> list[str]:
    """Four decimal strings [a_num, a_den, b_num, b_den]; d travels separately."""
    return [
        str(x.a.numerator),
        str(x.a.denominator),
        str(x.b.numerator),
        str(x.b.denominator),
    ]


def deserialize_quadnum(parts: Sequence[str], d: int) -> QuadNum:
    if len(parts) != 4:
        raise ValueError(f"expected 4 components, got {len(parts)}")
    a = Fraction(int(parts[0]), int(parts[1]))
    b = Fraction(int(parts[2]), int(parts[3]))
    return QuadNum(a, b, d)


def floor_div(value: QuadNum | Fraction | int, cell: Fraction) -> int:
    """floor(value / cell) for exact scalars, used for spatial bucketing."""
    if cell <= 0:
        raise ValueError("cell size must be positive")
    if isinstance(value, QuadNum):
        return math.floor(value * Fraction(cell.denominator, cell.numerator))
    return math.floor(Fraction(value) / cell)
