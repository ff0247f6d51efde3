"""Exact scalar and interval arithmetic.

Everything downstream (dangerous-set enumeration, game legality, trace
certification) reduces to comparisons of integer powers of rationals, so this
module keeps every value a `fractions.Fraction` and never lets a float into a
decision. Floats appear only in display helpers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator

# Ordering results of cmp_pow and friends.
LT, EQ, GT = -1, 0, 1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a "p/q" or bare-integer string into an exact Fraction."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational 'p/q' string: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_rational(x: Fraction) -> str:
    """Canonical "p/q" form, integers included (e.g. 4 -> "4/1")."""
    return f"{x.numerator}/{x.denominator}"


class DSequence:
    """A bounded integer sequence (d_k), d_k >= 2, stored as preperiod + period.

    The partial products D_0 = 1, D_n = d_1 * ... * d_n define the pseudo
    absolute value ||q|| = 1/D_n for the largest n with D_n | q.  The constant
    sequence (p, p, ...) gives the usual p-adic norm.
    """

    __slots__ = ("preperiod", "period")

    def __init__(self, preperiod=(), period=()):
        self.preperiod = tuple(int(d) for d in preperiod)
        self.period = tuple(int(d) for d in period)
        if not self.period:
            raise ValueError("period must be nonempty")
        for d in self.preperiod + self.period:
            if d < 2:
                raise ValueError(f"sequence entries must be >= 2, got {d}")

    def entry(self, k: int) -> int:
        """d_k for 1-indexed k."""
        if k < 1:
            raise ValueError("index starts at 1")
        if k <= len(self.preperiod):
            return self.preperiod[k - 1]
        return self.period[(k - len(self.preperiod) - 1) % len(self.period)]

    def partial_products(self) -> Iterator[tuple[int, int]]:
        """Yield (n, D_n) for n = 1, 2, ...; strictly increasing, unbounded."""
        prod = 1
        k = 1
        while True:
            prod *= self.entry(k)
            yield k, prod
            k += 1

    def partial_product(self, n: int) -> int:
        """D_n (D_0 = 1)."""
        prod = 1
        for k in range(1, n + 1):
            prod *= self.entry(k)
        return prod

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DSequence)
            and self.preperiod == other.preperiod
            and self.period == other.period
        )

    def __hash__(self) -> int:
        return hash((self.preperiod, self.period))

    def __repr__(self) -> str:
        return f"DSequence(preperiod={list(self.preperiod)}, period={list(self.period)})"

    def to_json(self) -> dict:
        return {"preperiod": list(self.preperiod), "period": list(self.period)}

    @classmethod
    def from_json(cls, obj: dict) -> "DSequence":
        return cls(obj.get("preperiod", ()), obj["period"])


def dpart(q: int, d: DSequence) -> int:
    """Largest partial product D_n dividing q (D_0 = 1 if none does).

    The divisor set {n : D_n | q} is downward closed because D_n | D_{n+1},
    so the scan stops at the first non-divisor.
    """
    if q < 1:
        raise ValueError(f"q must be a positive integer, got {q}")
    best = 1
    for _, dn in d.partial_products():
        if q % dn:
            break
        best = dn
    return best


def dadic_norm(q: int, d: DSequence) -> Fraction:
    """The pseudo absolute value ||q|| = 1/D_n with n maximal, D_n | q."""
    return Fraction(1, dpart(q, d))


def nearest_int_dist(x: Fraction) -> Fraction:
    """Distance from x to the nearest integer; always in [0, 1/2]."""
    frac = x - (x.numerator // x.denominator)
    return min(frac, 1 - frac)


def cmp_pow(a: Fraction, e: Fraction, b: Fraction) -> int:
    """Order of a**e versus b for positive rationals a, b and rational e.

    Decided exactly: a**(p/s) <> b iff a**p <> b**s (s >= 1), with negative p
    handled by inverting a, so only integer powers are ever formed.
    Returns LT, EQ or GT.
    """
    if a <= 0 or b <= 0:
        raise ValueError("cmp_pow requires positive base and comparand")
    p, s = e.numerator, e.denominator
    base = a if p >= 0 else 1 / a
    lhs = base ** abs(p)
    rhs = b ** s
    return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def radius(self) -> Fraction:
        return (self.hi - self.lo) / 2

    @property
    def center(self) -> Fraction:
        return (self.hi + self.lo) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def padded(self, delta: Fraction) -> "Interval":
        return Interval(self.lo - delta, self.hi + delta)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}

    @classmethod
    def from_json(cls, obj: dict) -> "Interval":
        return cls(parse_rational(obj["lo"]), parse_rational(obj["hi"]))


def dist_point_interval(y: Fraction, interval: Interval) -> Fraction:
    """0 if y lies in the interval, otherwise the distance to the near endpoint."""
    if y < interval.lo:
        return interval.lo - y
    if y > interval.hi:
        return y - interval.hi
    return Fraction(0)


def inscribed_interval(parent: Interval, ratio: Fraction, position: Fraction) -> Interval:
    """Sub-interval of radius ratio * radius(parent), slid by position.

    position 0 pins the left endpoints together, 1 the right endpoints,
    linear in between. Exact: the result has the requested radius and is
    contained in parent.
    """
    if not 0 < ratio < 1:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    if not 0 <= position <= 1:
        raise ValueError(f"position must lie in [0, 1], got {position}")
    slack = (1 - ratio) * parent.length
    lo = parent.lo + position * slack
    return Interval(lo, lo + ratio * parent.length)


def convergent_denominators(x: Fraction, bound: int) -> list[int]:
    """Denominators <= bound of the continued-fraction convergents of x.

    Rational input means a finite expansion; the returned list is strictly
    ascending and always starts with 1.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    num, den = x.numerator, x.denominator
    q_prev, q_cur = 0, 1  # q_{-1}, q_0
    out = [1]
    # Euclid's algorithm drives the continued-fraction coefficients.
    a = num // den
    num, den = den, num - a * den
    while den:
        a = num // den
        num, den = den, num - a * den
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_cur > bound:
            break
        if q_cur != out[-1]:
            out.append(q_cur)
    return out


def floor_kth_root(n: int, k: int) -> int:
    """Largest r >= 0 with r**k <= n (n >= 0, k >= 1), by integer Newton."""
    if n < 0 or k < 1:
        raise ValueError("floor_kth_root needs n >= 0, k >= 1")
    if n == 0:
        return 0
    if k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)  # power of two at or above the root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def largest_int_power_below(value: Fraction, k: int, strict: bool) -> int:
    """Largest q >= 0 with q**k < value (strict) or q**k <= value."""
    if value <= 0:
        raise ValueError("value must be positive")
    q = floor_kth_root(value.numerator // value.denominator, k)
    while Fraction(q + 1) ** k < value or (not strict and Fraction(q + 1) ** k == value):
        q += 1
    while q > 0 and (Fraction(q) ** k > value or (strict and Fraction(q) ** k == value)):
        q -= 1
    return q


def smallest_int_power_at_least(value: Fraction, k: int) -> int:
    """Smallest q >= 1 with q**k >= value."""
    return max(1, largest_int_power_below(value, k, strict=True) + 1)


def _pow2_at_least(e: int, num: int, den: int) -> bool:
    """2**e >= num/den, exactly, for any integer e."""
    if e >= 0:
        return (den << e) >= num
    return den >= (num << -e)


def ceil_log2(value: Fraction) -> int:
    """Smallest integer e with 2**e >= value > 0."""
    if value <= 0:
        raise ValueError("value must be positive")
    num, den = value.numerator, value.denominator
    e = num.bit_length() - den.bit_length() - 1
    while not _pow2_at_least(e, num, den):
        e += 1
    while _pow2_at_least(e - 1, num, den):
        e -= 1
    return e


def pow2_upper_bound(value: Fraction, k: int) -> Fraction:
    """Smallest power of two w (integer exponent) with w**k >= value > 0.

    Used to round an irrational k-th root outward without floating point.
    Minimality: with E = ceil_log2(value) and e = ceil(E/k), (e-1)k <= E-1,
    so the next smaller power of two already fails.
    """
    e = -(-ceil_log2(value) // k)
    return Fraction(2) ** e


@dataclass(frozen=True)
class ExponentPair:
    """Exponents i = i_num/den and j = j_num/den with i + j = 1 exact.

    Restricting to a shared denominator turns every fractional-power
    inequality downstream into an integer-power comparison.
    """

    i_num: int
    j_num: int
    den: int

    def __post_init__(self):
        if self.den < 1 or not (0 < self.i_num < self.den) or not (0 < self.j_num < self.den):
            raise ValueError("exponents must satisfy 0 < i, j < 1")
        if self.i_num + self.j_num != self.den:
            raise ValueError("exponents must satisfy i + j = 1 exactly")

    @property
    def i(self) -> Fraction:
        return Fraction(self.i_num, self.den)

    @property
    def j(self) -> Fraction:
        return Fraction(self.j_num, self.den)

    @classmethod
    def from_fractions(cls, i: Fraction, j: Fraction) -> "ExponentPair":
        if i + j != 1:
            raise ValueError(f"i + j must equal 1, got {i} + {j}")
        den = i.denominator * j.denominator // gcd(i.denominator, j.denominator)
        return cls(i.numerator * (den // i.denominator), j.numerator * (den // j.denominator), den)
