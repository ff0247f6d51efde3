"""Dangerous rationals and their danger intervals.

A denominator q is dangerous when its pseudo absolute value is small enough
relative to (c/q)^i; the reduced fractions r/q then carry a danger interval
of radius c^j / q^(1+j) that winning play must avoid.  Denominators are
partitioned into geometric windows indexed by k, the unit of block play.

The danger radius is irrational in general, so danger intervals are never
materialized; every query goes through an exact integer-power comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arithmetic import (
    DSequence,
    ExponentPair,
    Interval,
    dadic_norm,
    dist_point_interval,
    pow2_upper_bound,
    smallest_int_power_at_least,
)


@dataclass(frozen=True)
class ProblemParams:
    """Fixed data of one avoidance problem: exponents, sequence, constant c."""

    exponents: ExponentPair
    d: DSequence
    c: Fraction

    def __post_init__(self):
        if not 0 < self.c < 1:
            raise ValueError(f"c must lie in (0, 1), got {self.c}")


@dataclass(frozen=True)
class WindowParams:
    """Window growth factor R > 1 and rounds-per-block t."""

    R: Fraction
    t: int

    def __post_init__(self):
        if self.R <= 1:
            raise ValueError(f"R must exceed 1, got {self.R}")
        if self.t < 1:
            raise ValueError(f"t must be a positive integer, got {self.t}")


@dataclass(frozen=True)
class DangerousPoint:
    """A reduced fraction r/q with dangerous denominator, tagged by window."""

    r: int
    q: int
    k: int

    def __post_init__(self):
        if self.q < 2 or gcd(self.r, self.q) != 1:
            raise ValueError(f"{self.r}/{self.q} is not a reduced fraction with q >= 2")
        if self.k < 1:
            raise ValueError("window index starts at 1")

    @property
    def point(self) -> Fraction:
        return Fraction(self.r, self.q)

    def to_json(self) -> dict:
        return {"r": str(self.r), "q": str(self.q), "k": self.k}

    @classmethod
    def from_json(cls, obj: dict) -> "DangerousPoint":
        return cls(int(obj["r"]), int(obj["q"]), int(obj["k"]))

    def __str__(self) -> str:
        return f"{self.r}/{self.q}@{self.k}"


def is_dangerous_denominator(q: int, pp: ProblemParams) -> bool:
    """||q|| <= (c/q)^i, decided as ||q||^den <= (c/q)^i_num."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    e = pp.exponents
    return dadic_norm(q, pp.d) ** e.den <= (pp.c / q) ** e.i_num


def window_index(q: int, wp: WindowParams, e: ExponentPair) -> int:
    """The unique k >= 1 with R^(k-1) <= q^((1+j)/t) < R^k.

    Integer-power form: R^((k-1) t den) <= q^(den + j_num) < R^(k t den).
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    qe = Fraction(q) ** (e.den + e.j_num)
    step = wp.R ** (wp.t * e.den)
    k, ceiling = 1, step
    while qe >= ceiling:
        ceiling *= step
        k += 1
    return k


def window_denominator_range(k: int, wp: WindowParams, e: ExponentPair) -> tuple[int, int]:
    """Half-open integer range [q_lo, q_hi) of denominators in window k."""
    if k < 1:
        raise ValueError("window index starts at 1")
    exp = e.den + e.j_num
    step = wp.R ** (wp.t * e.den)
    q_lo = 1 if k == 1 else smallest_int_power_at_least(step ** (k - 1), exp)
    q_hi = smallest_int_power_at_least(step ** k, exp)
    return q_lo, q_hi


def danger_intersects(p: DangerousPoint, interval: Interval, pp: ProblemParams) -> bool:
    """Whether the danger interval of p meets the given interval.

    dist(r/q, I) <= c^j / q^(1+j), decided as
    dist^den * q^(den + j_num) <= c^j_num.
    """
    e = pp.exponents
    d = dist_point_interval(p.point, interval)
    return d ** e.den * Fraction(p.q) ** (e.den + e.j_num) <= pp.c ** e.j_num


def danger_radius_upper(q: int, pp: ProblemParams) -> Fraction:
    """Power-of-two upper bound on the danger radius c^j / q^(1+j)."""
    e = pp.exponents
    return pow2_upper_bound(pp.c ** e.j_num / Fraction(q) ** (e.den + e.j_num), e.den)


def _max_denominator_for_dpart(dn: int, pp: ProblemParams) -> int:
    """Largest q with D-part dn that still satisfies the danger condition.

    For q with dpart(q) = dn the condition reads (1/dn)^den <= (c/q)^i_num,
    i.e. q^i_num <= c^i_num * dn^den; monotone in q.
    """
    e = pp.exponents
    bound = pp.c ** e.i_num * Fraction(dn) ** e.den
    # floor of bound^(1/i_num)
    q = smallest_int_power_at_least(bound, e.i_num)
    if Fraction(q) ** e.i_num > bound:
        q -= 1
    return q


def dangerous_denominators(q_lo: int, q_hi: int, pp: ProblemParams) -> list[int]:
    """All dangerous denominators in [q_lo, q_hi), ascending.

    Walks the partial products D_n; for each, takes multiples q = D_n * u with
    the next entry d_{n+1} not dividing u (so the D-part is exactly D_n) and
    q small enough for the danger condition.
    """
    found = []
    for n, dn in pp.d.partial_products():
        if dn >= q_hi:
            break
        top = min(q_hi - 1, _max_denominator_for_dpart(dn, pp))
        if top < dn:
            continue
        d_next = pp.d.entry(n + 1)
        u_lo = max(1, -(-q_lo // dn))
        for u in range(u_lo, top // dn + 1):
            if u % d_next:
                found.append(dn * u)
    found.sort()
    return found


def _candidate_numerators(q: int, interval: Interval, pp: ProblemParams) -> range:
    """Numerators r whose fraction r/q could have a danger interval meeting I.

    The interval is widened by a power-of-two upper bound on the danger
    radius, so no true candidate is missed; a handful of extras are filtered
    by the exact test afterwards.
    """
    pad = danger_radius_upper(q, pp)
    lo = interval.lo - pad
    hi = interval.hi + pad
    r_lo = -((-lo.numerator * q) // lo.denominator)  # ceil(q * lo)
    r_hi = (hi.numerator * q) // hi.denominator  # floor(q * hi)
    return range(r_lo, r_hi + 1)


def enumerate_dangerous(
    k: int, interval: Interval, pp: ProblemParams, wp: WindowParams
) -> list[DangerousPoint]:
    """Exactly the window-k dangerous points whose danger interval meets I.

    Sorted by (q, r).  The global family is infinite (all integer
    translates), so enumeration is always against a caller-supplied interval.
    """
    q_lo, q_hi = window_denominator_range(k, wp, e=pp.exponents)
    out = []
    for q in dangerous_denominators(q_lo, q_hi, pp):
        for r in _candidate_numerators(q, interval, pp):
            if gcd(r, q) != 1:
                continue
            p = DangerousPoint(r, q, k)
            if danger_intersects(p, interval, pp):
                out.append(p)
    out.sort(key=lambda p: (p.q, p.r))
    return out


def separation_bound_power(
    k: int, pp: ProblemParams, wp: WindowParams
) -> tuple[int, Fraction]:
    """(exponent m, value B) such that distinct window-k points P1, P2 obey
    |P1 - P2|**m > B, the integer-power form of the pairwise separation bound
    c^-i * R^(i/(1+j) t (k-1) - 2tk/(1+j)).

    m = den * (den + j_num) clears both fractional exponents at once.
    """
    e = pp.exponents
    m = e.den * (e.den + e.j_num)
    num_exp = e.i_num * wp.t * (k - 1) - 2 * wp.t * k * e.den
    bound = pp.c ** (-e.i_num * (e.den + e.j_num)) * wp.R ** (num_exp * e.den)
    return m, bound


def separation_ok(k: int, interval: Interval, pp: ProblemParams, wp: WindowParams) -> bool:
    """Pairwise separation of window-k points near I, checked exactly.

    The points meeting I padded by one danger-radius bound are sorted by
    value; the minimum pairwise gap of points on a line is attained by an
    adjacent pair, so only those are compared against the bound.
    """
    q_lo, _ = window_denominator_range(k, wp, e=pp.exponents)
    pad = danger_radius_upper(q_lo, pp)
    points = enumerate_dangerous(k, interval.padded(pad), pp, wp)
    if len(points) <= 1:
        return True
    m, bound = separation_bound_power(k, pp, wp)
    values = sorted(p.point for p in points)
    for left, right in zip(values, values[1:]):
        if (right - left) ** m <= bound:
            return False
    return True

