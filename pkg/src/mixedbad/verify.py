"""Post-hoc certification of game traces and surviving intervals.

Everything here re-derives its facts from the trace and the problem data
using only exact arithmetic and the dangerous-set enumeration; nothing is
trusted from the strategy that produced the play.  Decimal output is for
display only and never feeds back into a decision.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .arithmetic import (
    ExponentPair,
    Interval,
    dadic_norm,
    dist_point_interval,
    nearest_int_dist,
)
from .dangerous import (
    DangerousPoint,
    ProblemParams,
    WindowParams,
    danger_intersects,
    danger_radius_upper,
    enumerate_dangerous,
    window_denominator_range,
)
from .game import ALICE, BOB, GameParams, TraceRecord
from .strategy import StrategyConstants, burn_in_target, derive_constants


def verified_q_bound(max_window: int, wp: WindowParams, e: ExponentPair) -> int:
    """Largest denominator covered by windows 1..max_window."""
    if max_window < 1:
        raise ValueError("window count must be >= 1")
    _, q_hi = window_denominator_range(max_window, wp, e)
    return q_hi - 1


@dataclass
class AvoidanceReport:
    certified: bool
    q_bound: int
    window_counts: dict[int, int]
    failures: list[DangerousPoint] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "q_bound": str(self.q_bound),
            "windows": [{"k": k, "count": n} for k, n in sorted(self.window_counts.items())],
            "failures": [p.to_json() for p in self.failures],
        }


def verify_avoidance(
    final: Interval, max_window: int, pp: ProblemParams, wp: WindowParams
) -> AvoidanceReport:
    """Certify that final meets no danger interval from windows 1..max_window.

    Candidates are gathered from the interval padded by one danger-radius
    bound per window (so near misses are counted and reported), then each is
    tested exactly against the unpadded interval.  The window ranges are
    asserted to tile [1, q_bound] rather than assumed.
    """
    e = pp.exponents
    counts: dict[int, int] = {}
    failures: list[DangerousPoint] = []
    prev_hi = 1
    for k in range(1, max_window + 1):
        q_lo, q_hi = window_denominator_range(k, wp, e)
        if q_lo != prev_hi:
            raise AssertionError(f"window {k} does not abut window {k - 1}")
        prev_hi = q_hi
        pad = danger_radius_upper(q_lo, pp)
        candidates = enumerate_dangerous(k, final.padded(pad), pp, wp)
        counts[k] = len(candidates)
        failures.extend(p for p in candidates if danger_intersects(p, final, pp))
    return AvoidanceReport(
        certified=not failures,
        q_bound=verified_q_bound(max_window, wp, e),
        window_counts=counts,
        failures=failures,
    )


def mixed_badness_holds(x: Fraction, q: int, pp: ProblemParams) -> bool:
    """max(||q||^(1/i), ||qx||^(1/j)) > c/q, decided exactly at one scale q."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    e = pp.exponents
    threshold = pp.c / q
    if dadic_norm(q, pp.d) ** e.den > threshold ** e.i_num:
        return True
    return nearest_int_dist(q * x) ** e.den > threshold ** e.j_num


def _cmp_terms(
    q1: int, m1: Fraction, w1: Fraction, q2: int, m2: Fraction, w2: Fraction
) -> int:
    """Order of q1 * m1**w1 versus q2 * m2**w2 (all positive), exact."""
    b1, b2 = w1.denominator, w2.denominator
    n = b1 * b2 // gcd(b1, b2)  # both scaled exponents below are integers
    lhs = Fraction(q1) ** n * m1 ** (w1 * n).numerator
    rhs = Fraction(q2) ** n * m2 ** (w2 * n).numerator
    return (lhs > rhs) - (lhs < rhs)


def badness_profile(x: Fraction, q_max: int, pp: ProblemParams) -> tuple[float, int]:
    """Exact argmin over q <= q_max of q * max(||q||^(1/i), ||qx||^(1/j)).

    Returns (display value as a float, witness q).  Ties go to the smaller q.
    The argmin comparisons clear the fractional exponents by raising both
    candidates to a shared integer power; the float is display only.
    """
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    e = pp.exponents
    w_norm = Fraction(e.den, e.i_num)  # value = q * m ** w
    w_dist = Fraction(e.den, e.j_num)
    best: tuple[int, Fraction, Fraction] | None = None
    for q in range(1, q_max + 1):
        a = dadic_norm(q, pp.d)
        b = nearest_int_dist(q * x)
        # pick the larger of a^(1/i), b^(1/j); b = 0 settles it immediately
        if b == 0 or a ** (e.den * e.j_num) >= b ** (e.den * e.i_num):
            term = (q, a, w_norm)
        else:
            term = (q, b, w_dist)
        if best is None or _cmp_terms(*term, *best) < 0:
            best = term
    q_star, m, w = best
    return float(q_star) * float(m) ** float(w), q_star


@dataclass
class TraceCheck:
    name: str
    where: str
    status: str  # "pass" | "fail" | "not-evaluated"
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "where": self.where, "status": self.status, "detail": self.detail}


@dataclass
class TraceReport:
    checks: list[TraceCheck]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list[TraceCheck]:
        return [c for c in self.checks if c.status == "fail"]

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def _validate_structure(trace: Sequence[TraceRecord]) -> None:
    if not trace:
        raise ValueError("empty trace")
    for idx, rec in enumerate(trace):
        mover = BOB if idx % 2 == 0 else ALICE
        round_no = idx // 2 + 1
        if rec.mover != mover or rec.round != round_no:
            raise ValueError(
                f"trace record {idx} out of order: expected round {round_no} {mover}, "
                f"got round {rec.round} {rec.mover}"
            )


def locate_freeze(bobs: Sequence[Interval], gp: GameParams, e: ExponentPair) -> Optional[int]:
    """Index into bobs of the first interval small enough to fix constants."""
    target = burn_in_target(gp, e)
    for idx, interval in enumerate(bobs):
        if interval.radius <= target:
            return idx
    return None


def constants_from_trace(
    trace: Sequence[TraceRecord], gp: GameParams, e: ExponentPair
) -> tuple[StrategyConstants, int]:
    """Re-derive the constants a canonical run fixed at its burn-in freeze."""
    _validate_structure(trace)
    bobs = [rec.interval for rec in trace if rec.mover == BOB]
    idx = locate_freeze(bobs, gp, e)
    if idx is None:
        raise ValueError("trace never reaches the burn-in radius target")
    return derive_constants(gp, e, bobs[idx].radius), idx


def check_trace(
    trace: Sequence[TraceRecord], gp: GameParams, pp: ProblemParams, wp: WindowParams
) -> TraceReport:
    """Re-validate a trace from scratch: move legality every round, the
    radius law, and the block facts (single dangerous point, post-block
    avoidance, dodge distance), each as an exact check with witnesses.

    Blocks cut short by the end of the trace are reported not-evaluated.
    """
    _validate_structure(trace)
    checks: list[TraceCheck] = []
    params_ok = True
    for idx in range(1, len(trace)):
        parent, rec = trace[idx - 1].interval, trace[idx]
        where = f"round {rec.round} {rec.mover}"
        if not parent.contains_interval(rec.interval):
            checks.append(TraceCheck("nesting", where, "fail", f"{rec.interval} not in {parent}"))
            params_ok = False
            continue
        ratio = gp.alpha if rec.mover == ALICE else gp.beta
        expected = ratio * parent.radius
        if rec.interval.radius != expected:
            checks.append(
                TraceCheck(
                    "radius-law",
                    where,
                    "fail",
                    f"radius {rec.interval.radius} != expected {expected}",
                )
            )
            params_ok = False
    if params_ok:
        checks.append(TraceCheck("rounds", "all", "pass", f"{len(trace)} records"))
    bobs = [rec.interval for rec in trace if rec.mover == BOB]
    # composed law rho(B_m) = (alpha beta)^(m-1) rho(B_1)
    if params_ok:
        rho1 = bobs[0].radius
        for m, interval in enumerate(bobs):
            if interval.radius != gp.shrink ** m * rho1:
                checks.append(
                    TraceCheck("radius-power-law", f"round {m + 1} bob", "fail", "")
                )
                params_ok = False
    freeze = locate_freeze(bobs, gp, pp.exponents)
    if freeze is None:
        checks.append(TraceCheck("blocks", "all", "not-evaluated", "burn-in never completed"))
        return TraceReport(checks)
    t = wp.t
    k = 0
    while True:
        k += 1
        head_idx = freeze + t * (k - 1)
        end_idx = freeze + t * k
        if head_idx >= len(bobs):
            break
        head = bobs[head_idx]
        where = f"block {k}"
        points = enumerate_dangerous(k, head, pp, wp)
        if len(points) > 1:
            checks.append(
                TraceCheck("single-danger", where, "fail", f"{len(points)} dangerous points: "
                           + ", ".join(str(p) for p in points))
            )
            continue
        checks.append(TraceCheck("single-danger", where, "pass", f"{len(points)} dangerous point(s)"))
        if not points:
            continue
        point = points[0]
        if end_idx >= len(bobs):
            checks.append(TraceCheck("block-avoidance", where, "not-evaluated", "trace ends mid-block"))
            checks.append(TraceCheck("dodge-distance", where, "not-evaluated", ""))
            continue
        end = bobs[end_idx]
        if danger_intersects(point, end, pp):
            checks.append(
                TraceCheck("block-avoidance", where, "fail", f"danger interval of {point} meets {end}")
            )
        else:
            checks.append(TraceCheck("block-avoidance", where, "pass", f"dodged {point}"))
        threshold = gp.gamma / 2 * head.radius
        distance = dist_point_interval(point.point, end)
        if distance > threshold:
            checks.append(TraceCheck("dodge-distance", where, "pass", ""))
        else:
            checks.append(
                TraceCheck(
                    "dodge-distance",
                    where,
                    "fail",
                    f"dist {distance} <= gamma/2 * rho = {threshold}",
                )
            )
    return TraceReport(checks)

