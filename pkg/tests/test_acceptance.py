"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every expected value below was fixed from an independent oracle
(brute-force scan, exhaustive minimax, integer-power comparison or 200-bit
floating point) before the implementation was trusted.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

import mpmath
import pytest

from mixedbad.arithmetic import (
    DSequence,
    ExponentPair,
    Interval,
    convergent_denominators,
    dadic_norm,
    dist_point_interval,
    dpart,
    inscribed_interval,
    nearest_int_dist,
)
from mixedbad.dangerous import (
    DangerousPoint,
    danger_intersects,
    enumerate_dangerous,
    is_dangerous_denominator,
    separation_bound_power,
    window_index,
)
from mixedbad.game import (
    GameParams,
    IllegalMoveError,
    apply_move,
    new_game,
    run,
    trace_to_lines,
)
from mixedbad.strategy import (
    NearestDangerousTarget,
    burn_in_exchanges,
    derive_constants,
    dodge_move,
    interleave,
    make_bob,
    mixed_bad_alice,
)
from mixedbad.verify import badness_profile, verified_q_bound, verify_avoidance

from conftest import REF_B1, REF_BLOCKS, REF_D, REF_E, REF_GP

UNIT = Interval(Fraction(0), Fraction(1))


def report(num: int, label: str, ok: bool, elapsed: float, budget: float) -> None:
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"criterion {num} ({label}): {status}  [{elapsed:.2f}s of {budget:.0f}s budget]")
    assert ok, f"criterion {num} failed"
    assert elapsed < budget, f"criterion {num} exceeded its {budget}s budget"


@dataclass
class FleetRun:
    name: str
    final: Interval
    trace: list
    alice: object
    elapsed: float


@pytest.fixture(scope="module")
def fleet(ref_problem):
    """Criterion 2's fleet, timed per run: 100 seeded random Bobs plus the
    deterministic three, reference parameters, 8 blocks each."""
    pp, wp = ref_problem
    bobs = [
        ("centered", make_bob("centered")),
        ("leftmost", make_bob("leftmost")),
        ("chase", make_bob("chase", target=NearestDangerousTarget(pp, wp, REF_BLOCKS))),
    ] + [(f"random-{seed}", make_bob("random", seed=seed)) for seed in range(100)]
    runs = []
    for name, bob in bobs:
        alice = mixed_bad_alice(REF_GP, REF_E, REF_D)
        rounds = burn_in_exchanges(REF_B1.radius, REF_GP, REF_E) + REF_BLOCKS * alice.window_params.t
        started = time.perf_counter()
        final, trace = run(REF_GP, REF_B1, alice, bob, rounds)
        runs.append(FleetRun(name, final, trace, alice, time.perf_counter() - started))
    return runs


def test_criterion_1_constants_reproduction():
    started = time.perf_counter()
    consts = derive_constants(REF_GP, REF_E, Fraction(1, 16))
    ok = (
        consts.R == Fraction(4)
        and consts.t == 2
        and consts.rho1 == Fraction(1, 16)
        and consts.c == Fraction(1, 2 ** 15)
        and not consts.needs_burn_in
    )
    # each bound re-verified as an integer-power comparison
    ok = ok and REF_GP.shrink ** 2 < REF_GP.gamma / 2 <= REF_GP.shrink ** 1
    ok = ok and consts.rho1 ** 6 < Fraction(1, 4) ** 3 * Fraction(4) ** -8
    ok = ok and consts.c ** 1 < (REF_GP.gamma * consts.rho1 / 2) ** 2
    ok = ok and Fraction(2) * consts.c >= (REF_GP.gamma * consts.rho1 / 2) ** 2
    report(1, "constants reproduction", ok, time.perf_counter() - started, 1.0)


def test_criterion_2_single_danger_suite(fleet):
    # a multiple-danger block raises StrategyContradictionError inside run(), so
    # arriving here with 103 completed 8-block runs is the criterion; the
    # block log is re-asserted for explicitness
    elapsed = sum(r.elapsed for r in fleet)
    ok = len(fleet) == 103
    for r in fleet:
        ok = ok and r.alice.block == REF_BLOCKS
        ok = ok and len(r.alice.blocks_seen) == REF_BLOCKS
        ok = ok and all(point is None or point.k == k for k, point in r.alice.blocks_seen)
    report(2, "single dangerous point over 103 adversaries x 8 blocks", ok, elapsed, 300.0)


def test_criterion_3_avoidance_certification(fleet):
    started = time.perf_counter()
    ok = True
    worst = 0.0
    for r in fleet:
        t0 = time.perf_counter()
        rep = verify_avoidance(r.final, REF_BLOCKS, r.alice.problem_params, r.alice.window_params)
        worst = max(worst, time.perf_counter() - t0)
        ok = ok and rep.certified
        ok = ok and rep.q_bound == verified_q_bound(REF_BLOCKS, r.alice.window_params, REF_E)
        ok = ok and all(rep.window_counts[k] == 0 for k in range(1, 6))
    ok = ok and worst < 60.0
    report(3, "avoidance certificates for every run", ok, time.perf_counter() - started, 60.0 * len(fleet))


def _extremal_minimax(box: Interval, y: Fraction, gp: GameParams, t: int) -> Fraction:
    worst = None
    for slides in product((Fraction(0), Fraction(1)), repeat=t):
        current = box
        for pos in slides:
            current = inscribed_interval(dodge_move(current, y, gp.alpha), gp.beta, pos)
        d = dist_point_interval(y, current)
        worst = d if worst is None or d < worst else worst
    return worst


class _DodgeAlice:
    def __init__(self, y):
        self.y = y

    def __call__(self, state):
        return dodge_move(state.last_interval, self.y, state.params.alpha)


def test_criterion_4_dodge_suite():
    started = time.perf_counter()
    gp = REF_GP  # gamma = 1/4, t = 2
    t = 2
    ok = True
    rng = random.Random(20240)
    for case in range(1000):
        lo = Fraction(rng.randrange(-2 ** 16, 2 ** 16), 2 ** rng.randrange(0, 12))
        rho = Fraction(rng.randrange(1, 2 ** 14), 2 ** 14)
        box = Interval(lo, lo + 2 * rho)
        y = box.lo + Fraction(rng.randrange(-2 ** 9, 3 * 2 ** 9), 2 ** 10) * box.length
        threshold = gp.gamma / 2 * box.radius
        ok = ok and _extremal_minimax(box, y, gp, t) > threshold
        if case % 10 == 0:  # engine-level adversaries on a tenth of the cases
            for bob in (
                make_bob("centered"),
                make_bob("leftmost"),
                make_bob("random", seed=case),
                make_bob("chase", target=y),
            ):
                final, _ = run(gp, box, _DodgeAlice(y), bob, t)
                ok = ok and dist_point_interval(y, final) > threshold
    # the worked instance: worst case lands in [1/4, 3/8] at distance 1/8
    y = Fraction(1, 2)
    ok = ok and _extremal_minimax(UNIT, y, gp, t) == Fraction(1, 8)
    worst_leaf = inscribed_interval(dodge_move(UNIT, y, gp.alpha), gp.beta, Fraction(1))
    worst_leaf = inscribed_interval(dodge_move(worst_leaf, y, gp.alpha), gp.beta, Fraction(1))
    ok = ok and Interval(Fraction(1, 4), Fraction(3, 8)).contains_interval(worst_leaf)
    ok = ok and Fraction(1, 8) > REF_GP.gamma / 2 * UNIT.radius
    report(4, "dodge distance, minimax and stock bobs", ok, time.perf_counter() - started, 30.0)


def test_criterion_5_separation_suite(ref_problem):
    started = time.perf_counter()
    pp, wp = ref_problem
    ok = True

    points = enumerate_dangerous(6, UNIT, pp, wp)
    ok = ok and len(points) == 2 ** 14

    # naive scan over every q < 2^16 and every reduced numerator
    brute = []
    for q in range(2, 2 ** 16):
        if not is_dangerous_denominator(q, pp):
            continue
        if window_index(q, wp, REF_E) != 6:
            continue
        for r in range(-1, q + 2):
            if gcd(r, q) == 1 and danger_intersects(DangerousPoint(r, q, 6), UNIT, pp):
                brute.append((r, q))
    ok = ok and [(p.r, p.q) for p in points] == brute

    # every distinct pair respects the separation bound, exactly; sorted
    # adjacency suffices since the minimal gap on a line is adjacent
    m, bound = separation_bound_power(6, pp, wp)
    ok = ok and bound == Fraction(1, 2 ** 107)
    values = sorted(p.point for p in points)
    ok = ok and all((b - a) ** m > bound for a, b in zip(values, values[1:]))

    # gcd of any two enumerated denominators is at least the smaller D-part
    qs = sorted({p.q for p in points})
    for q1 in qs:
        for q2 in qs:
            ok = ok and gcd(q1, q2) >= min(dpart(q1, REF_D), dpart(q2, REF_D))
    report(5, "separation against brute force, window 6", ok, time.perf_counter() - started, 60.0)


def test_criterion_6_two_family_interleaving():
    started = time.perf_counter()
    gp = REF_GP
    view = GameParams(gp.alpha, gp.alpha * gp.beta ** 2)
    ok = view.beta == Fraction(1, 8) and view.gamma == Fraction(1, 16) and view.admissible

    e1, d1 = REF_E, REF_D
    e2, d2 = ExponentPair.from_fractions(Fraction(1, 3), Fraction(2, 3)), DSequence(period=[3])
    s1 = mixed_bad_alice(view, e1, d1)
    s2 = mixed_bad_alice(view, e2, d2)
    blocks = 4
    b1 = UNIT
    m1 = burn_in_exchanges(b1.radius, view, e1)
    m2 = burn_in_exchanges(b1.radius * gp.shrink, view, e2)
    rounds = max(
        2 * (m1 + blocks * s1.window_params.t) - 1,
        2 * (m2 + blocks * s2.window_params.t),
    )
    final, trace = run(gp, b1, interleave(s1, s2), make_bob("random", seed=11), rounds)
    for sub in (s1, s2):
        ok = ok and len(sub.blocks_seen) >= blocks
        rep = verify_avoidance(final, blocks, sub.problem_params, sub.window_params)
        ok = ok and rep.certified
    report(6, "two-family interleaved demo", ok, time.perf_counter() - started, 300.0)


def test_criterion_7_engine_exactness(fleet):
    started = time.perf_counter()
    rng = random.Random(64)
    gp = REF_GP
    ok = True
    rejected = 0
    probes = 10 ** 4
    for _ in range(probes):
        lo = Fraction(rng.randrange(-2 ** 20, 2 ** 20), 2 ** rng.randrange(0, 16))
        length = Fraction(rng.randrange(1, 2 ** 16), 2 ** 16)
        state = new_game(gp, Interval(lo, lo + length))
        position = Fraction(rng.randrange(0, 2 ** 16 + 1), 2 ** 16)
        legal = inscribed_interval(state.last_interval, gp.alpha, position)
        delta = Fraction(rng.randrange(1, 2 ** 32), 2 ** 64)  # magnitude >= 2^-64
        style = rng.randrange(3)
        if style == 0:  # radius perturbation outward or inward
            sign = rng.choice((-1, 1))
            bad = Interval(legal.lo, min(legal.hi + sign * delta, state.last_interval.hi))
            if bad.hi == legal.hi:
                bad = Interval(legal.lo + delta, legal.hi)
        elif style == 1:  # slide the leftmost move out the left edge
            base = inscribed_interval(state.last_interval, gp.alpha, Fraction(0))
            bad = Interval(base.lo - delta, base.hi - delta)
        else:  # slide the rightmost move out the right edge
            base = inscribed_interval(state.last_interval, gp.alpha, Fraction(1))
            bad = Interval(base.lo + delta, base.hi + delta)
        try:
            apply_move(state, bad)
        except IllegalMoveError:
            rejected += 1
        # and the untouched legal move is accepted
        apply_move(state, legal)
    ok = ok and rejected == probes

    # replay determinism, bit for bit, including the serialized trace
    chase_target = NearestDangerousTarget(
        fleet[2].alice.problem_params, fleet[2].alice.window_params, REF_BLOCKS
    )
    for make in (
        lambda: make_bob("random", seed=31337),
        lambda: make_bob("chase", target=chase_target),
    ):
        texts = []
        for _ in range(2):
            alice = mixed_bad_alice(REF_GP, REF_E, REF_D)
            _, trace = run(REF_GP, REF_B1, alice, make(), 16)
            texts.append(trace_to_lines(trace))
        ok = ok and texts[0] == texts[1]
    report(7, "engine exactness and replay", ok, time.perf_counter() - started, 60.0)


def test_criterion_8_cross_checks(ref_problem):
    started = time.perf_counter()
    pp, _ = ref_problem
    e = pp.exponents
    rng = random.Random(808)
    ok = True
    with mpmath.workprec(200):
        for _ in range(100):
            x = Fraction(rng.randrange(0, 10 ** 4), rng.randrange(1, 10 ** 4))
            bound = 10 ** 3
            _, witness = badness_profile(x, bound, pp)

            best_q, best_val = None, None
            for q in range(1, bound + 1):
                a = dadic_norm(q, pp.d)
                b = nearest_int_dist(q * x)
                val = q * max(
                    (mpmath.mpf(a.numerator) / a.denominator) ** 2,
                    (mpmath.mpf(b.numerator) / b.denominator) ** 2,
                )
                if best_val is None or val < best_val:
                    best_q, best_val = q, val
            if witness != best_q:
                # tolerate only an exact tie between the two candidates
                va = max(dadic_norm(witness, pp.d) ** 4, nearest_int_dist(witness * x) ** 4) * witness ** 2
                vb = max(dadic_norm(best_q, pp.d) ** 4, nearest_int_dist(best_q * x) ** 4) * best_q ** 2
                ok = ok and va == vb

            # the pure distance term: minimizer of q * ||q x|| is a convergent
            best_q, best_val = None, None
            for q in range(1, bound + 1):
                val = q * nearest_int_dist(q * x)
                if best_val is None or val < best_val:
                    best_q, best_val = q, val
            ok = ok and best_q in convergent_denominators(x, bound)
    report(8, "exact vs 200-bit scan and convergents", ok, time.perf_counter() - started, 60.0)
