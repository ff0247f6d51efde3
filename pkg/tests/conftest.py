from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "det", derandomize=True, deadline=None, suppress_health_check=list(HealthCheck)
)
settings.load_profile("det")

from mixedbad.arithmetic import DSequence, ExponentPair, Interval
from mixedbad.dangerous import ProblemParams, WindowParams
from mixedbad.game import GameParams, TraceRecord, run
from mixedbad.strategy import (
    MixedBadAlice,
    NearestDangerousTarget,
    burn_in_exchanges,
    derive_constants,
    make_bob,
    mixed_bad_alice,
)

# Reference setup used across the suite: alpha = beta = 1/2, i = j = 1/2,
# the 2-adic sequence, and Bob opening with [0, 1/8] (rho_1 = 1/16, c = 2^-15).
REF_GP = GameParams(Fraction(1, 2), Fraction(1, 2))
REF_E = ExponentPair.from_fractions(Fraction(1, 2), Fraction(1, 2))
REF_D = DSequence(period=[2])
REF_B1 = Interval(Fraction(0), Fraction(1, 8))
REF_BLOCKS = 8


@pytest.fixture(scope="session")
def ref_constants():
    return derive_constants(REF_GP, REF_E, REF_B1.radius)


@pytest.fixture(scope="session")
def ref_problem(ref_constants):
    pp = ProblemParams(REF_E, REF_D, ref_constants.c)
    wp = WindowParams(R=ref_constants.R, t=ref_constants.t)
    return pp, wp


@dataclass
class RefRun:
    name: str
    final: Interval
    trace: list[TraceRecord]
    alice: MixedBadAlice


def play_reference(bob, name: str) -> RefRun:
    alice = mixed_bad_alice(REF_GP, REF_E, REF_D)
    rounds = burn_in_exchanges(REF_B1.radius, REF_GP, REF_E) + REF_BLOCKS * alice.window_params.t
    final, trace = run(REF_GP, REF_B1, alice, bob, rounds)
    return RefRun(name, final, trace, alice)


@pytest.fixture(scope="session")
def reference_runs(ref_problem):
    """The acceptance fleet: 100 seeded random Bobs plus the deterministic three."""
    pp, wp = ref_problem
    runs = [
        play_reference(make_bob("centered"), "centered"),
        play_reference(make_bob("leftmost"), "leftmost"),
        play_reference(
            make_bob("chase", target=NearestDangerousTarget(pp, wp, REF_BLOCKS)), "chase"
        ),
    ]
    for seed in range(100):
        runs.append(play_reference(make_bob("random", seed=seed), f"random-{seed}"))
    return runs
