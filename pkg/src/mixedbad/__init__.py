"""Exact Schmidt-game engine with certified winning play for mixed badly
approximable numbers."""

from .arithmetic import (
    DSequence,
    ExponentPair,
    Interval,
    cmp_pow,
    convergent_denominators,
    dadic_norm,
    dist_point_interval,
    format_rational,
    inscribed_interval,
    nearest_int_dist,
    parse_rational,
)
from .dangerous import (
    DangerousPoint,
    ProblemParams,
    WindowParams,
    danger_intersects,
    enumerate_dangerous,
    is_dangerous_denominator,
    separation_ok,
    window_index,
)
from .game import GameParams, GameState, IllegalMoveError, TraceRecord, apply_move, new_game, run
from .strategy import (
    NotAdmissibleError,
    StrategyConstants,
    StrategyContradictionError,
    derive_constants,
    dodge_move,
    interleave,
    make_bob,
    mixed_bad_alice,
)
from .verify import badness_profile, check_trace, verified_q_bound, verify_avoidance

__all__ = [
    "DSequence",
    "ExponentPair",
    "Interval",
    "cmp_pow",
    "convergent_denominators",
    "dadic_norm",
    "dist_point_interval",
    "format_rational",
    "inscribed_interval",
    "nearest_int_dist",
    "parse_rational",
    "DangerousPoint",
    "ProblemParams",
    "WindowParams",
    "danger_intersects",
    "enumerate_dangerous",
    "is_dangerous_denominator",
    "separation_ok",
    "window_index",
    "GameParams",
    "GameState",
    "IllegalMoveError",
    "TraceRecord",
    "apply_move",
    "new_game",
    "run",
    "NotAdmissibleError",
    "StrategyConstants",
    "StrategyContradictionError",
    "derive_constants",
    "dodge_move",
    "interleave",
    "make_bob",
    "mixed_bad_alice",
    "badness_profile",
    "check_trace",
    "verified_q_bound",
    "verify_avoidance",
]
