"""The Schmidt (alpha, beta)-game state machine.

Bob opens with a closed interval; the players then alternate, Alice shrinking
the radius by exactly alpha, Bob by exactly beta, each move nested in the
last.  Radii are matched exactly, not approximately: any perturbed endpoint
is rejected, which is what makes traces certifiable after the fact.

Round numbering follows the interval subscripts: Bob's m-th interval and
Alice's m-th interval both carry round m.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .arithmetic import Interval, format_rational, parse_rational

BOB = "bob"
ALICE = "alice"


class IllegalMoveError(ValueError):
    """A proposed move broke containment or the exact radius law."""

    def __init__(self, kind: str, message: str, *, expected=None, actual=None, endpoint=None):
        super().__init__(message)
        self.kind = kind
        self.expected = expected
        self.actual = actual
        self.endpoint = endpoint
        self.trace: list[TraceRecord] | None = None


@dataclass(frozen=True)
class GameParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if not 0 < self.alpha < 1 or not 0 < self.beta < 1:
            raise ValueError("alpha and beta must lie in (0, 1)")

    @property
    def gamma(self) -> Fraction:
        return 1 - 2 * self.alpha + self.alpha * self.beta

    @property
    def admissible(self) -> bool:
        return self.gamma > 0

    @property
    def shrink(self) -> Fraction:
        """Radius factor of one full (Alice, Bob) exchange."""
        return self.alpha * self.beta


@dataclass(frozen=True)
class TraceRecord:
    round: int
    mover: str
    interval: Interval
    note: Optional[dict] = None

    def to_json(self) -> dict:
        obj = {
            "round": self.round,
            "mover": self.mover,
            "lo": format_rational(self.interval.lo),
            "hi": format_rational(self.interval.hi),
        }
        if self.note is not None:
            obj["note"] = self.note
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "TraceRecord":
        return cls(
            round=int(obj["round"]),
            mover=obj["mover"],
            interval=Interval(parse_rational(obj["lo"]), parse_rational(obj["hi"])),
            note=obj.get("note"),
        )


@dataclass(frozen=True)
class GameState:
    """Immutable game position; applying a move returns a new state."""

    params: GameParams
    records: tuple[TraceRecord, ...]

    @property
    def next_mover(self) -> str:
        return ALICE if len(self.records) % 2 == 1 else BOB

    @property
    def last_interval(self) -> Interval:
        return self.records[-1].interval

    @property
    def history(self) -> list[tuple[str, Interval]]:
        return [(rec.mover, rec.interval) for rec in self.records]

    def bob_intervals(self) -> list[Interval]:
        return [rec.interval for rec in self.records if rec.mover == BOB]


def new_game(params: GameParams, b1: Interval) -> GameState:
    """Open the game with Bob's interval; Alice is on the move."""
    if b1.lo >= b1.hi:
        raise ValueError(f"opening interval must be non-degenerate, got {b1}")
    return GameState(params, (TraceRecord(1, BOB, b1),))


def apply_move(state: GameState, move: Interval, note: Optional[dict] = None) -> GameState:
    """Validate and append one move; raises IllegalMoveError, never mutates."""
    parent = state.last_interval
    mover = state.next_mover
    ratio = state.params.alpha if mover == ALICE else state.params.beta
    if move.lo < parent.lo:
        raise IllegalMoveError(
            "containment",
            f"{mover} move {move} escapes parent {parent}: lo endpoint {move.lo} < {parent.lo}",
            endpoint="lo",
        )
    if move.hi > parent.hi:
        raise IllegalMoveError(
            "containment",
            f"{mover} move {move} escapes parent {parent}: hi endpoint {move.hi} > {parent.hi}",
            endpoint="hi",
        )
    expected = ratio * parent.radius
    if move.radius != expected:
        raise IllegalMoveError(
            "radius",
            f"{mover} move {move} has radius {move.radius}, expected exactly {expected}",
            expected=expected,
            actual=move.radius,
        )
    last_round = state.records[-1].round
    next_round = last_round if mover == ALICE else last_round + 1
    rec = TraceRecord(next_round, mover, move, note)
    return GameState(state.params, state.records + (rec,))


Strategy = Callable[[GameState], "Interval | tuple[Interval, Optional[dict]]"]


def _propose(strategy: Strategy, state: GameState) -> tuple[Interval, Optional[dict]]:
    result = strategy(state)
    if isinstance(result, tuple):
        return result
    return result, None


def run(
    params: GameParams,
    b1: Interval,
    alice: Strategy,
    bob: Strategy,
    total_rounds: int,
) -> tuple[Interval, list[TraceRecord]]:
    """Play total_rounds full (Alice, Bob) exchanges beyond the opening B_1.

    The final interval is Bob's interval B_{total_rounds + 1}, of radius
    exactly radius(B_1) * (alpha * beta)^total_rounds.  A strategy exception
    aborts the run; IllegalMoveError and strategy errors carry the partial
    trace on their .trace attribute when available.
    """
    if total_rounds < 1:
        raise ValueError("total_rounds must be >= 1")
    state = new_game(params, b1)
    try:
        for _ in range(total_rounds):
            move, note = _propose(alice, state)
            state = apply_move(state, move, note)
            move, note = _propose(bob, state)
            state = apply_move(state, move, note)
    except Exception as err:
        if hasattr(err, "trace"):
            err.trace = list(state.records)
        raise
    return state.last_interval, list(state.records)


def trace_to_lines(trace: Sequence[TraceRecord]) -> str:
    return "\n".join(json.dumps(rec.to_json()) for rec in trace)


def trace_from_lines(text: str) -> list[TraceRecord]:
    """Parse a one-record-per-line trace; names the offending line on error."""
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            records.append(TraceRecord.from_json(json.loads(line)))
        except (ValueError, KeyError, TypeError) as err:
            raise ValueError(f"malformed trace at line {lineno}: {err}") from err
    return records
