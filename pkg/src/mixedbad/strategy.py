"""Alice's winning strategy, its constants, and a stable of adversarial Bobs.

The strategy plays in three layers:

  burn-in   centered moves until the current Bob interval is small enough for
            the constants to be chosen; that interval is then frozen and
            re-indexed as B_1, fixing rho_1 and the constant c for good.
  blocks    play proceeds in blocks of t rounds.  At each block head the
            window-k dangerous points meeting the interval are enumerated;
            separation theory guarantees at most one exists (the
            single-danger tripwire below raises if that ever fails, since it
            would expose a bug in the constants or the enumeration, not a
            possible game).
  dodging   when a block has a dangerous point, Alice spends the block's t
            moves fleeing it: leftmost inscribed interval when the point sits
            at or right of center, rightmost otherwise.  Admissibility makes
            t dodge moves put distance gamma/2 * rho (of the block head)
            between the survivor and the point, which exceeds the danger
            radius, so the danger interval is dead for the rest of the game.

All selections are deterministic; randomness exists only in the seeded Bob.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arithmetic import ExponentPair, Interval, inscribed_interval
from .dangerous import (
    DangerousPoint,
    ProblemParams,
    WindowParams,
    danger_intersects,
    dangerous_denominators,
    enumerate_dangerous,
    window_denominator_range,
)
from .game import ALICE, GameParams, GameState, apply_move, new_game

HALF = Fraction(1, 2)


class NotAdmissibleError(ValueError):
    """gamma = 1 - 2*alpha + alpha*beta is not positive."""


class StrategyContradictionError(RuntimeError):
    """An assertion the theory forbids failed; carries the witnesses.

    kind "multiple-dangers": two dangerous points met one block head (the
    points ride along as a certificate).  kind "danger-survived": a dodged
    point's danger interval still met the next block head.
    """

    def __init__(self, kind: str, message: str, *, points=None, block=None):
        super().__init__(message)
        self.kind = kind
        self.points = points or []
        self.block = block
        self.trace = None


@dataclass(frozen=True)
class StrategyConstants:
    """R = 1/(alpha*beta), block span t, accepted rho_1, and c.

    needs_burn_in marks that the supplied rho_1 violated its bound; rho1 then
    holds the burn-in target (the largest power of 1/2 satisfying the bound).
    """

    R: Fraction
    t: int
    rho1: Fraction
    c: Fraction
    needs_burn_in: bool = False

    def verify(self, gp: GameParams, e: ExponentPair) -> None:
        """Re-check every defining inequality exactly; raises on any failure."""
        if self.R * gp.shrink != 1:
            raise AssertionError("R must equal 1/(alpha*beta) exactly")
        half_gamma = gp.gamma / 2
        if not (gp.shrink ** self.t < half_gamma <= gp.shrink ** (self.t - 1)):
            raise AssertionError("t is not the minimal block span")
        if not _rho1_bound_holds(self.rho1, self.R, self.t, e):
            raise AssertionError("rho1 violates its smallness bound")
        if not 0 < self.c < 1 or not _c_bound_holds(self.c, gp.gamma, self.rho1, e):
            raise AssertionError("c violates its bound")


def minimal_block_span(gp: GameParams) -> int:
    """Least t with (alpha*beta)^t < gamma/2."""
    if not gp.admissible:
        raise NotAdmissibleError(f"gamma = {gp.gamma} is not positive")
    t = 1
    while gp.shrink ** t >= gp.gamma / 2:
        t += 1
    return t


def _rho1_bound_holds(rho1: Fraction, R: Fraction, t: int, e: ExponentPair) -> bool:
    """rho1 < (1/4 * R^(-2t/(1+j)))^j, raised to den*(den+j_num)."""
    n = e.den * (e.den + e.j_num)
    rhs = Fraction(1, 4) ** (e.j_num * (e.den + e.j_num)) * R ** (-2 * t * e.j_num * e.den)
    return rho1 > 0 and rho1 ** n < rhs


def _c_bound_holds(c: Fraction, gamma: Fraction, rho1: Fraction, e: ExponentPair) -> bool:
    """c < (gamma * rho1 / 2)^(1/j), i.e. c^j_num < (gamma*rho1/2)^den."""
    return c ** e.j_num < (gamma * rho1 / 2) ** e.den


def burn_in_target(gp: GameParams, e: ExponentPair) -> Fraction:
    """Largest power of 1/2 satisfying the rho_1 bound."""
    R = 1 / gp.shrink
    t = minimal_block_span(gp)
    m = 0
    while not _rho1_bound_holds(HALF ** m, R, t, e):
        m += 1
    return HALF ** m


def _choose_c(gamma: Fraction, rho1: Fraction, e: ExponentPair) -> Fraction:
    """Largest power of 1/2 strictly under the c bound (and under 1)."""
    m = 1
    while not _c_bound_holds(HALF ** m, gamma, rho1, e):
        m += 1
    return HALF ** m


def derive_constants(
    gp: GameParams, e: ExponentPair, actual_rho1: Fraction
) -> StrategyConstants:
    """Fix R, t, rho_1 and c for an admissible pair, all choices deterministic.

    If actual_rho1 violates its bound the result is flagged needs_burn_in and
    carries the burn-in target (with its own c) instead.
    """
    if actual_rho1 <= 0:
        raise ValueError("rho1 must be positive")
    if not gp.admissible:
        raise NotAdmissibleError(f"gamma = {gp.gamma} is not positive")
    R = 1 / gp.shrink
    t = minimal_block_span(gp)
    if _rho1_bound_holds(actual_rho1, R, t, e):
        rho1, needs_burn_in = actual_rho1, False
    else:
        rho1, needs_burn_in = burn_in_target(gp, e), True
    consts = StrategyConstants(R, t, rho1, _choose_c(gp.gamma, rho1, e), needs_burn_in)
    consts.verify(gp, e)
    return consts


def burn_in_exchanges(b1_radius: Fraction, gp: GameParams, e: ExponentPair) -> int:
    """Full exchanges of centered play before the radius reaches its target."""
    target = burn_in_target(gp, e)
    m = 0
    rho = b1_radius
    while rho > target:
        rho *= gp.shrink
        m += 1
    return m


def dodge_move(parent: Interval, y: Fraction, alpha: Fraction) -> Interval:
    """Inscribed interval fleeing y: leftmost when y >= center (ties left),
    rightmost otherwise."""
    if y >= parent.center:
        return inscribed_interval(parent, alpha, Fraction(0))
    return inscribed_interval(parent, alpha, Fraction(1))


class PositionStrategy:
    """Always the same slide position; ratio follows whoever is on the move."""

    def __init__(self, position: Fraction):
        self.position = Fraction(position)

    def __call__(self, state: GameState) -> Interval:
        ratio = state.params.alpha if state.next_mover == ALICE else state.params.beta
        return inscribed_interval(state.last_interval, ratio, self.position)


def centered() -> PositionStrategy:
    return PositionStrategy(Fraction(1, 2))


def leftmost() -> PositionStrategy:
    return PositionStrategy(Fraction(0))


class RandomBob:
    """Seeded positions on the 2^-32 grid of the sliding range.

    The fixed grid keeps every move a small exact rational, so replaying a
    seed reproduces the trace bit for bit.
    """

    GRID = 2 ** 32

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def __call__(self, state: GameState) -> Interval:
        ratio = state.params.alpha if state.next_mover == ALICE else state.params.beta
        position = Fraction(self.rng.randrange(self.GRID + 1), self.GRID)
        return inscribed_interval(state.last_interval, ratio, position)


class NearestDangerousTarget:
    """Per-move target resolver: the dangerous point nearest the interval.

    Precomputes every dangerous denominator up to the given window, then for
    each finds the closest coprime numerator to the interval center.
    """

    _SPAN = 64  # coprime residues recur well within this many steps

    def __init__(self, pp: ProblemParams, wp: WindowParams, max_window: int):
        _, q_hi = window_denominator_range(max_window, wp, pp.exponents)
        self.qs = dangerous_denominators(1, q_hi, pp)
        if not self.qs:
            raise ValueError("no dangerous denominators within the window bound")

    def __call__(self, interval: Interval) -> Fraction:
        x = interval.center
        best = None
        for q in self.qs:
            floor_qx = (x.numerator * q) // x.denominator
            for r in range(floor_qx - self._SPAN, floor_qx + self._SPAN + 2):
                if gcd(r, q) != 1:
                    continue
                cand = (abs(x - Fraction(r, q)), q, r)
                if best is None or cand < best:
                    best = cand
        return Fraction(best[2], best[1])


class ChaseBob:
    """Plays the legal inscribed interval nearest the target.

    target is a fixed point or a callable resolving a point from the current
    interval (see NearestDangerousTarget).
    """

    def __init__(self, target):
        self.target = target

    def __call__(self, state: GameState) -> Interval:
        parent = state.last_interval
        ratio = state.params.alpha if state.next_mover == ALICE else state.params.beta
        y = self.target(parent) if callable(self.target) else self.target
        slack = (1 - ratio) * parent.length
        position = (y - parent.lo - ratio * parent.length / 2) / slack
        position = min(max(position, Fraction(0)), Fraction(1))
        return inscribed_interval(parent, ratio, position)


def make_bob(kind: str, seed: int | None = None, target=None):
    """Stock adversaries: centered | leftmost | random (seeded) | chase."""
    if kind == "centered":
        return centered()
    if kind == "leftmost":
        return leftmost()
    if kind == "random":
        if seed is None:
            raise ValueError("random bob requires a seed")
        return RandomBob(seed)
    if kind == "chase":
        if target is None:
            raise ValueError("chase bob requires a target")
        return ChaseBob(target)
    raise ValueError(f"unknown bob kind {kind!r}")


class MixedBadAlice:
    """The winning strategy: burn-in, then block play with dodging.

    Stateful and confined to a single run.  After the burn-in freeze the
    instance exposes .constants, .problem_params and .window_params for the
    verifier plumbing; .blocks_seen logs (k, targeted point or None).
    """

    def __init__(self, gp: GameParams, e: ExponentPair, d):
        if not gp.admissible:
            raise NotAdmissibleError(f"gamma = {gp.gamma} is not positive")
        self.game_params = gp
        self.exponents = e
        self.d = d
        self.window_params = WindowParams(R=1 / gp.shrink, t=minimal_block_span(gp))
        self.target_rho1 = burn_in_target(gp, e)
        self.constants: StrategyConstants | None = None
        self.problem_params: ProblemParams | None = None
        self.block = 0
        self.moves_into_block = 0
        self.target_point: DangerousPoint | None = None
        self.blocks_seen: list[tuple[int, DangerousPoint | None]] = []

    def __call__(self, state: GameState):
        if state.params != self.game_params:
            raise ValueError(
                f"strategy built for {self.game_params}, game uses {state.params}"
            )
        current = state.last_interval
        alpha = state.params.alpha
        if self.constants is None:
            if current.radius > self.target_rho1:
                move = inscribed_interval(current, alpha, HALF)
                return move, {"phase": "burn-in"}
            self._freeze(current)
        if self.moves_into_block == self.window_params.t:
            self._open_block(current)
        self.moves_into_block += 1
        if self.target_point is not None:
            move = dodge_move(current, self.target_point.point, alpha)
            target_str = f"{self.target_point.r}/{self.target_point.q}"
        else:
            move = inscribed_interval(current, alpha, HALF)
            target_str = None
        return move, {"phase": "block", "block": self.block, "target": target_str}

    def _freeze(self, b1: Interval) -> None:
        consts = derive_constants(self.game_params, self.exponents, b1.radius)
        # the frozen radius is at most the precomputed target, so it is accepted
        assert not consts.needs_burn_in
        self.constants = consts
        self.problem_params = ProblemParams(self.exponents, self.d, consts.c)
        self.moves_into_block = self.window_params.t

    def _open_block(self, head: Interval) -> None:
        if self.target_point is not None and danger_intersects(
            self.target_point, head, self.problem_params
        ):
            raise StrategyContradictionError(
                "danger-survived",
                f"danger interval of {self.target_point} survived block {self.block}",
                points=[self.target_point],
                block=self.block,
            )
        self.block += 1
        self.moves_into_block = 0
        points = enumerate_dangerous(self.block, head, self.problem_params, self.window_params)
        if len(points) >= 2:
            raise StrategyContradictionError(
                "multiple-dangers",
                f"block {self.block} head {head} meets {len(points)} dangerous points",
                points=points,
                block=self.block,
            )
        self.target_point = points[0] if points else None
        self.blocks_seen.append((self.block, self.target_point))


def mixed_bad_alice(gp: GameParams, e: ExponentPair, d) -> MixedBadAlice:
    """Fresh strategy instance for one run."""
    return MixedBadAlice(gp, e, d)


class InterleavedAlice:
    """Route odd Alice turns to one strategy, even turns to the other.

    Between two consecutive moves of one sub-strategy the interval shrinks by
    beta * alpha * beta relative to that sub-strategy's chosen interval, so
    each sub-strategy experiences a legal (alpha, alpha*beta^2)-game.  The
    views are replayed through the engine, which re-validates that radius law
    on every subsampled move.
    """

    def __init__(self, first, second):
        self.subs = (first, second)
        self.views: list[GameState | None] = [None, None]
        self.turns = 0
        params = [getattr(s, "game_params", None) for s in self.subs]
        declared = [gp for gp in params if gp is not None]
        if declared:
            if any(gp != declared[0] for gp in declared):
                raise NotAdmissibleError("sub-strategies built for different game ratios")
            if not declared[0].admissible:
                raise NotAdmissibleError(
                    f"adjusted pair gamma = {declared[0].gamma} is not positive"
                )
        self.declared = declared[0] if declared else None

    def __call__(self, state: GameState):
        alpha, beta = state.params.alpha, state.params.beta
        view_params = GameParams(alpha, alpha * beta * beta)
        if not view_params.admissible:
            raise NotAdmissibleError(
                f"adjusted pair ({alpha}, {view_params.beta}) has gamma = {view_params.gamma}"
            )
        if self.declared is not None and (
            self.declared.alpha != alpha or self.declared.beta != view_params.beta
        ):
            raise NotAdmissibleError(
                f"sub-strategies built for {self.declared}, game implies {view_params}"
            )
        self.turns += 1
        idx = (self.turns - 1) % 2
        sub = self.subs[idx]
        real_last = state.last_interval
        view = self.views[idx]
        if view is None:
            view = new_game(view_params, real_last)
        else:
            view = apply_move(view, real_last)  # the composite adversary's move
        result = sub(view)
        move, note = result if isinstance(result, tuple) else (result, None)
        view = apply_move(view, move, note)
        self.views[idx] = view
        merged = {"sub": idx + 1}
        if note:
            merged.update(note)
        return move, merged


def interleave(first, second) -> InterleavedAlice:
    """Alice strategy for the real game from two strategies for the
    (alpha, alpha*beta^2)-game; see InterleavedAlice."""
    return InterleavedAlice(first, second)
