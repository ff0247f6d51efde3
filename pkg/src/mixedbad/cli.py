"""Command-line front door.

Subcommands: constants | enumerate | play | verify | intersect.  Inputs come
from a JSON config file plus flags (flags win); outputs are structured JSON
records with every rational serialized exactly as "p/q".

Exit codes are stable contracts: 0 ok, 1 usage or config error,
2 not admissible, 3 internal contradiction, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .arithmetic import DSequence, ExponentPair, Interval, format_rational, parse_rational
from .dangerous import ProblemParams, WindowParams, enumerate_dangerous
from .game import GameParams, IllegalMoveError, run, trace_from_lines, trace_to_lines
from .strategy import (
    NearestDangerousTarget,
    NotAdmissibleError,
    StrategyContradictionError,
    burn_in_exchanges,
    derive_constants,
    interleave,
    make_bob,
    mixed_bad_alice,
)
from .verify import check_trace, constants_from_trace, verify_avoidance

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_ADMISSIBLE = 2
EXIT_CONTRADICTION = 3
EXIT_VERIFY_FAILED = 4


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems become exit code 1, not argparse's 2
        raise ConfigError(message)


def _load_config(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as err:
        raise ConfigError(f"config file not found: {path}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config file {path} is not valid JSON: {err}") from err


def _rational(text: str, field: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as err:
        raise ConfigError(f"field {field}: {err}") from err


def _exponents(obj: dict) -> ExponentPair:
    try:
        return ExponentPair.from_fractions(
            _rational(obj["i"], "exponents.i"), _rational(obj["j"], "exponents.j")
        )
    except (KeyError, ValueError) as err:
        raise ConfigError(f"exponents: {err}") from err


def _dsequence(obj: dict) -> DSequence:
    try:
        return DSequence.from_json(obj)
    except (KeyError, ValueError, TypeError) as err:
        raise ConfigError(f"d sequence: {err}") from err


def _interval(obj: dict, field: str) -> Interval:
    try:
        return Interval.from_json(obj)
    except (KeyError, ValueError) as err:
        raise ConfigError(f"{field}: {err}") from err


def _game_params(cfg: dict) -> GameParams:
    try:
        return GameParams(_rational(cfg["alpha"], "alpha"), _rational(cfg["beta"], "beta"))
    except KeyError as err:
        raise ConfigError(f"missing field {err}") from err
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _build_bob(spec: dict, pp: ProblemParams | None, wp: WindowParams | None, blocks: int):
    kind = spec.get("kind")
    if kind is None:
        raise ConfigError("bob.kind is required")
    seed = spec.get("seed")
    target = spec.get("target")
    try:
        if kind == "chase":
            if target is None:
                raise ConfigError("bob.target is required for a chase bob")
            if target == "nearest-dangerous":
                if pp is None or wp is None:
                    raise ConfigError("nearest-dangerous target needs derivable constants")
                return make_bob("chase", target=NearestDangerousTarget(pp, wp, blocks))
            return make_bob("chase", target=_rational(target, "bob.target"))
        return make_bob(kind, seed=seed)
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _constants_json(consts) -> dict:
    return {
        "R": format_rational(consts.R),
        "t": consts.t,
        "rho1": format_rational(consts.rho1),
        "c": format_rational(consts.c),
        "needs_burn_in": consts.needs_burn_in,
    }


def cmd_constants(args) -> int:
    gp = GameParams(_rational(args.alpha, "--alpha"), _rational(args.beta, "--beta"))
    e = ExponentPair.from_fractions(_rational(args.i, "--i"), _rational(args.j, "--j"))
    consts = derive_constants(gp, e, _rational(args.rho1, "--rho1"))
    print(json.dumps(_constants_json(consts)))
    return EXIT_OK


def _problem_from_config(cfg: dict, gp: GameParams, e: ExponentPair, d: DSequence):
    """(pp, wp) for standalone commands; c comes from config or is derived."""
    consts = None
    if "rho1" in cfg:
        consts = derive_constants(gp, e, _rational(cfg["rho1"], "rho1"))
    elif "b1" in cfg:
        b1 = _interval(cfg["b1"], "b1")
        frozen = b1.radius * gp.shrink ** burn_in_exchanges(b1.radius, gp, e)
        consts = derive_constants(gp, e, frozen)
    else:
        raise ConfigError("config needs rho1 or b1 to derive constants")
    c = _rational(cfg["c"], "c") if "c" in cfg else consts.c
    pp = ProblemParams(e, d, c)
    wp = WindowParams(R=consts.R, t=consts.t)
    return pp, wp, consts


def cmd_enumerate(args) -> int:
    cfg = _load_config(args.config)
    gp = _game_params(cfg)
    e = _exponents(cfg["exponents"])
    d = _dsequence(cfg["d"])
    pp, wp, _ = _problem_from_config(cfg, gp, e, d)
    interval = Interval(_rational(args.lo, "--lo"), _rational(args.hi, "--hi"))
    for point in enumerate_dangerous(args.k, interval, pp, wp):
        print(json.dumps(point.to_json()))
    return EXIT_OK


def cmd_play(args) -> int:
    cfg = _load_config(args.config)
    gp = _game_params(cfg)
    e = _exponents(cfg["exponents"])
    d = _dsequence(cfg["d"])
    b1 = _interval(cfg["b1"], "b1")
    blocks = args.blocks if args.blocks is not None else cfg.get("blocks")
    if blocks is None:
        raise ConfigError("blocks must be given in config or via --blocks")
    bob_spec = dict(cfg.get("bob", {}))
    if args.bob is not None:
        bob_spec["kind"] = args.bob
    if args.seed is not None:
        bob_spec["seed"] = args.seed

    alice = mixed_bad_alice(gp, e, d)
    burn_in = burn_in_exchanges(b1.radius, gp, e)
    t = alice.window_params.t
    frozen_rho1 = b1.radius * gp.shrink ** burn_in
    expected = derive_constants(gp, e, frozen_rho1)
    pp = ProblemParams(e, d, expected.c)
    bob = _build_bob(bob_spec, pp, alice.window_params, blocks)

    total_rounds = burn_in + blocks * t
    try:
        final, trace = run(gp, b1, alice, bob, total_rounds)
    except StrategyContradictionError as err:
        if args.trace and err.trace is not None:
            Path(args.trace).write_text(trace_to_lines(err.trace) + "\n")
        print(f"contradiction: {err}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except IllegalMoveError as err:
        if args.trace and err.trace is not None:
            Path(args.trace).write_text(trace_to_lines(err.trace) + "\n")
        print(f"illegal move: {err}", file=sys.stderr)
        return EXIT_CONTRADICTION
    if args.trace:
        Path(args.trace).write_text(trace_to_lines(trace) + "\n")
    summary = {
        "final": final.to_json(),
        "rounds": total_rounds,
        "burn_in": burn_in,
        "blocks": blocks,
        "constants": _constants_json(alice.constants),
        "dodged": sum(1 for _, p in alice.blocks_seen if p is not None),
    }
    print(json.dumps(summary))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    gp = _game_params(cfg)
    e = _exponents(cfg["exponents"])
    d = _dsequence(cfg["d"])
    try:
        trace = trace_from_lines(Path(args.trace).read_text())
    except FileNotFoundError as err:
        raise ConfigError(f"trace file not found: {args.trace}") from err
    consts, _ = constants_from_trace(trace, gp, e)
    pp = ProblemParams(e, d, consts.c)
    wp = WindowParams(R=consts.R, t=consts.t)
    report = check_trace(trace, gp, pp, wp)
    output = {"trace": report.to_json()}
    ok = report.passed
    if args.recheck_avoidance is not None:
        avoid = verify_avoidance(trace[-1].interval, args.recheck_avoidance, pp, wp)
        output["avoidance"] = avoid.to_json()
        ok = ok and avoid.certified
    print(json.dumps(output, indent=2))
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_intersect(args) -> int:
    cfg = _load_config(args.config)
    gp = _game_params(cfg)
    b1 = _interval(cfg["b1"], "b1")
    blocks = cfg.get("blocks")
    if blocks is None:
        raise ConfigError("blocks is required for intersect")
    targets = cfg.get("targets")
    if not isinstance(targets, list) or len(targets) != 2:
        raise ConfigError("intersect needs exactly two targets")

    view_params = GameParams(gp.alpha, gp.alpha * gp.beta * gp.beta)
    if not view_params.admissible:
        raise NotAdmissibleError(
            f"adjusted pair ({view_params.alpha}, {view_params.beta}) has "
            f"gamma = {view_params.gamma}"
        )
    subs = []
    spans = []
    for idx, tgt in enumerate(targets):
        e = _exponents(tgt["exponents"])
        d = _dsequence(tgt["d"])
        sub = mixed_bad_alice(view_params, e, d)
        # first interval each sub sees: B_1 for the odd-turn sub, B_2 for the even
        start_radius = b1.radius if idx == 0 else b1.radius * gp.shrink
        burn_in = burn_in_exchanges(start_radius, view_params, e)
        view_exchanges = burn_in + blocks * sub.window_params.t
        spans.append(2 * view_exchanges - (1 if idx == 0 else 0))
        subs.append(sub)
    alice = interleave(subs[0], subs[1])
    bob = _build_bob(dict(cfg.get("bob", {"kind": "centered"})), None, None, blocks)
    total_rounds = max(spans)
    try:
        final, trace = run(gp, b1, alice, bob, total_rounds)
    except StrategyContradictionError as err:
        print(f"contradiction: {err}", file=sys.stderr)
        return EXIT_CONTRADICTION
    output = {"final": final.to_json(), "rounds": total_rounds, "families": []}
    ok = True
    for sub in subs:
        report = verify_avoidance(final, blocks, sub.problem_params, sub.window_params)
        output["families"].append(report.to_json())
        ok = ok and report.certified
    print(json.dumps(output, indent=2))
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _build_parser() -> _Parser:
    parser = _Parser(prog="mixedbad", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="derive R, t, rho1, c for a game")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--i", required=True)
    p.add_argument("--j", required=True)
    p.add_argument("--rho1", required=True)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("enumerate", help="stream dangerous points in a window")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lo", required=True)
    p.add_argument("--hi", required=True)
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("play", help="run the winning strategy against a bob")
    p.add_argument("--config", required=True)
    p.add_argument("--bob", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--blocks", type=int, default=None)
    p.add_argument("--trace", default=None)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("verify", help="re-validate a trace and optionally the final interval")
    p.add_argument("--trace", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--recheck-avoidance", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("intersect", help="two-family interleaved demo")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_intersect)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except NotAdmissibleError as err:
        print(f"not admissible: {err}", file=sys.stderr)
        return EXIT_NOT_ADMISSIBLE
    except StrategyContradictionError as err:
        print(f"contradiction: {err}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except ValueError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
