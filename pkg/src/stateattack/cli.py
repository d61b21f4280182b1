"""Command-line front end: every subcommand is a thin composition of library
calls that prints one deterministic JSON report to stdout.

Exit codes: 0 when the analysis ran (whatever the verdict), 1 only when
--fail-on-violation is set and the checked property is violated/enforced,
2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .aobs import build_attack_observer
from .attackmodel import AttackSpec
from .automata import Nfa, check_anonymity_classic, check_opacity_classic, observer
from .enforcement import check_enforced
from .oracle import oracle_check_enforced, oracle_check_violation
from .serialize import (
    InputError,
    export_dot,
    parse_model,
    parse_spec,
    serialize_strategy,
)
from .strategy import (
    Adversarial,
    FIRST_VALID,
    RANKED,
    RandomSeeded,
    compute_ranks,
    simulate_play,
    synthesize_strategy,
    validate_strategy,
)
from .violation import check_violation, witness_labels

STAGES = ("model", "observer", "aobs", "verifier", "final-verifier", "strategy")


def _add_common(parser: argparse.ArgumentParser, needs_spec: bool) -> None:
    parser.add_argument("--model", required=True, help="path to the plant model document")
    if needs_spec:
        parser.add_argument("--spec", help="path to the attack description document")
        parser.add_argument("--attacked", help="comma-separated attacked states")
        parser.add_argument("--budget", type=int, help="maximum number of state attacks")
        parser.add_argument("--mode", choices=("anonymity", "opacity"), default="anonymity")
        parser.add_argument("--secret", help="comma-separated secret states (opacity mode)")
    parser.add_argument("--out", help="write the produced artifact to this path")
    parser.add_argument("--format", choices=("json", "dot"), default="json")
    parser.add_argument("--fail-on-violation", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stateattack",
        description="Anonymity/opacity analysis of NFAs under a bounded budget of state attacks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("observer", help="build the plant observer")
    _add_common(p, needs_spec=False)

    p = sub.add_parser("check-classic", help="attack-free anonymity/opacity checks")
    _add_common(p, needs_spec=True)

    p = sub.add_parser("build-aobs", help="build the attack observer")
    _add_common(p, needs_spec=True)

    p = sub.add_parser("check-violation", help="can the intruder ever pin the system down?")
    _add_common(p, needs_spec=True)

    p = sub.add_parser("check-enforced", help="can the intruder force a violation?")
    _add_common(p, needs_spec=True)
    p.add_argument("--strict-paper", action="store_true", help="literal pruning rule for result branches")

    p = sub.add_parser("synthesize", help="synthesize an attack strategy")
    _add_common(p, needs_spec=True)
    p.add_argument("--strict-paper", action="store_true")
    p.add_argument("--policy", choices=(RANKED, FIRST_VALID), default=RANKED)

    p = sub.add_parser("simulate", help="simulate plays of a synthesized strategy")
    _add_common(p, needs_spec=True)
    p.add_argument("--strict-paper", action="store_true")
    p.add_argument("--policy", choices=(RANKED, FIRST_VALID), default=RANKED)
    p.add_argument("--seed", type=int, help="seeded random system; omit for the adversarial system")
    p.add_argument("--max-rounds", type=int, default=1000)

    p = sub.add_parser("oracle", help="brute-force verdicts computed directly on the plant")
    _add_common(p, needs_spec=True)
    p.add_argument("--horizon", type=int, help="event bound for the violation search")

    p = sub.add_parser("export-dot", help="render a pipeline stage as DOT")
    _add_common(p, needs_spec=True)
    p.add_argument("--strict-paper", action="store_true")
    p.add_argument("--policy", choices=(RANKED, FIRST_VALID), default=RANKED)
    p.add_argument("--stage", choices=STAGES, default="model")
    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_inputs(args, needs_spec: bool):
    model = parse_model(_read(args.model))
    if not needs_spec:
        return model, None
    if getattr(args, "spec", None):
        attack = parse_spec(_read(args.spec), model)
    else:
        if args.budget is None:
            raise InputError("either --spec or --attacked/--budget is required")
        attacked = [s.strip() for s in (args.attacked or "").split(",") if s.strip()]
        unknown = [s for s in attacked if s not in model.states]
        if unknown:
            raise InputError(f"unknown identifier: attacked states {unknown!r}")
        if args.budget < 0:
            raise InputError(f"negative budget: {args.budget}")
        secret = None
        if args.mode == "opacity":
            secret = frozenset(s.strip() for s in (args.secret or "").split(",") if s.strip())
            unknown = [s for s in secret if s not in model.states]
            if unknown:
                raise InputError(f"unknown identifier: secret states {unknown!r}")
            if secret == model.states:
                raise InputError("invalid secret set: it must not cover every plant state")
        attack = AttackSpec(frozenset(attacked), args.budget, secret)
    return model, attack


def _rank_value(value):
    if value is None:
        return None
    return "inf" if math.isinf(value) else value


def _emit(report: dict, args, artifact: str | None = None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    if args.out:
        Path(args.out).write_text(artifact if artifact is not None else text + "\n", encoding="utf-8")
    print(text)


def _strategy_for(model: Nfa, attack: AttackSpec, args):
    """Synthesized strategy for the instance, or None when the intruder
    cannot enforce a violation."""
    enforced, fv = check_enforced(model, attack, getattr(args, "strict_paper", False))
    if not enforced:
        return None, fv, fv.parent
    aobs = fv.parent
    return synthesize_strategy(fv, aobs, args.policy), fv, aobs


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    command = args.command
    if command == "observer":
        model, _ = _load_inputs(args, needs_spec=False)
        obs = observer(model)
        report = {
            "command": command,
            "observer_states": len(obs.states),
            "observer_transitions": len(obs.transitions),
            "states": [str(q) for q in sorted(obs.states)],
        }
        artifact = export_dot(obs, "observer") if args.format == "dot" else json.dumps(
            report, indent=2, sort_keys=True, ensure_ascii=False
        )
        _emit(report, args, artifact)
        return 0

    model, attack = _load_inputs(args, needs_spec=True)

    if command == "check-classic":
        anonymous = check_anonymity_classic(model)
        report = {"command": command, "anonymous": anonymous}
        holds = anonymous
        if attack.secret is not None:
            holds = report["opaque"] = check_opacity_classic(model, attack.secret)
        _emit(report, args)
        return 1 if args.fail_on_violation and not holds else 0

    if command == "build-aobs":
        aobs = build_attack_observer(model, attack)
        report = {
            "command": command,
            "states": len(aobs.states),
            "transitions": len(aobs.transitions),
            "initial": str(aobs.initial),
        }
        artifact = export_dot(aobs, "attack_observer") if args.format == "dot" else None
        _emit(report, args, artifact)
        return 0

    if command == "check-violation":
        verdict, verifier = check_violation(model, attack)
        witness = witness_labels(verifier, attack)
        report = {
            "command": command,
            "mode": attack.mode,
            "verdict": verdict,
            "attack_observer_states": len(verifier.parent.states),
            "verifier_states": len(verifier.states),
            "witness": witness,
        }
        artifact = export_dot(verifier, "verifier") if args.format == "dot" else None
        _emit(report, args, artifact)
        return 1 if args.fail_on_violation and verdict else 0

    if command == "check-enforced":
        verdict, fv = check_enforced(model, attack, args.strict_paper)
        rank_initial = None
        if verdict:
            ranks = compute_ranks(fv, attack)
            rank_initial = ranks[fv.initial]
        report = {
            "command": command,
            "mode": attack.mode,
            "verdict": verdict,
            "final_verifier_states": len(fv.states),
            "rank_initial": _rank_value(rank_initial),
        }
        artifact = export_dot(fv, "final_verifier") if args.format == "dot" else None
        _emit(report, args, artifact)
        return 1 if args.fail_on_violation and verdict else 0

    if command == "synthesize":
        strategy, fv, aobs = _strategy_for(model, attack, args)
        if strategy is None:
            _emit({"command": command, "enforced": False, "strategy_states": 0}, args)
            return 0
        validation = validate_strategy(strategy, aobs, attack)
        report = {
            "command": command,
            "enforced": True,
            "policy": strategy.policy,
            "strategy_states": len(strategy.states),
            "strategy_edges": strategy.n_edges,
            "sound": validation.sound,
            "max_rounds": validation.max_rounds,
            "rank_initial": _rank_value(strategy.ranks.get(strategy.initial)),
            "edges": [
                {"from": str(src), "input": event, "output": output, "to": str(dst)}
                for src, event, output, dst in strategy.edge_list()
            ],
        }
        artifact = (
            export_dot(strategy, "strategy") if args.format == "dot" else serialize_strategy(strategy)
        )
        _emit(report, args, artifact)
        return 1 if args.fail_on_violation else 0

    if command == "simulate":
        strategy, fv, aobs = _strategy_for(model, attack, args)
        if strategy is None:
            _emit({"command": command, "enforced": False, "outcome": None}, args)
            return 0
        policy = RandomSeeded(args.seed) if args.seed is not None else Adversarial()
        trace = simulate_play(model, strategy, policy, args.max_rounds)
        report = {
            "command": command,
            "enforced": True,
            "outcome": trace.outcome,
            "rounds": [
                {
                    "event": rnd.event,
                    "decision": rnd.decision,
                    "result": rnd.result,
                    "estimate": str(rnd.estimate),
                    "true_state": str(rnd.true_state),
                }
                for rnd in trace.rounds
            ],
        }
        _emit(report, args)
        return 1 if args.fail_on_violation and trace.outcome == "violated" else 0

    if command == "oracle":
        aobs = build_attack_observer(model, attack)
        horizon = args.horizon if args.horizon is not None else len(aobs.states)
        violation = oracle_check_violation(model, attack, horizon)
        enforced = oracle_check_enforced(model, attack)
        report = {
            "command": command,
            "horizon": horizon,
            "violation": violation,
            "enforced": enforced,
        }
        _emit(report, args)
        return 1 if args.fail_on_violation and violation else 0

    if command == "export-dot":
        return _export_stage(model, attack, args)

    raise InputError(f"unknown command {command!r}")


def _export_stage(model: Nfa, attack: AttackSpec, args) -> int:
    stage = args.stage
    if stage == "model":
        dot = export_dot(model, "plant")
    elif stage == "observer":
        dot = export_dot(observer(model), "observer")
    elif stage == "aobs":
        dot = export_dot(build_attack_observer(model, attack), "attack_observer")
    elif stage == "verifier":
        _, verifier = check_violation(model, attack)
        dot = export_dot(verifier, "verifier")
    elif stage == "final-verifier":
        _, fv = check_enforced(model, attack, args.strict_paper)
        dot = export_dot(fv, "final_verifier")
    else:
        strategy, fv, _ = _strategy_for(model, attack, args)
        dot = export_dot(strategy if strategy is not None else fv, "strategy")
    if args.out:
        Path(args.out).write_text(dot, encoding="utf-8")
        print(json.dumps({"command": "export-dot", "stage": stage, "written": args.out}))
    else:
        print(dot, end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())
