"""Mealy-machine attack strategies: a backward-induction progress rank over
the final verifier, strategy synthesis, exhaustive validation of the play
tree, and play simulation against system policies."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .aobs import AObsState, AttackObserver, StateType, classify
from .attackmodel import ATTACK_NO, ATTACK_YES, EPSILON, AttackSpec, RESULT_LABELS
from .automata import Nfa, StateEstimate
from .violation import SubAutomaton, violation_predicate

RANKED = "ranked"
FIRST_VALID = "first-valid"

INFINITE_RANK = math.inf


class StrategyError(RuntimeError):
    """An internal consistency breach: the strategy or the region it was
    synthesized from does not cover a reachable situation."""


def compute_ranks(fv: SubAutomaton, attack: AttackSpec) -> dict:
    """Worst-case distance (in kept transitions) from each kept state to a
    violating estimate: violating system-move states are at 0, decision
    states take the best decision, everything else the worst successor.
    States from which a violation cannot be forced get an infinite rank."""
    reverse: dict = {}
    outdegree: dict = {}
    for (src, label), dst in fv.transitions.items():
        reverse.setdefault(dst, []).append((src, label))
        outdegree[src] = outdegree.get(src, 0) + 1

    ranks: dict = {}
    queue: deque = deque()
    for state in sorted(fv.states):
        if classify(state) is StateType.TYPE_I and violation_predicate(state.estimate, attack):
            ranks[state] = 0
            queue.append(state)
    remaining = dict(outdegree)
    while queue:
        state = queue.popleft()
        value = ranks[state]
        for pred, _label in sorted(reverse.get(state, ())):
            if pred in ranks:
                continue
            if classify(pred) is StateType.TYPE_III:
                ranks[pred] = value + 1
                queue.append(pred)
            else:
                # Worst-case nodes resolve once their last successor has.
                remaining[pred] -= 1
                if remaining[pred] == 0:
                    ranks[pred] = value + 1
                    queue.append(pred)
    return {state: ranks.get(state, INFINITE_RANK) for state in fv.states}


@dataclass
class MealyStrategy:
    """Intruder policy: states are system-move states of the final verifier
    plus its initial decision state; each edge maps an observed event to an
    attack output, branching only on the attack result."""

    initial: AObsState
    states: frozenset
    edges: dict
    attack: AttackSpec
    ranks: Mapping = field(default_factory=dict)
    policy: str = RANKED

    def outputs(self, state: AObsState, event: str) -> tuple:
        return self.edges.get((state, event), ())

    def decision(self, state: AObsState, event: str) -> str | None:
        outputs = self.outputs(state, event)
        if not outputs:
            return None
        return ATTACK_NO if outputs[0][0] == ATTACK_NO else ATTACK_YES

    def successor(self, state: AObsState, event: str, result: str | None = None) -> AObsState | None:
        wanted = ATTACK_NO if result is None else ATTACK_YES + result
        for output, target in self.outputs(state, event):
            if output == wanted:
                return target
        return None

    def edge_list(self) -> list:
        """Deterministically ordered (state, input, output, target) rows."""
        rows = [
            (src, event, output, target)
            for (src, event), outputs in self.edges.items()
            for output, target in outputs
        ]
        return sorted(rows, key=lambda row: (str(row[0]), row[1], row[2]))

    @property
    def n_edges(self) -> int:
        return sum(len(outputs) for outputs in self.edges.values())


def _choose_decision(
    fv: SubAutomaton,
    ranks: Mapping,
    policy: str,
    reference: AObsState,
    turn_state: AObsState,
) -> str:
    """Pick the attack decision at a decision state reached from
    ``reference``. Ranked policy declines when that already makes progress,
    otherwise takes the decision with the best worst-case successor,
    preferring to conserve budget on ties."""
    candidates: list = []
    no_target = fv.step(turn_state, ATTACK_NO)
    if no_target is not None:
        candidates.append((ATTACK_NO, no_target))
    yes_target = fv.step(turn_state, ATTACK_YES)
    if yes_target is not None:
        candidates.append((ATTACK_YES, yes_target))
    if not candidates:
        raise StrategyError(f"no decision keeps the intruder inside the region at {turn_state}")
    if policy == FIRST_VALID:
        return candidates[0][0]
    here = ranks.get(reference, INFINITE_RANK)
    if no_target is not None and ranks.get(no_target, INFINITE_RANK) < here:
        return ATTACK_NO
    best = min(
        candidates,
        key=lambda cand: (ranks.get(cand[1], INFINITE_RANK), 0 if cand[0] == ATTACK_NO else 1),
    )
    return best[0]


def synthesize_strategy(
    fv: SubAutomaton, aobs: AttackObserver, policy: str = RANKED
) -> MealyStrategy:
    """Walk the final verifier from its initial state, fixing one attack
    decision per (state, observed event) and recording the resulting
    system-move states as the strategy states."""
    if fv.is_empty:
        raise ValueError("cannot synthesize a strategy from an empty final verifier")
    if policy not in (RANKED, FIRST_VALID):
        raise ValueError(f"unknown policy {policy!r}")
    attack = aobs.attack
    ranks = compute_ranks(fv, attack)
    initial = fv.initial
    states = {initial}
    edges: dict = {}

    def add_edges(source: AObsState, event: str, turn_state: AObsState) -> list:
        decision = _choose_decision(fv, ranks, policy, source, turn_state)
        if decision == ATTACK_NO:
            target = fv.step(turn_state, ATTACK_NO)
            edges[(source, event)] = ((ATTACK_NO, target),)
            return [target]
        pending = fv.step(turn_state, ATTACK_YES)
        outputs = []
        for result in RESULT_LABELS:
            target = fv.step(pending, result)
            if target is not None:
                outputs.append((ATTACK_YES + result, target))
        edges[(source, event)] = tuple(outputs)
        return [target for _, target in outputs]

    queue: deque = deque()
    for target in add_edges(initial, EPSILON, initial):
        if target not in states:
            states.add(target)
            queue.append(target)
    while queue:
        state = queue.popleft()
        for event in sorted(aobs.enabled(state)):
            for target in add_edges(state, event, fv.step(state, event)):
                if target not in states:
                    states.add(target)
                    queue.append(target)
    return MealyStrategy(initial, frozenset(states), edges, attack, ranks, policy)


@dataclass(frozen=True)
class StrategyReport:
    sound: bool
    max_rounds: int | None = None
    counterexample: tuple | None = None
    reason: str | None = None


def validate_strategy(
    strategy: MealyStrategy, aobs: AttackObserver, attack: AttackSpec
) -> StrategyReport:
    """Exhaustively unfold the play tree (all system events enabled at each
    estimate, all defined attack results) and check that every maximal play
    reaches a violating estimate. The attack budget is inherent in the
    strategy states, whose counters never exceed it."""
    if not strategy.states or not strategy.edges:
        raise ValueError("cannot validate an empty strategy")

    memo: dict = {}
    on_path: set = set()

    def explore(state: AObsState, prefix: list):
        """Max rounds to violation from a system-move state, or a failing
        StrategyReport."""
        if violation_predicate(state.estimate, attack):
            return 0
        if state in memo:
            return memo[state]
        if state in on_path:
            return StrategyReport(False, None, tuple(prefix), "non-terminating play")
        on_path.add(state)
        worst = 0
        outcome = None
        for event in sorted(aobs.enabled(state)):
            outputs = strategy.outputs(state, event)
            if not outputs:
                outcome = StrategyReport(
                    False, None, tuple(prefix + [(event, None, None)]), "no edge for enabled event"
                )
                break
            for output, target in outputs:
                decision = output[0]
                result = output[1:] or None
                step = (event, decision, result)
                below = explore(target, prefix + [step])
                if isinstance(below, StrategyReport):
                    outcome = below
                    break
                worst = max(worst, 1 + below)
            if outcome is not None:
                break
        on_path.discard(state)
        if outcome is not None:
            return outcome
        memo[state] = worst
        return worst

    first = strategy.outputs(strategy.initial, EPSILON)
    if not first:
        return StrategyReport(False, None, (), "no initial decision")
    total = 0
    for output, target in first:
        decision = output[0]
        result = output[1:] or None
        below = explore(target, [(EPSILON, decision, result)])
        if isinstance(below, StrategyReport):
            return below
        total = max(total, 1 + below)
    return StrategyReport(True, total, None, None)


@dataclass(frozen=True)
class RandomSeeded:
    seed: int = 0


@dataclass(frozen=True)
class Adversarial:
    pass


@dataclass(frozen=True)
class PlayRound:
    event: str
    decision: str
    result: str | None
    estimate: StateEstimate
    true_state: object


@dataclass(frozen=True)
class PlayTrace:
    rounds: tuple
    outcome: str  # "violated", "exhausted", or "stalled"

    @property
    def final_estimate(self) -> StateEstimate | None:
        return self.rounds[-1].estimate if self.rounds else None

    @property
    def final_true_state(self):
        return self.rounds[-1].true_state if self.rounds else None


def simulate_play(
    g: Nfa,
    strategy: MealyStrategy,
    system_policy,
    max_rounds: int = 1000,
) -> PlayTrace:
    """Run one play: the system's events are drawn from those enabled at the
    true plant state (tracked internally), attack results come from the true
    state's membership in the attacked set, and the play stops at the first
    violating estimate."""
    attack = strategy.attack
    rng = random.Random(system_policy.seed) if isinstance(system_policy, RandomSeeded) else None

    def advance(state: AObsState, event: str, true_state) -> tuple:
        """Resolve one round at ``state``: the strategy's decision for
        ``event``, the result induced by the true plant state, and the next
        strategy state."""
        decision = strategy.decision(state, event)
        if decision is None:
            raise StrategyError(f"strategy has no edge for event {event!r} at {state}")
        if decision == ATTACK_NO:
            return ATTACK_NO, None, strategy.successor(state, event)
        result = "1" if true_state in attack.attacked else "0"
        target = strategy.successor(state, event, result)
        if target is None:
            raise StrategyError(f"strategy misses result {result!r} for event {event!r} at {state}")
        return ATTACK_YES, result, target

    def score(state: AObsState, event: str, true_state) -> float:
        return strategy.ranks.get(advance(state, event, true_state)[2], INFINITE_RANK)

    initial_candidates = sorted(g.initial, key=str)
    if rng is not None:
        true_state = rng.choice(initial_candidates)
    else:
        true_state = max(
            initial_candidates,
            key=lambda cand: score(strategy.initial, EPSILON, cand),
        )

    rounds: list = []
    decision, result, current = advance(strategy.initial, EPSILON, true_state)
    rounds.append(PlayRound(EPSILON, decision, result, current.estimate, true_state))

    while len(rounds) < max_rounds:
        if violation_predicate(current.estimate, attack):
            return PlayTrace(tuple(rounds), "violated")
        moves = [
            (event, target)
            for event in sorted(g.enabled(true_state))
            for target in sorted(g.successors(true_state, event), key=str)
        ]
        if not moves:
            return PlayTrace(tuple(rounds), "stalled")
        if rng is not None:
            event, true_state = rng.choice(moves)
        else:
            event, true_state = max(moves, key=lambda mv: score(current, mv[0], mv[1]))
        decision, result, current = advance(current, event, true_state)
        rounds.append(PlayRound(event, decision, result, current.estimate, true_state))
    if violation_predicate(current.estimate, attack):
        return PlayTrace(tuple(rounds), "violated")
    return PlayTrace(tuple(rounds), "exhausted")
