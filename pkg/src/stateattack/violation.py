"""Deciding whether the intruder can ever pin the system down: the violating
predicate on estimates, the backward closure of states from which a violation
stays reachable, and the verifier built from it."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .aobs import AObsState, AttackObserver, StateType, build_attack_observer, classify
from .attackmodel import AttackSpec, RESULT_LABELS
from .automata import Nfa, StateEstimate

_EMPTY: frozenset = frozenset()


def violation_predicate(estimate: StateEstimate, attack: AttackSpec) -> bool:
    """Does this estimate already give the intruder what it wants?

    Anonymity mode: the estimate is a singleton. Opacity mode: every member
    is secret.
    """
    if attack.secret is None:
        return len(estimate) == 1
    return estimate.issubset(attack.secret)


class SubAutomaton:
    """A restriction of an attack observer to a subset of its states, with the
    parent kept around for enabledness queries on the full graph.

    Only the part reachable from the parent's initial state is kept; when the
    initial state itself is not retained the automaton is empty.
    """

    def __init__(self, parent: AttackObserver, kept: frozenset, initial, transitions: dict):
        self.parent = parent
        self.kept = kept
        self.initial = initial
        self.transitions = transitions
        enabled: dict = {}
        for (src, label) in transitions:
            enabled.setdefault(src, set()).add(label)
        self._enabled = {src: frozenset(labels) for src, labels in enabled.items()}

    @classmethod
    def restrict(cls, parent: AttackObserver, keep: Iterable[AObsState]) -> "SubAutomaton":
        keep = frozenset(keep) & parent.states
        if parent.initial not in keep:
            return cls(parent, frozenset(), None, {})
        reached = {parent.initial}
        frontier = deque([parent.initial])
        transitions: dict = {}
        while frontier:
            state = frontier.popleft()
            for label in parent.enabled(state):
                target = parent.step(state, label)
                if target not in keep:
                    continue
                transitions[(state, label)] = target
                if target not in reached:
                    reached.add(target)
                    frontier.append(target)
        return cls(parent, frozenset(reached), parent.initial, transitions)

    @property
    def is_empty(self) -> bool:
        return self.initial is None

    @property
    def states(self) -> frozenset:
        return self.kept

    @property
    def events(self) -> frozenset:
        return self.parent.events

    def step(self, state: AObsState, label: str):
        return self.transitions.get((state, label))

    def enabled(self, state: AObsState) -> frozenset:
        return self._enabled.get(state, _EMPTY)

    def enabled_in_parent(self, state: AObsState) -> frozenset:
        return self.parent.enabled(state)

    def states_of_type(self, kind: StateType) -> tuple:
        return tuple(s for s in sorted(self.kept) if classify(s) is kind)

    def drop(self, removed: Iterable[AObsState]) -> "SubAutomaton":
        """Remove states and re-take the accessible part."""
        removed = frozenset(removed)
        if not removed:
            return self
        return SubAutomaton.restrict(self.parent, self.kept - removed)

    def __repr__(self) -> str:
        return f"SubAutomaton(states={len(self.kept)}, transitions={len(self.transitions)})"


def intermediate_violating_fixpoint(aobs: AttackObserver, attack: AttackSpec) -> frozenset:
    """Least set of attack-observer states from which the intruder can still
    steer the play to a violating estimate.

    Seeded with the violating system-move states; a result-wait state joins
    once every defined result stays inside, a decision state once some
    decision leads inside, and a system-move state once some event leads
    inside. Computed as a worklist over the reverse adjacency.
    """
    closure: set = set()
    queue: deque = deque()
    for state in aobs.states:
        if classify(state) is StateType.TYPE_I and violation_predicate(state.estimate, attack):
            closure.add(state)
            queue.append(state)
    # Result-wait states need every defined result inside; track what's missing.
    pending = {
        state: sum(1 for r in RESULT_LABELS if aobs.step(state, r) is not None)
        for state in aobs.states
        if classify(state) is StateType.TYPE_II
    }
    while queue:
        state = queue.popleft()
        for pred, _label in aobs.predecessors(state):
            if pred in closure:
                continue
            if classify(pred) is StateType.TYPE_II:
                pending[pred] -= 1
                if pending[pred] > 0:
                    continue
            closure.add(pred)
            queue.append(pred)
    return frozenset(closure)


def build_verifier(aobs: AttackObserver, violating_reachable: Iterable[AObsState]) -> SubAutomaton:
    """Restrict the attack observer to the violating-reachable states."""
    return SubAutomaton.restrict(aobs, violating_reachable)


def witness_labels(verifier: SubAutomaton, attack: AttackSpec) -> list | None:
    """Shortest label sequence in the verifier from its initial state to a
    violating estimate, or None when the verifier is empty."""
    if verifier.is_empty:
        return None
    seen = {verifier.initial}
    frontier: deque = deque([(verifier.initial, [])])
    while frontier:
        state, path = frontier.popleft()
        if classify(state) is StateType.TYPE_I and violation_predicate(state.estimate, attack):
            return path
        for label in sorted(verifier.enabled(state)):
            target = verifier.step(state, label)
            if target not in seen:
                seen.add(target)
                frontier.append((target, path + [label]))
    return None


def check_violation(g: Nfa, attack: AttackSpec) -> tuple[bool, SubAutomaton]:
    """Full pipeline: build the attack observer, close backwards from the
    violating estimates, and restrict. The verdict is the nonemptiness of the
    resulting verifier."""
    aobs = build_attack_observer(g, attack)
    reachable = intermediate_violating_fixpoint(aobs, attack)
    verifier = build_verifier(aobs, reachable)
    return (not verifier.is_empty, verifier)
