"""The deterministic game graph every check runs on: estimates tracked
through attack rounds, with states classified by whose move is pending."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .attackmodel import (
    AttackSpec,
    GameCounter,
    PHASE_AWAIT,
    PHASE_SYSTEM,
    bounded_game_structure,
    system_attack_model,
)
from .automata import Nfa, StateEstimate, compose, observer

_EMPTY: frozenset = frozenset()


class StateType(Enum):
    TYPE_I = "I"      # system to move, estimate just updated
    TYPE_II = "II"    # attack launched, result pending
    TYPE_III = "III"  # intruder deciding whether to attack


@dataclass(frozen=True, order=True)
class AObsState:
    phase: str
    counter: GameCounter
    estimate: StateEstimate

    def __str__(self) -> str:
        return f"({self.phase},{self.counter},{self.estimate})"


def classify(state: AObsState) -> StateType:
    if state.phase == PHASE_SYSTEM:
        return StateType.TYPE_I
    if state.phase == PHASE_AWAIT:
        return StateType.TYPE_II
    return StateType.TYPE_III


class AttackObserver:
    """Deterministic graph of (phase, counter, estimate) triples, with a
    reverse-adjacency index for the backward computations downstream."""

    def __init__(
        self,
        plant: Nfa,
        attack: AttackSpec,
        states: Iterable[AObsState],
        events: Iterable[str],
        transitions: Mapping[tuple, AObsState],
        initial: AObsState,
    ):
        self.plant = plant
        self.attack = attack
        self.states = frozenset(states)
        self.events = frozenset(events)
        self.transitions = dict(transitions)
        self.initial = initial
        enabled: dict = {}
        preds: dict = {}
        for (src, label), dst in self.transitions.items():
            enabled.setdefault(src, set()).add(label)
            preds.setdefault(dst, []).append((src, label))
        self._enabled = {src: frozenset(labels) for src, labels in enabled.items()}
        self._preds = {dst: tuple(sorted(entries)) for dst, entries in preds.items()}

    def enabled(self, state: AObsState) -> frozenset:
        return self._enabled.get(state, _EMPTY)

    def step(self, state: AObsState, label: str) -> AObsState | None:
        return self.transitions.get((state, label))

    def run(self, labels: Iterable[str]) -> AObsState | None:
        state = self.initial
        for label in labels:
            if state is None:
                return None
            state = self.transitions.get((state, label))
        return state

    def predecessors(self, state: AObsState) -> tuple:
        return self._preds.get(state, ())

    def states_of_type(self, kind: StateType) -> tuple:
        return tuple(s for s in sorted(self.states) if classify(s) is kind)

    def __repr__(self) -> str:
        return f"AttackObserver(states={len(self.states)}, transitions={len(self.transitions)})"


def build_attack_observer(g: Nfa, attack: AttackSpec) -> AttackObserver:
    """Compose the bounded turn structure with the observer of the attacked
    plant and flatten the pair states into (phase, counter, estimate) triples."""
    attack.validate_for(g)
    attacked_plant = system_attack_model(g, attack.attacked)
    estimator = observer(attacked_plant)
    game = bounded_game_structure(g.events, attack.budget)
    composed = compose(game, estimator)

    def flatten(pair) -> AObsState:
        (phase, counter), estimate = pair
        return AObsState(phase, counter, estimate)

    states = {flatten(s) for s in composed.states}
    transitions = {
        (flatten(src), label): flatten(dst)
        for (src, label), dst in composed.transitions.items()
    }
    return AttackObserver(
        g, attack, states, composed.events, transitions, flatten(composed.initial)
    )


def enabled_in_aobs(aobs: AttackObserver, state: AObsState) -> frozenset:
    """Labels with a defined outgoing transition at ``state`` in the full
    attack observer."""
    if state not in aobs.states:
        raise ValueError(f"{state} is not an attack-observer state")
    return aobs.enabled(state)
