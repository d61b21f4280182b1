"""Intruder capability description and the auxiliary game automata that
wrap a plant for analysis: the attacked plant, the attack-budget counter,
the turn structure, and their bounded composition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .automata import Dfa, Nfa, compose

ATTACK_YES = "Y"
ATTACK_NO = "N"
RESULT_IN = "1"
RESULT_OUT = "0"
EPSILON = "ε"

RESULT_LABELS = (RESULT_OUT, RESULT_IN)
RESERVED_LABELS = frozenset({ATTACK_YES, ATTACK_NO, RESULT_IN, RESULT_OUT, EPSILON})

PHASE_DECIDE = "A"
PHASE_AWAIT = "AY"
PHASE_SYSTEM = "S"
GAME_PHASES = (PHASE_DECIDE, PHASE_AWAIT, PHASE_SYSTEM)


def check_plant_events(events: Iterable[str]) -> None:
    clash = frozenset(events) & RESERVED_LABELS
    if clash:
        raise ValueError(
            f"plant events {sorted(clash)!r} collide with the reserved labels "
            f"{sorted(RESERVED_LABELS)!r}"
        )


@dataclass(frozen=True, order=True)
class GameCounter:
    """Attack bookkeeping: ``count`` completed attacks, with an empty tag for
    a plain count, "N" while waiting after declining, "Y" while an attack
    result is pending."""

    count: int
    tag: str = ""

    def __post_init__(self):
        if not isinstance(self.count, int) or self.count < 0:
            raise ValueError("attack count must be a non-negative integer")
        if self.tag not in ("", "N", "Y"):
            raise ValueError(f"unknown counter tag {self.tag!r}")

    @classmethod
    def plain(cls, count: int) -> "GameCounter":
        return cls(count, "")

    @classmethod
    def waiting(cls, count: int) -> "GameCounter":
        return cls(count, "N")

    @classmethod
    def attacking(cls, count: int) -> "GameCounter":
        return cls(count, "Y")

    @property
    def is_plain(self) -> bool:
        return self.tag == ""

    @property
    def is_waiting(self) -> bool:
        return self.tag == "N"

    @property
    def is_attacking(self) -> bool:
        return self.tag == "Y"

    def __str__(self) -> str:
        return f"{self.count}{self.tag}"


@dataclass(frozen=True)
class AttackSpec:
    """What the intruder can do: the queried state set, the total budget of
    binary state attacks, and the violation mode (anonymity, or opacity with
    a secret set)."""

    attacked: frozenset
    budget: int
    secret: frozenset | None = None

    def __post_init__(self):
        object.__setattr__(self, "attacked", frozenset(self.attacked))
        if self.secret is not None:
            object.__setattr__(self, "secret", frozenset(self.secret))
        if not isinstance(self.budget, int) or self.budget < 0:
            raise ValueError("the attack budget must be a non-negative integer")

    @property
    def mode(self) -> str:
        return "anonymity" if self.secret is None else "opacity"

    def validate_for(self, plant: Nfa) -> None:
        check_plant_events(plant.events)
        if not self.attacked <= plant.states:
            extra = sorted(self.attacked - plant.states, key=str)
            raise ValueError(f"attacked states {extra!r} are not plant states")
        if self.secret is not None:
            if not self.secret <= plant.states or self.secret == plant.states:
                raise ValueError("secret states must form a proper subset of the plant states")


def system_attack_model(g: Nfa, attacked: Iterable) -> Nfa:
    """The plant with one result self-loop per state: "1" at attacked states,
    "0" everywhere else."""
    check_plant_events(g.events)
    attacked = frozenset(attacked)
    if not attacked <= g.states:
        extra = sorted(attacked - g.states, key=str)
        raise ValueError(f"attacked states {extra!r} are not plant states")
    loops = {
        (state, RESULT_IN if state in attacked else RESULT_OUT, state)
        for state in g.states
    }
    return Nfa(
        g.states,
        g.events | {RESULT_IN, RESULT_OUT},
        g.transitions | loops,
        g.initial,
    )


def number_attack_model(events: Iterable[str], budget: int) -> Dfa:
    """Counter automaton for at most ``budget`` attacks.

    Plain counts 0..D, waiting counts 0N..DN, and pending counts
    0Y..(D-1)Y; a result consumes the pending attack and increments the
    completed count.
    """
    events = frozenset(events)
    check_plant_events(events)
    if not isinstance(budget, int) or budget < 0:
        raise ValueError("the attack budget must be a non-negative integer")
    plain = [GameCounter.plain(k) for k in range(budget + 1)]
    waiting = [GameCounter.waiting(k) for k in range(budget + 1)]
    attacking = [GameCounter.attacking(k) for k in range(budget)]
    transitions: dict = {}
    for k in range(budget):
        transitions[(plain[k], ATTACK_YES)] = attacking[k]
    for k in range(budget + 1):
        transitions[(plain[k], ATTACK_NO)] = waiting[k]
    for k in range(1, budget + 1):
        for event in events:
            transitions[(plain[k], event)] = plain[k]
    for k in range(budget + 1):
        for event in events:
            transitions[(waiting[k], event)] = plain[k]
    for k in range(budget):
        for result in RESULT_LABELS:
            transitions[(attacking[k], result)] = plain[k + 1]
    return Dfa(
        plain + waiting + attacking,
        events | {ATTACK_YES, ATTACK_NO, RESULT_IN, RESULT_OUT},
        transitions,
        plain[0],
    )


def game_structure(events: Iterable[str]) -> Dfa:
    """Turn structure of one attack round: decide (A), await a result (AY),
    then let the system move (S)."""
    events = frozenset(events)
    check_plant_events(events)
    transitions: dict = {
        (PHASE_DECIDE, ATTACK_NO): PHASE_SYSTEM,
        (PHASE_DECIDE, ATTACK_YES): PHASE_AWAIT,
        (PHASE_AWAIT, RESULT_OUT): PHASE_SYSTEM,
        (PHASE_AWAIT, RESULT_IN): PHASE_SYSTEM,
    }
    for event in events:
        transitions[(PHASE_SYSTEM, event)] = PHASE_DECIDE
    return Dfa(
        GAME_PHASES,
        events | {ATTACK_YES, ATTACK_NO, RESULT_IN, RESULT_OUT},
        transitions,
        PHASE_DECIDE,
    )


def bounded_game_structure(events: Iterable[str], budget: int) -> Dfa:
    """Turn structure refined with the attack counter; states are
    (phase, counter) pairs and only 4*budget+2 of them are reachable."""
    events = frozenset(events)
    return compose(game_structure(events), number_attack_model(events, budget))
