"""Shared fixtures: the ten-state running example, compact constructors for
attack-observer states, and the deterministic random-instance corpus."""

import random

from stateattack import AttackSpec, Nfa
from stateattack.aobs import AObsState
from stateattack.attackmodel import GameCounter
from stateattack.automata import StateEstimate

TEN_STATE_TRANSITIONS = [
    ("1", "a", "2"), ("1", "a", "3"), ("1", "d", "6"), ("1", "d", "9"),
    ("2", "b", "4"), ("2", "c", "5"),
    ("3", "b", "5"), ("3", "c", "4"),
    ("4", "c", "5"), ("5", "c", "4"),
    ("6", "b", "7"), ("6", "b", "8"),
    ("7", "c", "8"), ("8", "c", "7"),
    ("9", "b", "7"),
    ("10", "d", "9"), ("10", "a", "2"),
]


def ten_state_plant() -> Nfa:
    return Nfa(
        [str(i) for i in range(1, 11)],
        ["a", "b", "c", "d"],
        TEN_STATE_TRANSITIONS,
        ["1", "10"],
    )


ATTACK_24 = AttackSpec(frozenset({"2", "4"}), 1)
ATTACK_2489 = AttackSpec(frozenset({"2", "4", "8", "9"}), 1)


def est(text: str) -> StateEstimate:
    return StateEstimate(tuple(text.split(",")))


def ctr(text: str) -> GameCounter:
    if text.endswith(("N", "Y")):
        return GameCounter(int(text[:-1]), text[-1])
    return GameCounter(int(text))


def aob(phase: str, counter: str, members: str) -> AObsState:
    return AObsState(phase, ctr(counter), est(members))


MASTER_SEED = 20260809


def random_instance(rng: random.Random):
    """One random deadlock-free plant (2..5 states, 1..3 events) with a random
    attack description (budget 0..2, anonymity or opacity)."""
    n = rng.randint(2, 5)
    states = [str(i) for i in range(1, n + 1)]
    events = ["a", "b", "c"][: rng.randint(1, 3)]
    transitions = set()
    for s in states:
        for _ in range(rng.randint(1, 2)):
            transitions.add((s, rng.choice(events), rng.choice(states)))
    for _ in range(rng.randint(0, n)):
        transitions.add((rng.choice(states), rng.choice(events), rng.choice(states)))
    initial = rng.sample(states, rng.randint(1, n))
    plant = Nfa(states, events, transitions, initial)
    attacked = frozenset(s for s in states if rng.random() < 0.45)
    budget = rng.randint(0, 2)
    if rng.random() < 0.35:
        secret = frozenset(rng.sample(states, rng.randint(0, n - 1)))
        return plant, AttackSpec(attacked, budget, secret)
    return plant, AttackSpec(attacked, budget)


def corpus(count: int = 220, seed: int = MASTER_SEED) -> list:
    rng = random.Random(seed)
    return [random_instance(rng) for _ in range(count)]
