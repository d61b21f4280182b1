"""Deciding whether the intruder can force a violation no matter what the
system does: per-type vulnerability predicates, the iterative pruning that
yields the final verifier, and the enforcement verdict."""

from __future__ import annotations

from .aobs import AObsState, AttackObserver, StateType
from .attackmodel import ATTACK_NO, ATTACK_YES, AttackSpec, RESULT_LABELS
from .automata import Nfa
from .violation import SubAutomaton, check_violation


def is_vulnerable_type1(v: SubAutomaton, state: AObsState) -> bool:
    """A kept system-move state survives when no system event can leave the
    kept region: every event enabled in the full attack observer must have
    its transition retained."""
    for label in v.enabled_in_parent(state):
        if v.step(state, label) is None:
            return False
    return True


def is_vulnerable_type2(
    v: SubAutomaton,
    aobs: AttackObserver,
    state: AObsState,
    strict_paper: bool = False,
) -> bool:
    """A kept result-wait state survives when every possible attack result
    keeps the intruder inside the kept region, on a surviving system-move
    state.

    By default the results quantified over are those defined in the full
    attack observer, so a pruned result branch disqualifies the state; with
    ``strict_paper`` only results still present in the restriction are
    considered, which lets a state pass vacuously after losing a branch.
    """
    source = v if strict_paper else aobs
    for result in RESULT_LABELS:
        if source.step(state, result) is None:
            continue
        target = v.step(state, result)
        if target is None or not is_vulnerable_type1(v, target):
            return False
    return True


def is_vulnerable_type3(v: SubAutomaton, state: AObsState, strict_paper: bool = False) -> bool:
    """A kept decision state survives when at least one of its decisions
    leads to a surviving state."""
    no_target = v.step(state, ATTACK_NO)
    if no_target is not None and is_vulnerable_type1(v, no_target):
        return True
    yes_target = v.step(state, ATTACK_YES)
    if yes_target is not None and is_vulnerable_type2(v, v.parent, yes_target, strict_paper):
        return True
    return False


def final_verifier(v: SubAutomaton, aobs: AttackObserver, strict_paper: bool = False) -> SubAutomaton:
    """Iteratively prune the verifier down to the states the intruder can
    hold: remove non-surviving system-move states, then result-wait states,
    then decision states, re-taking the accessible part after each removal,
    until every kept system-move state survives."""
    current = v
    while True:
        bad = [s for s in current.states_of_type(StateType.TYPE_I) if not is_vulnerable_type1(current, s)]
        if not bad:
            return current
        current = current.drop(bad)
        bad = [
            s
            for s in current.states_of_type(StateType.TYPE_II)
            if not is_vulnerable_type2(current, aobs, s, strict_paper)
        ]
        current = current.drop(bad)
        bad = [
            s
            for s in current.states_of_type(StateType.TYPE_III)
            if not is_vulnerable_type3(current, s, strict_paper)
        ]
        current = current.drop(bad)


def check_enforced(
    g: Nfa, attack: AttackSpec, strict_paper: bool = False
) -> tuple[bool, SubAutomaton]:
    """Full pipeline: the violation verifier pruned to the holdable region.
    The verdict is the nonemptiness of the final verifier."""
    _, verifier = check_violation(g, attack)
    fv = final_verifier(verifier, verifier.parent, strict_paper)
    return (not fv.is_empty, fv)
