# -*- coding: utf-8 -*-
"""
    captl.engine.persistence
    ~~~~~~~~~~~~~~~~~~~~~~~~

    Persistence objectives ``F G B`` through maximal end components.

    An end component inside `B` lets a strategy stay in `B` forever with
    probability 1, so ``Pmax[F G B]`` is the maximal probability of
    reaching the union of the maximal end components contained in `B`.
    The minimizing case is solved through its dual,
    ``Pmin[F G B] = 1 - Pmax[G F !B]``.

    :license: BSD, see LICENSE for more details.
"""
import logging

import networkx as nx

from captl.config import DEFAULT_EPSILON, DEFAULT_MAX_ITER
from captl.engine.core import ValueVector, states_of
from captl.engine.reach import max_reach_values
from captl.mdp import StateSet


log = logging.getLogger(__name__)


def _retained(mdp, state, within):
    """Actions of `state` whose every successor lies in `within`. A
    deadlock keeps an implicit self-loop, written ``None``."""
    if mdp.is_deadlock(state):
        return [None]
    return [a for a, branches in mdp.choices(state)
            if all(t in within for t, _ in branches)]


def _targets(mdp, state, action):
    if action is None:
        return (state,)
    for a, branches in mdp.choices(state):
        if a == action:
            return tuple(t for t, _ in branches)
    return ()


def mec_decomposition(mdp, restrict_to=None):
    """Maximal end components of the sub-model induced by
    `restrict_to` (all states by default).

    Returns a list of ``(StateSet, {state: (action_index, ...)})``
    pairs ordered by smallest member; each state maps to the actions
    that keep it inside its component.
    """
    states = set(mdp.states if restrict_to is None else states_of(restrict_to))
    actions = dict((s, _retained(mdp, s, states)) for s in states)
    while True:
        states = set(s for s in states if actions[s])
        graph = nx.DiGraph()
        graph.add_nodes_from(states)
        for state in states:
            for action in actions[state]:
                graph.add_edges_from((state, t) for t in
                                     _targets(mdp, state, action)
                                     if t in states)
        component_of = {}
        components = list(nx.strongly_connected_components(graph))
        for i, component in enumerate(components):
            for state in component:
                component_of[state] = i

        changed = False
        for state in states:
            home = component_of[state]
            kept = [a for a in actions[state]
                    if all(component_of.get(t) == home
                           for t in _targets(mdp, state, a))]
            if len(kept) != len(actions[state]):
                actions[state] = kept
                changed = True
        if not changed:
            break

    result = []
    for component in components:
        members = StateSet(component)
        result.append((members, dict((s, tuple(actions[s])) for s in members)))
    result.sort(key=lambda pair: min(pair[0]))
    log.debug('found %d maximal end component(s)', len(result))
    return result


def _attract_cycle(mdp, members, actions, goal):
    """Picks one retained action per member so that every run inside
    the component visits `goal` infinitely often."""
    choice = {}
    reached = set(s for s in members if s in goal)
    for state in reached:
        choice[state] = actions[state][0]
    frontier = True
    while frontier:
        frontier = False
        for state in members:
            if state in reached:
                continue
            for action in actions[state]:
                if reached.intersection(_targets(mdp, state, action)):
                    choice[state] = action
                    reached.add(state)
                    frontier = True
                    break
    return choice


def persistence_values(mdp, b_set, epsilon=DEFAULT_EPSILON,
                       max_iter=DEFAULT_MAX_ITER, direction='max', root=None,
                       objective_id=None):
    """Optimal probability of ``F G B`` per state."""
    b_states = states_of(b_set)
    if direction == 'max':
        components = mec_decomposition(mdp, b_states)
        end_components = {}
        for members, actions in components:
            for state in members:
                end_components[state] = actions[state][0]
        accepting = StateSet(end_components)
        vector = max_reach_values(mdp, accepting, epsilon=epsilon,
                                  max_iter=max_iter, root=root,
                                  objective_id=objective_id or 'Pmax[F G B]')
        vector.end_components = end_components
        return vector

    # a run escapes F G B iff it can visit !B infinitely often
    others = set(s for s in mdp.states if s not in b_states)
    end_components = {}
    for members, actions in mec_decomposition(mdp):
        if others.intersection(members):
            end_components.update(_attract_cycle(mdp, members, actions, others))
    recurrent = StateSet(end_components)
    dual = max_reach_values(mdp, recurrent, epsilon=epsilon,
                            max_iter=max_iter, root=root)
    return ValueVector(1.0 - dual.values, dual.domain,
                       objective_id or 'Pmin[F G B]', epsilon, 'min',
                       reach_values=dual.values, reach_direction='max',
                       reach_target=recurrent,
                       prob0=dual.prob1, prob1=dual.prob0,
                       end_components=end_components,
                       iterations=dual.iterations)
