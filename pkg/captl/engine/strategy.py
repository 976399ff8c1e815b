# -*- coding: utf-8 -*-
"""
    captl.engine.strategy
    ~~~~~~~~~~~~~~~~~~~~~

    Strategy extraction from value vectors and context checks.

    Picking any argmax action is not enough for maximal reachability:
    inside an end component every action looping back has the same value
    as the exit, and a strategy that only loops never reaches the
    target. Maximizing strategies are therefore built as attractors,
    each state choosing a near-optimal action that moves closer to the
    target.

    :license: BSD, see LICENSE for more details.
"""
import logging
import math
import warnings

from captl.config import BOUNDARY_FACTOR, PROB_TOLERANCE
from captl.engine.core import StrategyMap, states_of
from captl.engine.reach import choice_graph, choice_values
from captl.exceptions import BoundaryWarning, SynthesisError


log = logging.getLogger(__name__)


def _choice_table(mdp, values, succ):
    """Per state, ``[(action_index, q_value, successors), ...]``."""
    q = choice_values(mdp, values)
    offsets = mdp.matrix.offsets
    table = {}
    for state in mdp.states:
        start = offsets[state]
        table[state] = [(a, float(q[start + i]), succ[state, a])
                        for i, (a, _) in enumerate(mdp.choices(state))]
    return table


def _attractor(preds, candidates, reached, allowed):
    """Grows `reached` backwards over `candidates`; a state joins with
    its lowest-index allowed action that has a successor already
    reached. Returns the chosen action per attracted state."""
    reached = set(reached)
    layer = set(reached)
    choice = {}
    while layer:
        frontier = sorted(set(s for t in layer for s, _ in preds[t]
                              if s in candidates and s not in reached))
        layer = set()
        for state in frontier:
            for a, _, succ in allowed(state):
                if succ & reached:
                    choice[state] = a
                    layer.add(state)
                    break
        reached |= layer
    return choice


def extract_strategy(mdp, x, target_or_T=None):
    """Returns a :class:`StrategyMap` over the non-deadlock states of
    `x`'s domain that realizes the values of `x`.

    `target_or_T` defaults to the target the vector was computed for
    (the accepting end components for persistence vectors).
    """
    if x.reach_values is None:
        raise SynthesisError('no strategy can be extracted for %s'
                             % x.objective_id)
    goal = set(states_of(target_or_T) if target_or_T is not None
               else x.reach_target)
    succ, preds = choice_graph(mdp)
    table = _choice_table(mdp, x.reach_values, succ)
    domain = set(s for s in x.domain if not mdp.is_deadlock(s))
    choice = {}

    for state in domain:
        if state in x.end_components:
            if x.end_components[state] is not None:
                choice[state] = x.end_components[state]
        elif state in goal:
            choice[state] = table[state][0][0]

    # a vector solved through its dual keeps prob0/prob1 of its own values
    if x.direction == x.reach_direction:
        zero, sure = set(x.prob0), set(x.prob1)
    else:
        zero, sure = set(x.prob1), set(x.prob0)

    if x.reach_direction == 'max':
        _maximizing(preds, x.epsilon, table, domain, goal, zero, sure, choice)
    else:
        _minimizing(table, domain, zero, choice)

    for state in domain:
        if state not in choice:
            choice[state] = table[state][0][0]
    return StrategyMap((s, mdp.actions[a]) for s, a in choice.items())


def _maximizing(preds, epsilon, table, domain, goal, zero, sure, choice):
    # almost-sure region first: only actions that stay inside it
    sure = sure | goal
    candidates = set(s for s in domain if s in sure and s not in choice)
    choice.update(_attractor(
        preds, candidates, goal,
        lambda s: [c for c in table[s] if c[2] <= sure]))

    for tolerance in (PROB_TOLERANCE, BOUNDARY_FACTOR * epsilon,
                      math.sqrt(epsilon)):
        candidates = set(s for s in domain
                         if s not in choice and s not in zero)
        if not candidates:
            break

        def near_optimal(state, tolerance=tolerance):
            best = max(q for _, q, _ in table[state])
            return [c for c in table[state] if c[1] >= best - tolerance]

        found = _attractor(preds, candidates, goal | set(choice), near_optimal)
        choice.update(found)
        if found:
            log.debug('attracted %d state(s) at tolerance %g',
                      len(found), tolerance)

    for state in domain:
        if state not in choice and state not in zero:
            best = max(q for _, q, _ in table[state])
            choice[state] = next(a for a, q, _ in table[state]
                                 if q >= best - PROB_TOLERANCE)


def _minimizing(table, domain, zero, choice):
    for state in domain:
        if state in choice:
            continue
        if state in zero:
            staying = [a for a, _, succ in table[state] if succ <= zero]
            if staying:
                choice[state] = staying[0]
                continue
        best = min(q for _, q, _ in table[state])
        choice[state] = next(a for a, q, _ in table[state]
                             if q <= best + PROB_TOLERANCE)


def verify_context(mdp, s, x, interval):
    """Whether ``x[s]`` lies in `interval`, compared without slack.

    Emits a :class:`BoundaryWarning` when the value is within
    ``BOUNDARY_FACTOR * epsilon`` of an endpoint that separates the
    interval from other values.
    """
    value = x[s]
    window = BOUNDARY_FACTOR * x.epsilon
    endpoints = []
    if interval.lo > 0 or interval.lo_strict:
        endpoints.append(interval.lo)
    if interval.hi < 1 or interval.hi_strict:
        endpoints.append(interval.hi)
    near = [e for e in endpoints if abs(value - e) < window]
    if near:
        warnings.warn(BoundaryWarning(
            'value %.9f of %s at state %s is within %g of endpoint %g'
            % (value, x.objective_id, mdp.name(s), window, near[0])),
            stacklevel=2)
    return interval.contains(value)
