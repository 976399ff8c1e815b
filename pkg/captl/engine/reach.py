# -*- coding: utf-8 -*-
"""
    captl.engine.reach
    ~~~~~~~~~~~~~~~~~~

    Optimal reachability: qualitative graph precomputation and value
    iteration from the zero vector.

    :license: BSD, see LICENSE for more details.
"""
import logging

import numpy as np

from captl.config import DEFAULT_EPSILON, DEFAULT_MAX_ITER
from captl.engine.core import ValueVector, states_of
from captl.exceptions import ConvergenceError
from captl.mdp import StateSet, check_state, reach


log = logging.getLogger(__name__)


def choice_graph(mdp):
    """Returns the successor set of every choice, keyed by
    ``(state, action_index)``, and the predecessor choices of every
    state."""
    succ = {}
    preds = dict((s, []) for s in mdp.states)
    for state in mdp.states:
        for a, branches in mdp.choices(state):
            targets = frozenset(t for t, _ in branches)
            succ[state, a] = targets
            for target in targets:
                preds[target].append((state, a))
    return succ, preds


# ----------------------------------------------------------------------
# Qualitative precomputation
# ----------------------------------------------------------------------
def prob0_max(mdp, target):
    """States from which no strategy reaches `target`."""
    _, preds = choice_graph(mdp)
    can_reach = set(states_of(target))
    stack = list(can_reach)
    while stack:
        for state, _ in preds[stack.pop()]:
            if state not in can_reach:
                can_reach.add(state)
                stack.append(state)
    return StateSet(s for s in mdp.states if s not in can_reach)


def prob1_max(mdp, target):
    """States from which some strategy reaches `target` almost
    surely."""
    succ, preds = choice_graph(mdp)
    target = set(states_of(target))
    candidates = set(mdp.states)
    while True:
        attracted = set(target)
        stack = list(target)
        while stack:
            for state, a in preds[stack.pop()]:
                if state in attracted or state not in candidates:
                    continue
                if succ[state, a] <= candidates:
                    attracted.add(state)
                    stack.append(state)
        if attracted == candidates:
            return StateSet(candidates)
        candidates = attracted


def prob0_min(mdp, target):
    """States where some strategy avoids `target` surely."""
    _, preds = choice_graph(mdp)
    remaining = dict((s, len(mdp.choices(s))) for s in mdp.states)
    hit = set()
    forced = set(states_of(target))
    stack = list(forced)
    while stack:
        for state, a in preds[stack.pop()]:
            if state in forced or (state, a) in hit:
                continue
            hit.add((state, a))
            remaining[state] -= 1
            if remaining[state] == 0:
                forced.add(state)
                stack.append(state)
    return StateSet(s for s in mdp.states if s not in forced)


def prob1_min(mdp, target):
    """States where every strategy reaches `target` almost surely."""
    _, preds = choice_graph(mdp)
    target = set(states_of(target))
    escaping = set(prob0_min(mdp, target))
    stack = list(escaping)
    while stack:
        for state, _ in preds[stack.pop()]:
            if state not in escaping and state not in target:
                escaping.add(state)
                stack.append(state)
    return StateSet(s for s in mdp.states if s not in escaping)


# ----------------------------------------------------------------------
# Value iteration
# ----------------------------------------------------------------------
def choice_values(mdp, x):
    """One-step expected value of every choice of the choice matrix."""
    m = mdp.matrix
    return np.bincount(m.branch_choice, weights=m.branch_prob * x[m.branch_target],
                       minlength=len(m.choice_state))


def bellman_backup(mdp, x, direction):
    """Optimal one-step backup of `x`; deadlock states keep their
    value."""
    m = mdp.matrix
    result = np.array(x, dtype=np.float64)
    if len(m.active):
        q = choice_values(mdp, x)
        reducer = np.maximum if direction == 'max' else np.minimum
        result[m.active] = reducer.reduceat(q, m.offsets[m.active])
    return result


def iterate_values(mdp, ones, zeros=(), direction='max',
                   max_iter=DEFAULT_MAX_ITER):
    """Yields successive value iteration vectors, starting from the
    vector that is 1 on `ones` and 0 elsewhere. States in `ones` and
    `zeros` stay pinned.
    """
    ones = np.array(sorted(ones), dtype=np.int64)
    zeros = np.array(sorted(zeros), dtype=np.int64)
    x = np.zeros(mdp.num_states)
    x[ones] = 1.0
    yield x
    for _ in range(max_iter):
        x = np.clip(bellman_backup(mdp, x, direction), 0.0, 1.0)
        x[ones] = 1.0
        x[zeros] = 0.0
        yield x


def solve_fixed_point(mdp, ones, zeros=(), direction='max',
                      epsilon=DEFAULT_EPSILON, max_iter=DEFAULT_MAX_ITER):
    """Runs value iteration until the max-norm change drops below
    `epsilon`. Returns the vector and the number of iterations.
    """
    previous = None
    for count, x in enumerate(iterate_values(mdp, ones, zeros, direction,
                                             max_iter)):
        if previous is not None and np.max(np.abs(x - previous)) < epsilon:
            log.debug('value iteration converged after %d iterations', count)
            return x, count
        previous = x
    raise ConvergenceError('value iteration did not converge within %d '
                           'iterations (epsilon %g)' % (max_iter, epsilon))


def _reach_vector(mdp, target, direction, epsilon, max_iter, root,
                  objective_id):
    target = states_of(target)
    if direction == 'max':
        zeros, ones = prob0_max(mdp, target), prob1_max(mdp, target)
    else:
        zeros, ones = prob0_min(mdp, target), prob1_min(mdp, target)
    x, iterations = solve_fixed_point(mdp, set(ones) | set(target), zeros,
                                      direction, epsilon, max_iter)
    root = mdp.initial if root is None else check_state(mdp, root)
    return ValueVector(x, reach(mdp, root), objective_id, epsilon, direction,
                       reach_values=x, reach_direction=direction,
                       reach_target=target, prob0=zeros, prob1=ones,
                       iterations=iterations)


def max_reach_values(mdp, target, epsilon=DEFAULT_EPSILON,
                     max_iter=DEFAULT_MAX_ITER, root=None, objective_id=None):
    """Pmax of eventually reaching `target`, per state."""
    return _reach_vector(mdp, target, 'max', epsilon, max_iter, root,
                         objective_id or 'Pmax[F target]')


def min_reach_values(mdp, target, epsilon=DEFAULT_EPSILON,
                     max_iter=DEFAULT_MAX_ITER, root=None, objective_id=None):
    """Pmin of eventually reaching `target`, per state."""
    return _reach_vector(mdp, target, 'min', epsilon, max_iter, root,
                         objective_id or 'Pmin[F target]')


def reach_values(mdp, target, direction='max', **kwargs):
    if direction == 'max':
        return max_reach_values(mdp, target, **kwargs)
    return min_reach_values(mdp, target, **kwargs)


def until_values(mdp, left, right, direction='max', epsilon=DEFAULT_EPSILON,
                 max_iter=DEFAULT_MAX_ITER, root=None, objective_id=None):
    """Optimal probability of ``left U right``: reach `right` through
    `left` states only."""
    left, right = states_of(left), states_of(right)
    stopped = [s for s in mdp.states if s in right or s not in left]
    vector = reach_values(mdp.with_absorbing(stopped), right, direction,
                          epsilon=epsilon, max_iter=max_iter, root=root,
                          objective_id=objective_id)
    vector.domain = reach(mdp, mdp.initial if root is None else root)
    return vector


def bounded_until_values(mdp, left, right, steps, direction='max', root=None,
                         objective_id=None):
    """Optimal probability of reaching `right` through `left` within
    `steps` steps: exactly `steps` backups, no convergence test."""
    left, right = states_of(left), states_of(right)
    zeros = [s for s in mdp.states if s not in left and s not in right]
    for x in iterate_values(mdp, right, zeros, direction, max_iter=steps):
        pass
    root = mdp.initial if root is None else check_state(mdp, root)
    return ValueVector(x, reach(mdp, root), objective_id, 0.0, direction)


def next_values(mdp, operand, direction='max', root=None, objective_id=None):
    """Optimal probability that the next state satisfies `operand`."""
    indicator = np.zeros(mdp.num_states)
    indicator[list(states_of(operand))] = 1.0
    x = bellman_backup(mdp, indicator, direction)
    root = mdp.initial if root is None else check_state(mdp, root)
    return ValueVector(x, reach(mdp, root), objective_id, 0.0, direction)
