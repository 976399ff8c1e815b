# -*- coding: utf-8 -*-
"""
    captl.engine.query
    ~~~~~~~~~~~~~~~~~~

    Dispatch of quantitative PCTL queries to the solvers.

    :license: BSD, see LICENSE for more details.
"""
import logging

from captl.config import DEFAULT_EPSILON, DEFAULT_MAX_ITER
from captl.engine.core import ValueVector, eval_state_formula
from captl.engine.persistence import persistence_values
from captl.engine.reach import (bounded_until_values, next_values,
                                reach_values, until_values)
from captl.formula import (TRUE, Always, Eventually, EventuallyAlways, Next,
                           Not, Until)


log = logging.getLogger(__name__)


def _opposite(direction):
    return 'min' if direction == 'max' else 'max'


def _dual(vector, direction, objective_id):
    return ValueVector(1.0 - vector.values, vector.domain, objective_id,
                       vector.epsilon, direction,
                       reach_values=vector.reach_values,
                       reach_direction=vector.reach_direction,
                       reach_target=vector.reach_target,
                       prob0=vector.prob1, prob1=vector.prob0,
                       end_components=vector.end_components,
                       iterations=vector.iterations)


def path_values(mdp, path, direction='max', epsilon=DEFAULT_EPSILON,
                max_iter=DEFAULT_MAX_ITER, root=None, objective_id=None):
    """Optimal probability of the path formula `path` per state."""
    options = dict(root=root, objective_id=objective_id)
    iterative = dict(options, epsilon=epsilon, max_iter=max_iter)

    if isinstance(path, EventuallyAlways):
        b_set = eval_state_formula(mdp, path.operand)
        return persistence_values(mdp, b_set, direction=direction, **iterative)
    if isinstance(path, Eventually):
        target = eval_state_formula(mdp, path.operand)
        if path.bound is not None:
            return bounded_until_values(mdp, eval_state_formula(mdp, TRUE),
                                        target, path.bound, direction,
                                        **options)
        return reach_values(mdp, target, direction, **iterative)
    if isinstance(path, Always):
        # G a holds iff F !a does not
        escape = eval_state_formula(mdp, Not(path.operand))
        vector = reach_values(mdp, escape, _opposite(direction), **iterative)
        return _dual(vector, direction, objective_id)
    if isinstance(path, Until):
        left = eval_state_formula(mdp, path.left)
        right = eval_state_formula(mdp, path.right)
        if path.bound is not None:
            return bounded_until_values(mdp, left, right, path.bound,
                                        direction, **options)
        return until_values(mdp, left, right, direction, **iterative)
    if isinstance(path, Next):
        return next_values(mdp, eval_state_formula(mdp, path.operand),
                           direction, **options)
    raise TypeError('not a path formula: %r' % (path,))


def check_query(mdp, query, epsilon=DEFAULT_EPSILON,
                max_iter=DEFAULT_MAX_ITER, root=None):
    """Solves `query` and returns ``(vector, verdict)``; the verdict is
    whether the value at the root lies in the query's bound, or None
    for a query without bound."""
    vector = path_values(mdp, query.path, query.direction, epsilon=epsilon,
                         max_iter=max_iter, root=root,
                         objective_id=str(query))
    if query.bound is None:
        return vector, None
    root = mdp.initial if root is None else root
    return vector, query.bound.contains(vector[root])


def objective_values(mdp, objective, epsilon=DEFAULT_EPSILON,
                     max_iter=DEFAULT_MAX_ITER, root=None):
    """The value vector x_q of a requirement objective."""
    log.debug('solving objective %s', objective.id)
    return path_values(mdp, objective.path, objective.direction,
                       epsilon=epsilon, max_iter=max_iter, root=root,
                       objective_id=objective.id)
