# -*- coding: utf-8 -*-
"""
    captl.engine.core
    ~~~~~~~~~~~~~~~~~

    Result types shared by the solvers and the evaluation of
    propositional state formulas.

    :license: BSD, see LICENSE for more details.
"""
from collections import namedtuple

import numpy as np

from captl.exceptions import StateError, UnknownPropositionError
from captl.formula import And, Not, Or, Prop, TrueFormula, propositions
from captl.mdp import StateSet


#: `states` is a :class:`~captl.mdp.StateSet`, `source_formula` the
#: state formula (or description) it was computed from
TargetSet = namedtuple('TargetSet', 'states source_formula')


def states_of(target):
    """Accepts a :class:`TargetSet` or any iterable of states."""
    if isinstance(target, TargetSet):
        return target.states
    return StateSet(target)


def eval_state_formula(mdp, formula):
    """Returns the :class:`TargetSet` of states satisfying a
    propositional `formula`."""
    unknown = sorted(set(propositions(formula)) - set(mdp.props))
    if unknown:
        raise UnknownPropositionError(
            'unknown proposition(s): %s' % ', '.join(unknown))
    return TargetSet(StateSet(_satisfying(mdp, formula)), formula)


def _satisfying(mdp, formula):
    if isinstance(formula, TrueFormula):
        return set(mdp.states)
    if isinstance(formula, Prop):
        return set(s for s in mdp.states if formula.name in mdp.labels[s])
    if isinstance(formula, Not):
        return set(mdp.states) - _satisfying(mdp, formula.operand)
    if isinstance(formula, And):
        return _satisfying(mdp, formula.left) & _satisfying(mdp, formula.right)
    if isinstance(formula, Or):
        return _satisfying(mdp, formula.left) | _satisfying(mdp, formula.right)
    raise TypeError('not a state formula: %r' % (formula,))


class ValueVector(object):
    """Per-state optimal probabilities for one query.

    `values` is indexed by state over the whole model, but the vector
    is only defined on `domain`, the states reachable from its root;
    indexing outside it raises :class:`StateError`.

    Solvers that realize the query as a reachability problem also fill
    in the attributes strategy extraction needs:

    `reach_values`, `reach_direction`
        the reachability vector and its optimization direction (these
        differ from `values`/`direction` when the query is solved
        through its dual)
    `reach_target`
        the states the reachability problem aims for
    `prob0`, `prob1`
        qualitative precomputation of the reachability problem
    `end_components`
        a retained action index (or None for a deadlock) for every state
        of the accepting end components of a persistence query
    """

    def __init__(self, values, domain, objective_id, epsilon, direction,
                 reach_values=None, reach_direction=None, reach_target=None,
                 prob0=None, prob1=None, end_components=None, iterations=0):
        self.values = np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0)
        self.domain = domain
        self.objective_id = objective_id
        self.epsilon = epsilon
        self.direction = direction
        self.reach_values = reach_values
        self.reach_direction = reach_direction
        self.reach_target = reach_target
        self.prob0 = prob0 if prob0 is not None else StateSet()
        self.prob1 = prob1 if prob1 is not None else StateSet()
        self.end_components = dict(end_components or {})
        self.iterations = iterations

    def __getitem__(self, state):
        if state not in self.domain:
            raise StateError('state %r is outside the domain of the vector '
                             'for %s' % (state, self.objective_id))
        return float(self.values[state])

    def __contains__(self, state):
        return state in self.domain

    def __len__(self):
        return len(self.domain)

    def items(self):
        for state in self.domain:
            yield state, float(self.values[state])

    def __repr__(self):
        return '<ValueVector %s over %d states>' % (self.objective_id,
                                                   len(self.domain))


class StrategyMap(object):
    """A memoryless strategy: a partial map from state to action name."""

    def __init__(self, choices=None):
        self.choices = dict(choices or {})

    def __getitem__(self, state):
        return self.choices[state]

    def get(self, state, default=None):
        return self.choices.get(state, default)

    def __contains__(self, state):
        return state in self.choices

    def __len__(self):
        return len(self.choices)

    def items(self):
        return sorted(self.choices.items())

    def __eq__(self, other):
        if not isinstance(other, StrategyMap):
            return NotImplemented
        return self.choices == other.choices

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return '<StrategyMap over %d states>' % len(self.choices)
