# -*- coding: utf-8 -*-
"""
    captl.mdp
    ~~~~~~~~~

    Explicit-state Markov decision processes: the data model, its
    validation, graph queries and the JSON interchange format.

    States are dense integer indices ``0..n-1``. Variable valuations a
    generator used to build the model survive only as optional display
    names.

    :license: BSD, see LICENSE for more details.
"""
from collections import deque, namedtuple
import json
import logging
import warnings

import numpy as np

from captl.config import PROB_TOLERANCE
from captl.exceptions import (DeadlockWarning, ParseError, StateError,
                              ValidationError)


log = logging.getLogger(__name__)

Cardinality = namedtuple('Cardinality',
                         'num_states num_nonzero_transitions num_choices')

# flat arrays over all (state, action) choices, ordered by state and then
# by action index; branches are grouped by choice in the same order
ChoiceMatrix = namedtuple('ChoiceMatrix', [
    'offsets', 'choice_state', 'choice_action', 'branch_choice',
    'branch_target', 'branch_prob', 'active'])


class StateSet(frozenset):
    """An immutable set of state indices that always iterates in
    ascending order.
    """

    def __iter__(self):
        return iter(sorted(frozenset.__iter__(self)))

    def __repr__(self):
        return 'StateSet(%r)' % list(self)


class Mdp(object):
    """An MDP with an initial state and an atomic-proposition labelling.

    `transitions` is an iterable of ``(state, action, branches)`` where
    `branches` is an iterable of ``(successor, probability)`` pairs.
    `actions` fixes the global action table; when it is omitted the
    table lists actions in order of first use. `labels` maps a state to
    the propositions holding there and `names` to a display name.

    The model is validated on construction and never changes afterwards.
    """

    def __init__(self, num_states, initial, transitions, props=(),
                 labels=None, names=None, actions=None, warn_deadlocks=True):
        if not isinstance(num_states, int) or num_states < 1:
            raise ValidationError(
                'number of states must be a positive integer, got %r'
                % (num_states,))
        self.num_states = num_states
        self.initial = initial
        self.props = tuple(props)
        self.names = dict(names or {})

        if len(set(self.props)) != len(self.props):
            raise ValidationError('duplicate atomic proposition')
        self._check_index(initial, 'initial state')

        prop_set = frozenset(self.props)
        state_labels = [frozenset()] * num_states
        for state, state_props in (labels or {}).items():
            self._check_index(state, 'labelled state')
            state_props = frozenset(state_props)
            unknown = state_props - prop_set
            if unknown:
                raise ValidationError(
                    'state %d is labelled with undeclared proposition(s) %s'
                    % (state, ', '.join(sorted(unknown))))
            state_labels[state] = state_props
        self.labels = tuple(state_labels)

        for state in self.names:
            self._check_index(state, 'named state')

        self.actions = tuple(actions) if actions is not None else ()
        self._action_index = dict(
            (name, i) for i, name in enumerate(self.actions))
        if len(self._action_index) != len(self.actions):
            raise ValidationError('duplicate action in action table')
        fixed_table = actions is not None

        per_state = [dict() for _ in range(num_states)]
        for state, action, branches in transitions:
            self._check_index(state, 'transition source')
            if action not in self._action_index:
                if fixed_table:
                    raise ValidationError(
                        'action %r of state %d is not in the action table'
                        % (action, state))
                self._action_index[action] = len(self.actions)
                self.actions = self.actions + (action,)
            index = self._action_index[action]
            if index in per_state[state]:
                raise ValidationError(
                    'duplicate transition entry for state %d, action %r'
                    % (state, action))
            dist = self._check_distribution(state, action, branches)
            if dist:
                per_state[state][index] = dist

        self._choices = tuple(
            tuple(sorted(choices.items())) for choices in per_state)
        self._matrix = None

        if warn_deadlocks:
            deadlocks = [s for s in range(num_states) if not self._choices[s]]
            if deadlocks:
                warnings.warn(DeadlockWarning(
                    '%d deadlock state(s), treated as absorbing: %s'
                    % (len(deadlocks), _abbreviate(deadlocks))),
                    stacklevel=2)

    def _check_index(self, state, what):
        if not isinstance(state, (int, np.integer)) or isinstance(state, bool) \
                or not 0 <= state < self.num_states:
            raise StateError('%s %r is not a state of a %d-state model'
                             % (what, state, self.num_states))

    def _check_distribution(self, state, action, branches):
        dist = {}
        for target, prob in branches:
            self._check_index(target, 'successor')
            prob = float(prob)
            if not 0.0 < prob <= 1.0:
                raise ValidationError(
                    'state %d, action %r: probability %r not in (0,1]'
                    % (state, action, prob))
            if target in dist:
                raise ValidationError(
                    'state %d, action %r: successor %d listed twice'
                    % (state, action, target))
            dist[target] = prob
        total = sum(dist.values())
        if dist and abs(total - 1.0) > PROB_TOLERANCE:
            raise ValidationError(
                u'state %d, action %r: distribution sum %g ∉ {0,1}'
                % (state, action, total))
        return tuple(sorted(dist.items()))

    @property
    def states(self):
        return range(self.num_states)

    def choices(self, state):
        """Returns ``((action_index, branches), ...)`` for the actions
        enabled at `state`, ascending by action index."""
        return self._choices[state]

    def enabled(self, state):
        return tuple(self.actions[a] for a, _ in self._choices[state])

    def action_index(self, action):
        return self._action_index[action]

    def distribution(self, state, action):
        """Branches of `action` at `state`, or ``()`` if it is not
        enabled there."""
        index = self._action_index.get(action)
        for a, branches in self._choices[state]:
            if a == index:
                return branches
        return ()

    def is_deadlock(self, state):
        return not self._choices[state]

    def name(self, state):
        return self.names.get(state, str(state))

    def transitions(self):
        for state in self.states:
            for a, branches in self._choices[state]:
                yield state, self.actions[a], branches

    def with_absorbing(self, states):
        """Returns a copy of this model where every state in `states`
        has no enabled action."""
        states = frozenset(states)
        return Mdp(self.num_states, self.initial,
                   [t for t in self.transitions() if t[0] not in states],
                   props=self.props, labels=dict(enumerate(self.labels)),
                   names=self.names, actions=self.actions,
                   warn_deadlocks=False)

    @property
    def matrix(self):
        if self._matrix is None:
            self._matrix = _build_matrix(self)
        return self._matrix

    def __eq__(self, other):
        if not isinstance(other, Mdp):
            return NotImplemented
        return (self.num_states == other.num_states and
                self.initial == other.initial and
                self.props == other.props and
                self.labels == other.labels and
                self.names == other.names and
                self.actions == other.actions and
                self._choices == other._choices)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return '<Mdp states=%d actions=%d initial=%d>' % (
            self.num_states, len(self.actions), self.initial)


def _abbreviate(items, limit=10):
    shown = ', '.join(str(i) for i in items[:limit])
    if len(items) > limit:
        shown += ', ...'
    return shown


def _build_matrix(mdp):
    offsets = [0]
    choice_state, choice_action = [], []
    branch_choice, branch_target, branch_prob = [], [], []
    for state in mdp.states:
        for a, branches in mdp.choices(state):
            choice = len(choice_state)
            choice_state.append(state)
            choice_action.append(a)
            for target, prob in branches:
                branch_choice.append(choice)
                branch_target.append(target)
                branch_prob.append(prob)
        offsets.append(len(choice_state))
    offsets = np.array(offsets, dtype=np.int64)
    active = np.flatnonzero(offsets[1:] > offsets[:-1])
    return ChoiceMatrix(
        offsets=offsets,
        choice_state=np.array(choice_state, dtype=np.int64),
        choice_action=np.array(choice_action, dtype=np.int64),
        branch_choice=np.array(branch_choice, dtype=np.int64),
        branch_target=np.array(branch_target, dtype=np.int64),
        branch_prob=np.array(branch_prob, dtype=np.float64),
        active=active)


def check_state(mdp, state):
    if isinstance(state, bool) or not isinstance(state, (int, np.integer)) \
            or not 0 <= state < mdp.num_states:
        raise StateError('%r is not a state of a %d-state model'
                         % (state, mdp.num_states))
    return int(state)


def reach(mdp, state):
    """All states reachable from `state` under any strategy, `state`
    included."""
    state = check_state(mdp, state)
    seen = set([state])
    queue = deque([state])
    while queue:
        current = queue.popleft()
        for _, branches in mdp.choices(current):
            for target, _ in branches:
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
    return StateSet(seen)


def post(mdp, state, action):
    """Successors of `state` under `action`; empty when the action is
    not enabled."""
    state = check_state(mdp, state)
    return StateSet(target for target, _ in mdp.distribution(state, action))


def cardinality(mdp):
    num_choices = 0
    num_transitions = 0
    for state in mdp.states:
        for _, branches in mdp.choices(state):
            num_choices += 1
            num_transitions += len(branches)
    return Cardinality(mdp.num_states, num_transitions, num_choices)


# ----------------------------------------------------------------------
# Interchange format
# ----------------------------------------------------------------------
def parse_model(text):
    """Parses a JSON model document and returns a validated
    :class:`Mdp`.
    """
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise ParseError(getattr(e, 'msg', str(e)),
                         line=getattr(e, 'lineno', None),
                         column=getattr(e, 'colno', None))
    if not isinstance(doc, dict):
        raise ValidationError('model document must be a JSON object')

    num_states = _require(doc, 'states', int)
    initial = _require(doc, 'init', int)
    props = _require(doc, 'props', list, default=[])
    labels = dict((_state_key(k), v) for k, v in
                  _require(doc, 'labels', dict, default={}).items())
    names = dict((_state_key(k), v) for k, v in
                 _require(doc, 'names', dict, default={}).items())
    actions = _require(doc, 'actions', list, default=None)

    transitions = []
    for entry in _require(doc, 'transitions', list):
        if not isinstance(entry, dict):
            raise ValidationError('transition entries must be objects')
        branches = [(_require(b, 'to', int), _require(b, 'prob', (int, float)))
                    for b in _require(entry, 'branches', list)]
        transitions.append((_require(entry, 'from', int),
                            _require(entry, 'action', str), branches))

    mdp = Mdp(num_states, initial, transitions, props=props, labels=labels,
              names=names, actions=actions)
    log.debug('parsed model with %d states, %d actions',
              mdp.num_states, len(mdp.actions))
    return mdp


def _require(doc, key, kind, default=KeyError):
    if not isinstance(doc, dict) or key not in doc:
        if default is KeyError:
            raise ValidationError('missing key %r' % key)
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, kind):
        raise ValidationError('key %r has the wrong type' % key)
    return value


def _state_key(key):
    try:
        return int(key)
    except ValueError:
        raise ValidationError('%r is not a state index' % (key,))


def serialize_model(mdp):
    """Returns the canonical JSON document for `mdp`."""
    doc = {
        'states': mdp.num_states,
        'init': mdp.initial,
        'props': list(mdp.props),
        'labels': dict((str(s), sorted(mdp.labels[s]))
                       for s in mdp.states if mdp.labels[s]),
    }
    if mdp.names:
        doc['names'] = dict((str(s), mdp.names[s]) for s in sorted(mdp.names))
    doc['actions'] = list(mdp.actions)
    doc['transitions'] = [
        {'from': state, 'action': action,
         'branches': [{'to': t, 'prob': p} for t, p in branches]}
        for state, action, branches in mdp.transitions()]
    return json.dumps(doc, indent=1, sort_keys=False) + '\n'
