# -*- coding: utf-8 -*-
"""
    captl.synthesis.protocol
    ~~~~~~~~~~~~~~~~~~~~~~~~

    Protocols and their composition with the system model.

    A protocol tells the system, for the active objective and the
    current state, either which action to play or which context fires
    and so which objective becomes active next.

    :license: BSD, see LICENSE for more details.
"""
from collections import deque
from dataclasses import dataclass
import json
import logging

from captl.engine.dtmc import Dtmc
from captl.exceptions import IncompatibleProtocol


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Action(object):
    name: str

    def as_json(self):
        return {'kind': 'action', 'action': self.name}


@dataclass(frozen=True)
class Switch(object):
    context: str
    target: str

    def as_json(self):
        return {'kind': 'switch', 'context': self.context,
                'target': self.target}


class Protocol(object):
    """A partial map from ``(objective id, state)`` to an
    :class:`Action` or a :class:`Switch`, together with the
    satisfaction probability computed for it.
    """

    def __init__(self, entries, satisfaction_prob=None, algorithm='pctl'):
        self.entries = dict(entries)
        self.satisfaction_prob = satisfaction_prob
        self.algorithm = algorithm

    def __getitem__(self, key):
        return self.entries[key]

    def get(self, key, default=None):
        return self.entries.get(key, default)

    def __contains__(self, key):
        return key in self.entries

    def __len__(self):
        return len(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def switches(self):
        return dict((key, d) for key, d in self.entries.items()
                    if isinstance(d, Switch))

    def check(self, mdp, req):
        """Raises :class:`IncompatibleProtocol` if an entry plays a
        disabled action or switches along a context that does not leave
        its objective."""
        for (qid, state), decision in self.items():
            if isinstance(decision, Action):
                if decision.name not in mdp.enabled(state):
                    raise IncompatibleProtocol(
                        'protocol plays %r at state %s under %s, where it is '
                        'not enabled' % (decision.name, mdp.name(state), qid))
            else:
                context = req.context(decision.context)
                if context.source != qid or context.target != decision.target:
                    raise IncompatibleProtocol(
                        'context %s does not lead from %s to %s'
                        % (decision.context, qid, decision.target))

    def to_json(self):
        doc = {
            'algorithm': self.algorithm,
            'c': self.satisfaction_prob,
            'entries': [{'objective': qid, 'state': state,
                         'decision': decision.as_json()}
                        for (qid, state), decision in self.items()],
        }
        return json.dumps(doc, indent=1, sort_keys=True) + '\n'

    def __eq__(self, other):
        if not isinstance(other, Protocol):
            return NotImplemented
        return (self.entries == other.entries and
                self.algorithm == other.algorithm)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return '<Protocol %s entries=%d>' % (self.algorithm, len(self.entries))


def compose_protocol(mdp, req, protocol):
    """The DTMC over ``(objective id, state)`` pairs that the system
    follows under `protocol`, restricted to what is reachable from the
    initial objective and state.

    Actions keep the model's probabilities; a switch moves to the target
    objective with probability 1 in the same state. Tags are action
    names and context ids.
    """
    root = (req.initial, mdp.initial)
    transitions = {}
    seen = set([root])
    queue = deque([root])
    while queue:
        key = queue.popleft()
        qid, state = key
        decision = protocol.get(key)
        if decision is None:
            if not mdp.is_deadlock(state):
                raise IncompatibleProtocol(
                    'protocol is undefined at state %s under %s'
                    % (mdp.name(state), qid))
            continue
        if isinstance(decision, Switch):
            out = [(decision.context, (decision.target, state), 1.0)]
        else:
            branches = mdp.distribution(state, decision.name)
            if not branches:
                raise IncompatibleProtocol(
                    'protocol plays %r at state %s under %s, where it is not '
                    'enabled' % (decision.name, mdp.name(state), qid))
            out = [(decision.name, (qid, t), p) for t, p in branches]
        transitions[key] = out
        for _, succ, _ in out:
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)

    order = dict((o.id, i) for i, o in enumerate(req.objectives))
    keys = sorted(seen, key=lambda k: (order[k[0]], k[1]))
    labels = dict((k, mdp.labels[k[1]]) for k in keys)
    log.debug('composed protocol chain with %d states', len(keys))
    return Dtmc(keys, root, transitions, labels)
