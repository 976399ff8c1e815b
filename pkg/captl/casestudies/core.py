"""Shared exploration of case-study state spaces."""
from collections import deque
import logging

from captl.mdp import Mdp


log = logging.getLogger(__name__)


def explore(initial, successors):
    """Breadth-first construction of a model from `initial`.

    `successors(state)` returns ``[(action, [(next_state, prob), ...])]``;
    branches to the same state are merged and zero-probability branches
    dropped. Returns the states in discovery order (the initial state
    first) and the transitions over their indices.
    """
    index = {initial: 0}
    order = [initial]
    transitions = []
    queue = deque([initial])
    while queue:
        state = queue.popleft()
        for action, branches in successors(state):
            merged = {}
            for target, prob in branches:
                if prob > 0:
                    merged[target] = merged.get(target, 0.0) + prob
            if not merged:
                continue
            indexed = []
            for target, prob in merged.items():
                if target not in index:
                    index[target] = len(order)
                    order.append(target)
                    queue.append(target)
                indexed.append((index[target], prob))
            transitions.append((index[state], action, sorted(indexed)))
    return order, transitions


def build_model(initial, successors, actions, props, label, name):
    """Explores a case study into an :class:`~captl.mdp.Mdp`; `label`
    and `name` map a generator state to its propositions and display
    name."""
    order, transitions = explore(initial, successors)
    labels = dict((i, label(state)) for i, state in enumerate(order))
    names = dict((i, name(state)) for i, state in enumerate(order))
    mdp = Mdp(len(order), 0, transitions, props=props, labels=labels,
              names=names, actions=actions)
    log.info('generated %d states', mdp.num_states)
    return mdp
