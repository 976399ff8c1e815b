# -*- coding: utf-8 -*-
"""
    captl.engine.dtmc
    ~~~~~~~~~~~~~~~~~

    Discrete-time Markov chains with arbitrary hashable state keys, as
    produced by resolving the nondeterminism of an MDP: a strategy, a
    protocol composition or the system-requirement product.

    Every transition carries a tag naming what enabled it (an action, a
    context, or the silent step). A chain has no nondeterminism when
    every state enables a single tag; the analyses here check that
    before trusting the chain.

    :license: BSD, see LICENSE for more details.
"""
from collections import deque
import logging

import networkx as nx
import numpy as np

from captl.config import EXACT_SOLVE_LIMIT, PROB_TOLERANCE
from captl.exceptions import ProductError, SynthesisError


log = logging.getLogger(__name__)


class Dtmc(object):
    """A finite DTMC.

    `keys` lists the states in order, `initial` is one of them and
    `transitions` maps a key to a list of ``(tag, successor, prob)``.
    Keys without transitions get a self-loop tagged ``None``.
    """

    def __init__(self, keys, initial, transitions, labels=None):
        self.keys = tuple(keys)
        self.index = dict((key, i) for i, key in enumerate(self.keys))
        self.initial = self.index[initial]
        labels = labels or {}
        self.labels = tuple(frozenset(labels.get(key, ())) for key in self.keys)
        edges = []
        for i, key in enumerate(self.keys):
            out = [(tag, self.index[succ], float(prob))
                   for tag, succ, prob in transitions.get(key, ())]
            edges.append(tuple(out) if out else ((None, i, 1.0),))
        self.edges = tuple(edges)

    def __len__(self):
        return len(self.keys)

    def tags(self, v):
        return sorted(set(tag for tag, _, _ in self.edges[v]), key=str)

    def successors(self, v):
        """Merged ``(successor, prob)`` pairs of state `v`."""
        merged = {}
        for _, succ, prob in self.edges[v]:
            merged[succ] = merged.get(succ, 0.0) + prob
        return sorted(merged.items())

    @property
    def num_transitions(self):
        return sum(len(e) for e in self.edges)

    @property
    def num_choices(self):
        return sum(len(self.tags(v)) for v in range(len(self)))

    def check_deterministic(self):
        """Raises :class:`ProductError` naming the first state that
        enables more than one tag."""
        for v in range(len(self)):
            tags = self.tags(v)
            if len(tags) > 1:
                raise ProductError('state %s enables %d actions (%s); the '
                                   'chain is not a DTMC'
                                   % (self.keys[v], len(tags),
                                      ', '.join(str(t) for t in tags)))

    def graph(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self)))
        for v, out in enumerate(self.edges):
            graph.add_edges_from((v, succ) for _, succ, prob in out if prob > 0)
        return graph

    def bsccs(self):
        """Bottom strongly connected components, as sorted lists of
        state indices ordered by smallest member."""
        graph = self.graph()
        result = []
        for component in nx.strongly_connected_components(graph):
            if all(succ in component for v in component
                   for succ in graph.successors(v)):
                result.append(sorted(component))
        result.sort()
        return result

    def __repr__(self):
        return '<Dtmc states=%d>' % len(self)


def _backward_closure(chain, target):
    preds = dict((v, []) for v in range(len(chain)))
    for v, out in enumerate(chain.edges):
        for _, succ, _ in out:
            preds[succ].append(v)
    seen = set(target)
    stack = list(target)
    while stack:
        for v in preds[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def reach_probabilities(chain, target, max_iter=1000000):
    """Probability of eventually reaching `target` (a set of state
    indices) from every state of `chain`.

    States that cannot reach the target are fixed to 0 first; the
    remaining system is solved densely when small enough, by iteration
    to :data:`~captl.config.PROB_TOLERANCE` otherwise.
    """
    target = set(target)
    n = len(chain)
    x = np.zeros(n)
    x[sorted(target)] = 1.0
    can_reach = _backward_closure(chain, target)
    unknown = [v for v in range(n) if v in can_reach and v not in target]
    if not unknown:
        return x
    position = dict((v, i) for i, v in enumerate(unknown))

    if len(unknown) <= EXACT_SOLVE_LIMIT:
        a = np.eye(len(unknown))
        b = np.zeros(len(unknown))
        for v in unknown:
            row = position[v]
            for succ, prob in chain.successors(v):
                if succ in target:
                    b[row] += prob
                elif succ in position:
                    a[row, position[succ]] -= prob
        x[unknown] = np.linalg.solve(a, b)
    else:
        src, dst, prob = [], [], []
        for v in unknown:
            for succ, p in chain.successors(v):
                src.append(position[v])
                dst.append(succ)
                prob.append(p)
        src, dst, prob = np.array(src), np.array(dst), np.array(prob)
        idx = np.array(unknown)
        for _ in range(max_iter):
            update = np.bincount(src, weights=prob * x[dst],
                                 minlength=len(unknown))
            delta = np.max(np.abs(update - x[idx]))
            x[idx] = update
            if delta < PROB_TOLERANCE:
                break
        else:
            raise SynthesisError('chain reachability did not converge')
    return np.clip(x, 0.0, 1.0)


def dtmc_persistence_prob(chain, accepting):
    """Probability that a run from the initial state ends up in a
    bottom strongly connected component whose every state satisfies the
    `accepting` predicate (called with state keys).
    """
    chain.check_deterministic()
    target = set()
    for component in chain.bsccs():
        if all(accepting(chain.keys[v]) for v in component):
            target.update(component)
    log.debug('%d accepting bottom component state(s)', len(target))
    return float(reach_probabilities(chain, target)[chain.initial])


def induced_chain(mdp, strategy, root=None):
    """The DTMC induced by a memoryless `strategy` over the states
    reachable from `root` (the model's initial state by default)."""
    root = mdp.initial if root is None else root
    transitions = {}
    order = [root]
    seen = set(order)
    queue = deque(order)
    while queue:
        state = queue.popleft()
        if mdp.is_deadlock(state):
            continue
        action = strategy.get(state)
        if action is None:
            raise SynthesisError('strategy has no action at state %s'
                                 % mdp.name(state))
        branches = mdp.distribution(state, action)
        if not branches:
            raise SynthesisError('strategy picks %r, not enabled at state %s'
                                 % (action, mdp.name(state)))
        transitions[state] = [(action, t, p) for t, p in branches]
        for t, _ in branches:
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    labels = dict((s, mdp.labels[s]) for s in order)
    return Dtmc(sorted(order), root, transitions, labels)
