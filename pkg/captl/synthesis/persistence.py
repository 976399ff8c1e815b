# -*- coding: utf-8 -*-
"""
    captl.synthesis.persistence
    ~~~~~~~~~~~~~~~~~~~~~~~~~~~

    Protocol synthesis for persistence requirements.

    Every objective is ``Pmax [ F G B ]`` and the contexts leaving an
    objective carry disjoint intervals covering ``[0, c)``. One value
    vector per objective, computed from the initial state, then
    classifies every reachable state: it either stays with the
    objective or belongs to exactly one context. The strategy of each
    objective is extracted once from that same vector, and the
    satisfaction probability is read off a product of the model with
    the requirement, which is a DTMC.

    Product states are ``(state, objective id, turn)``. In turn 1 the
    objective's strategy plays an action and hands over to turn 2; in
    turn 2 either a context fires, changing the objective, or a silent
    step hands back to turn 1.

    :license: BSD, see LICENSE for more details.
"""
from collections import deque
import logging

from captl.config import DEFAULT_EPSILON, DEFAULT_MAX_ITER
from captl.engine.core import eval_state_formula
from captl.engine.dtmc import Dtmc, dtmc_persistence_prob
from captl.engine.query import objective_values
from captl.engine.strategy import verify_context
from captl.exceptions import ProductError, RequirementError
from captl.mdp import StateSet
from captl.requirement import validate_persistence
from captl.synthesis.core import SynthesisResult, Synthesizer
from captl.synthesis.protocol import Action, Protocol, Switch


log = logging.getLogger(__name__)


#: product turns
ACT, SWITCH = 1, 2

TAU = ('tau', None)


def check_persistence(req):
    violations = validate_persistence(req)
    if violations:
        raise RequirementError('not a persistence requirement', violations)


class Partition(object):
    """Per explored objective q: its vector, the blocks ``R[q][q']``
    and, for every state outside ``R[q][q]``, the context that fires
    there."""

    def __init__(self, root):
        self.root = root
        self.vectors = {}
        self.blocks = {}
        self.switches = {}
        self.order = []

    @property
    def explored(self):
        return list(self.order)

    def block_of(self, qid, state):
        """The objective owning `state` in the partition of `qid`."""
        context = self.switches[qid].get(state)
        return qid if context is None else context.target

    def context_at(self, qid, state):
        return self.switches[qid].get(state)

    def rows(self):
        """``(state, objective, block, value)`` for every explored
        objective and reachable state."""
        for qid in self.order:
            x = self.vectors[qid]
            for state in x.domain:
                yield state, qid, self.block_of(qid, state), x[state]

    def __repr__(self):
        return '<Partition explored=%s>' % ','.join(self.order)


def partition_states(mdp, req, epsilon=DEFAULT_EPSILON,
                     max_iter=DEFAULT_MAX_ITER, synthesizer=None):
    """Classifies the reachable states of every objective that can
    become active.

    Objectives are explored from the initial one; a context target is
    explored once some state falls in its block. `synthesizer` lends
    its cached vectors when given.
    """
    check_persistence(req)
    if synthesizer is not None:
        vector = synthesizer.vector
    else:
        def vector(qid):
            return objective_values(mdp, req.objective(qid), epsilon=epsilon,
                                    max_iter=max_iter)

    partition = Partition(mdp.initial)
    queued = set([req.initial])
    worklist = deque([req.initial])
    while worklist:
        qid = worklist.popleft()
        x = vector(qid)
        contexts = req.contexts_of(qid)
        blocks = dict((q, set()) for q in [qid] + [w.target for w in contexts])
        switches = {}
        for state in x.domain:
            for context in contexts:
                if verify_context(mdp, state, x, context.interval):
                    switches[state] = context
                    blocks[context.target].add(state)
                    break
            else:
                blocks[qid].add(state)

        partition.order.append(qid)
        partition.vectors[qid] = x
        partition.switches[qid] = switches
        partition.blocks[qid] = dict((q, StateSet(b)) for q, b in blocks.items())
        log.info('objective %s: %s', qid, ', '.join(
            '%s=%d' % (q, len(b)) for q, b in sorted(blocks.items())))

        for context in contexts:
            target = context.target
            if blocks[target] and target not in queued:
                queued.add(target)
                worklist.append(target)
    return partition


class ProductDtmc(Dtmc):
    """The product of the model, the requirement and the objectives'
    strategies. Tags are ``('action', name)``, ``('context', id)`` and
    ``('tau', None)``."""

    def turn(self, v):
        return self.keys[v][2]


def build_product(mdp, req, strategies, partition):
    """Builds the product restricted to what is reachable from the
    initial state in turn 2 under the initial objective."""
    root = (mdp.initial, req.initial, SWITCH)
    transitions = {}
    seen = set([root])
    queue = deque([root])
    while queue:
        key = queue.popleft()
        state, qid, turn = key
        if qid not in partition.switches:
            raise ProductError('objective %s is active at state %s but was '
                               'never explored' % (qid, mdp.name(state)))
        if turn == SWITCH:
            context = partition.context_at(qid, state)
            if context is None:
                out = [(TAU, (state, qid, ACT), 1.0)]
            else:
                out = [(('context', context.id),
                        (state, context.target, SWITCH), 1.0)]
        elif mdp.is_deadlock(state):
            out = [(('action', None), (state, qid, SWITCH), 1.0)]
        else:
            if qid not in strategies:
                raise ProductError('no strategy for objective %s' % qid)
            action = strategies[qid].get(state)
            branches = mdp.distribution(state, action) if action else ()
            if not branches:
                raise ProductError('strategy of %s has no action at state %s'
                                   % (qid, mdp.name(state)))
            out = [(('action', action), (t, qid, SWITCH), p)
                   for t, p in branches]
        transitions[key] = out
        for _, succ, _ in out:
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)

    order = dict((o.id, i) for i, o in enumerate(req.objectives))
    keys = sorted(seen, key=lambda k: (k[0], order[k[1]], k[2]))
    labels = dict((k, mdp.labels[k[0]]) for k in keys)
    product = ProductDtmc(keys, root, transitions, labels)
    product.check_deterministic()
    log.info('product has %d states and %d transitions', len(product),
             product.num_transitions)
    return product


class PersistenceSynthesizer(Synthesizer):
    algorithm = 'persistence'

    def __init__(self, *args, **kwargs):
        super(PersistenceSynthesizer, self).__init__(*args, **kwargs)
        check_persistence(self.req)
        self._b_sets = dict(
            (o.id, eval_state_formula(self.mdp, o.b_set).states)
            for o in self.req.objectives)

    def accepting(self, key):
        """Whether product state `key` persists in the set of its
        active objective."""
        state, qid, _ = key
        return state in self._b_sets[qid]

    def protocol_entries(self, partition):
        entries = {}
        for qid in partition.order:
            strategy = self.strategy(qid)
            for state in partition.vectors[qid].domain:
                context = partition.context_at(qid, state)
                if context is not None:
                    entries[qid, state] = Switch(context.id, context.target)
                elif not self.mdp.is_deadlock(state):
                    entries[qid, state] = Action(strategy[state])
        return entries

    def run(self):
        partition = partition_states(self.mdp, self.req, synthesizer=self)
        strategies = dict((qid, self.strategy(qid))
                          for qid in partition.order)
        with self.stats.phase('product'):
            product = build_product(self.mdp, self.req, strategies, partition)
        self.stats.record_product(product)
        protocol = Protocol(self.protocol_entries(partition),
                            algorithm=self.algorithm)
        with self.stats.phase('verify'):
            protocol.satisfaction_prob = dtmc_persistence_prob(
                product, self.accepting)
        log.info('persistence synthesis: %d product states, c = %.6f',
                 len(product), protocol.satisfaction_prob)
        return SynthesisResult(protocol, product, self.accepting, False,
                               self.stats, partition=partition)


def synth_persistence(mdp, req, epsilon=DEFAULT_EPSILON,
                      max_iter=DEFAULT_MAX_ITER, stats=None):
    """Synthesizes a protocol for a persistence requirement. Returns the
    protocol and the product it was verified on."""
    result = PersistenceSynthesizer(mdp, req, epsilon=epsilon,
                                    max_iter=max_iter, stats=stats).run()
    return result.protocol, result.chain
