# -*- coding: utf-8 -*-
"""
    captl.synthesis.pctl
    ~~~~~~~~~~~~~~~~~~~~

    State-by-state protocol synthesis for general requirements.

    States are explored from the initial state under the initial
    objective. At every state the contexts of the active objective are
    checked in declaration order; the first one that holds switches to
    its target objective and the state is checked again there. Once no
    context holds, the objective's optimal action is recorded and the
    successors under that action are explored.

    :license: BSD, see LICENSE for more details.
"""
from collections import deque
import logging
import warnings

from captl.config import (BOUNDARY_FACTOR, DEFAULT_EPSILON, DEFAULT_MAX_ITER)
from captl.engine.dtmc import reach_probabilities
from captl.engine.strategy import verify_context
from captl.exceptions import NondeterminismWarning
from captl.synthesis.core import SynthesisResult, Synthesizer
from captl.synthesis.protocol import Action, Protocol, Switch, compose_protocol


log = logging.getLogger(__name__)


class PctlSynthesizer(Synthesizer):
    algorithm = 'pctl'

    def accepts(self, qid, state):
        """Whether objective `qid` holds with probability 1 at `state`.

        Qualitative precomputation decides this exactly; vectors
        without it fall back to a ``1 - BOUNDARY_FACTOR * epsilon``
        threshold.
        """
        x = self.vector(qid)
        if x.reach_values is not None:
            return state in x.prob1
        return x[state] >= 1.0 - BOUNDARY_FACTOR * self.epsilon

    def firing_context(self, qid, state):
        """The first context of `qid` that holds at `state`, or None."""
        x = self.context_vector(qid)
        holding = [w for w in self.req.contexts_of(qid)
                   if verify_context(self.mdp, state, x, w.interval)]
        if len(holding) > 1:
            warnings.warn(NondeterminismWarning(
                'contexts %s all hold at state %s under %s; %s is taken'
                % (', '.join(w.id for w in holding), self.mdp.name(state),
                   qid, holding[0].id)))
        return holding[0] if holding else None

    def run(self):
        mdp, req = self.mdp, self.req
        entries = {}
        accepted = set()
        explored = dict((o.id, set()) for o in req.objectives)
        explored[req.initial].add(mdp.initial)
        worklist = deque([(req.initial, mdp.initial)])

        while worklist:
            qid, state = worklist.popleft()
            # switch while a context holds; revisits end the chain
            while qid is not None:
                context = self.firing_context(qid, state)
                if context is None:
                    break
                entries[qid, state] = Switch(context.id, context.target)
                log.debug('state %s: %s switches to %s via %s',
                          mdp.name(state), qid, context.target, context.id)
                qid = context.target
                if state in explored[qid]:
                    qid = None
                else:
                    explored[qid].add(state)
            if qid is None:
                continue

            if self.accepts(qid, state):
                accepted.add((qid, state))
            if mdp.is_deadlock(state):
                continue
            action = self.strategy(qid)[state]
            entries[qid, state] = Action(action)
            for succ, _ in mdp.distribution(state, action):
                if succ not in explored[qid]:
                    explored[qid].add(succ)
                    worklist.append((qid, succ))

        protocol = Protocol(entries, algorithm=self.algorithm)
        with self.stats.phase('product'):
            chain = compose_protocol(mdp, req, protocol)
        self.stats.record_product(chain)
        with self.stats.phase('verify'):
            target = [chain.index[key] for key in accepted
                      if key in chain.index]
            values = reach_probabilities(chain, target)
            protocol.satisfaction_prob = float(values[chain.initial])
        log.info('pctl synthesis: %d entries over %d objective(s), c = %.6f',
                 len(entries), len(self.explored), protocol.satisfaction_prob)
        return SynthesisResult(protocol, chain, accepted.__contains__, True,
                               self.stats)


def synth_pctl(mdp, req, epsilon=DEFAULT_EPSILON, max_iter=DEFAULT_MAX_ITER,
               stats=None):
    """Synthesizes a protocol state by state and returns it with its
    satisfaction probability."""
    synthesizer = PctlSynthesizer(mdp, req, epsilon=epsilon,
                                  max_iter=max_iter, stats=stats)
    return synthesizer.run().protocol
