import logging

from captl.config import DEFAULT_EPSILON, DEFAULT_MAX_ITER
from captl.engine.query import objective_values, path_values
from captl.engine.strategy import extract_strategy
from captl.stats import RunStats


log = logging.getLogger(__name__)


class SynthesisResult(object):
    """What a synthesis run produced: the protocol, the chain its
    satisfaction probability was computed on and the acceptance
    condition used there.

    With `reach` set a run of `chain` is successful once it hits a key
    satisfying `accepting`; otherwise it must end up in a bottom
    component whose every key satisfies `accepting`.
    """

    def __init__(self, protocol, chain, accepting, reach, stats,
                 partition=None):
        self.protocol = protocol
        self.chain = chain
        self.accepting = accepting
        self.reach = reach
        self.stats = stats
        self.partition = partition

    @property
    def satisfaction_prob(self):
        return self.protocol.satisfaction_prob


class Synthesizer(object):
    """A base class for synthesis procedures. Subclasses define
    :meth:`run`; value vectors and strategies of the objectives are
    computed on demand, once each, from the model's initial state.
    """
    algorithm = None

    def __init__(self, mdp, req, epsilon=DEFAULT_EPSILON,
                 max_iter=DEFAULT_MAX_ITER, stats=None):
        self.mdp = mdp
        self.req = req
        self.epsilon = epsilon
        self.max_iter = max_iter
        self.stats = stats if stats is not None else RunStats(
            objectives=[o.id for o in req.objectives])
        if self.stats.model_size is None:
            self.stats.record_model(mdp)
        self._vectors = {}
        self._context_vectors = {}
        self._strategies = {}

    def vector(self, qid):
        """Returns the value vector x_q of objective `qid`."""
        if qid not in self._vectors:
            with self.stats.objective(qid):
                self._vectors[qid] = objective_values(
                    self.mdp, self.req.objective(qid), epsilon=self.epsilon,
                    max_iter=self.max_iter)
            log.info('objective %s: x[s0] = %.6f', qid,
                     self._vectors[qid][self.mdp.initial])
        return self._vectors[qid]

    def context_vector(self, qid):
        """The vector contexts leaving `qid` are checked against. Context
        bounds are on the maximal probability of the objective's path
        formula, whichever direction the objective optimizes."""
        objective = self.req.objective(qid)
        if objective.direction == 'max':
            return self.vector(qid)
        if qid not in self._context_vectors:
            with self.stats.objective(qid):
                self._context_vectors[qid] = path_values(
                    self.mdp, objective.path, 'max', epsilon=self.epsilon,
                    max_iter=self.max_iter, objective_id=qid)
        return self._context_vectors[qid]

    def strategy(self, qid):
        """Returns the memoryless strategy realizing objective `qid`."""
        if qid not in self._strategies:
            x = self.vector(qid)
            with self.stats.objective(qid):
                self._strategies[qid] = extract_strategy(self.mdp, x)
        return self._strategies[qid]

    @property
    def explored(self):
        """Objectives whose vector has been computed, in order."""
        order = [o.id for o in self.req.objectives]
        return [qid for qid in order if qid in self._vectors]

    def run(self):
        """Synthesizes a protocol and returns a
        :class:`SynthesisResult`."""
        raise NotImplementedError()
