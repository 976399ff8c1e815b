# -*- coding: utf-8 -*-
"""
    captl.stats
    ~~~~~~~~~~~

    Wall-clock phase timings and model sizes of one synthesis run.

    :license: BSD, see LICENSE for more details.
"""
from contextlib import contextmanager
import csv
import logging
import time

from captl.exceptions import ProductError
from captl.mdp import cardinality


log = logging.getLogger(__name__)


PHASES = ('model', 'product', 'verify')


class RunStats(object):
    """Timings and sizes collected while synthesizing a protocol.

    Phases accumulate: entering the same phase twice adds up the
    times. Objectives have their own timers so that their ids never
    clash with phase names.
    """

    def __init__(self, model_name='', objectives=()):
        self.model_name = model_name
        self.objectives = list(objectives)
        self.phases = dict((name, 0.0) for name in PHASES)
        self.objective_times = {}
        self.model_size = None
        self.product_size = None
        self._started = time.perf_counter()

    @contextmanager
    def _timed(self, table, key):
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            table[key] = table.get(key, 0.0) + elapsed
            log.debug('%s took %.6fs', key, elapsed)

    def phase(self, name):
        if name not in self.phases:
            raise KeyError('unknown phase %r' % name)
        return self._timed(self.phases, name)

    def objective(self, qid):
        return self._timed(self.objective_times, qid)

    def record_model(self, mdp):
        self.model_size = cardinality(mdp)

    def record_product(self, chain):
        """Records the size of the chain built from the protocol; such
        a chain enables exactly one action per state."""
        states = len(chain)
        choices = chain.num_choices
        if choices != states:
            raise ProductError('product has %d choices for %d states'
                               % (choices, states))
        self.product_size = (states, chain.num_transitions, choices)

    @property
    def total(self):
        return time.perf_counter() - self._started

    def columns(self):
        return (['model', 'm_states', 'm_transitions', 'm_choices',
                 'p_states', 'p_transitions', 'p_choices', 't_model'] +
                ['t_%s' % qid for qid in self.objectives] +
                ['t_product', 't_verify', 't_total'])

    def row(self):
        model = self.model_size or ('', '', '')
        product = self.product_size or ('', '', '')
        times = [self.phases['model']]
        times.extend(self.objective_times.get(qid) for qid in self.objectives)
        times.extend([self.phases['product'], self.phases['verify'],
                      self.total])
        return ([self.model_name] + list(model) + list(product) +
                ['' if t is None else '%.6f' % t for t in times])

    def write_csv(self, stream, header=True):
        writer = csv.writer(stream, lineterminator='\n')
        if header:
            writer.writerow(self.columns())
        writer.writerow(self.row())
