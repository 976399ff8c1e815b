from contextlib import contextmanager
from fractions import Fraction
import io
import json
import random
import unittest
import warnings

from captl.engine.dtmc import Dtmc
from captl.exceptions import BoundaryWarning, IncompatibleProtocol, \
     NondeterminismWarning, ProductError, RequirementError
from captl.mdp import Mdp, reach
from captl.oracle import enumerate_paths, exact, stutter_equivalent
from captl.parser import parse_requirement
from captl.stats import RunStats
from captl.synthesis import (Action, PctlSynthesizer, PersistenceSynthesizer,
                             Protocol, Switch, build_product, chain_to_dot,
                             compose_protocol, partition_states,
                             product_to_dot, synth_pctl, synth_persistence)
from captl.synthesis.persistence import SWITCH, TAU

from test.mdp_core import toy_model
from test.randmodels import random_mdp, random_persistence_requirement


SINGLE = 'objective q0 = Pmax [ F G "goal" ];\n'

FALLBACK = """\
objective q0 = Pmax [ F G "goal" ];
objective q1 = Pmax [ F G "fail" ];
context w01 : q0 -> q1 when Pmax < 0.5;
initial q0;
"""

#: steps of the protocol chain paths matched against the product
PATH_LENGTH = 12


@contextmanager
def quiet():
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', BoundaryWarning)
        yield


def random_instances(seed, count, max_states=8, num_objectives=None,
                     max_branches=3):
    rng = random.Random(seed)
    for _ in range(count):
        mdp = random_mdp(rng, max_states=max_states,
                         max_branches=max_branches)
        yield mdp, random_persistence_requirement(rng, num_objectives)


def check_partition(test, mdp, partition):
    states = set(reach(mdp, mdp.initial))
    for qid in partition.explored:
        blocks = partition.blocks[qid]
        test.assertEqual(sum(len(b) for b in blocks.values()), len(states))
        covered = set()
        for block in blocks.values():
            covered.update(block)
        test.assertEqual(covered, states)


def check_product(test, product):
    for v in range(len(product)):
        test.assertEqual(len(product.tags(v)), 1)


class PersistenceSynthesisTest(unittest.TestCase):

    def test_single_objective(self):
        protocol, product = synth_persistence(toy_model(),
                                              parse_requirement(SINGLE))
        self.assertAlmostEqual(protocol.satisfaction_prob, 0.9)
        self.assertEqual(len(product), 6)
        self.assertEqual(product.turn(product.initial), SWITCH)
        self.assertEqual(product.keys[product.initial], (0, 'q0', SWITCH))
        self.assertEqual(protocol[('q0', 0)], Action('go'))
        check_product(self, product)

    def test_fallback(self):
        mdp = toy_model()
        req = parse_requirement(FALLBACK)
        result = PersistenceSynthesizer(mdp, req).run()
        protocol = result.protocol
        self.assertAlmostEqual(protocol.satisfaction_prob, 1.0)
        self.assertEqual(protocol[('q0', 2)], Switch('w01', 'q1'))
        self.assertEqual(protocol[('q0', 1)], Action('stay'))
        self.assertEqual(protocol[('q1', 0)], Action('go'))
        self.assertEqual(result.partition.explored, ['q0', 'q1'])
        self.assertEqual(list(result.partition.blocks['q0']['q1']), [2])
        self.assertEqual(result.partition.block_of('q0', 0), 'q0')
        self.assertEqual(result.partition.block_of('q0', 2), 'q1')
        self.assertTrue(result.accepting((2, 'q1', SWITCH)))
        self.assertFalse(result.accepting((2, 'q0', SWITCH)))
        protocol.check(mdp, req)

    def test_rejects_general_requirements(self):
        req = parse_requirement('objective q0 = Pmax [ F "goal" ];\n'
                                'objective q1 = Pmin [ F G "fail" ];\n'
                                'context w : q0 -> q1 when Pmax < 0.5;\n')
        try:
            synth_persistence(toy_model(), req)
        except RequirementError as e:
            self.assertEqual(len(e.violations), 2)
        else:
            self.fail('RequirementError not raised')
        self.assertRaises(RequirementError, partition_states, toy_model(), req)

    def test_partition_covers_reachable_states(self):
        with quiet():
            for mdp, req in random_instances(20, 50):
                partition = partition_states(mdp, req)
                self.assertEqual(partition.explored[0], 'q0')
                check_partition(self, mdp, partition)
                rows = list(partition.rows())
                self.assertEqual(len(rows), len(partition.explored) *
                                 len(reach(mdp, mdp.initial)))

    def test_product_is_a_dtmc(self):
        with quiet():
            for mdp, req in random_instances(21, 25):
                result = PersistenceSynthesizer(mdp, req).run()
                check_product(self, result.chain)
                states, _, choices = result.stats.product_size
                self.assertEqual(states, choices)
                self.assertTrue(0.0 <= result.satisfaction_prob <= 1.0)

    def test_missing_strategy(self):
        mdp = toy_model()
        req = parse_requirement(SINGLE)
        partition = partition_states(mdp, req)
        self.assertRaises(ProductError, build_product, mdp, req, {},
                          partition)

    def test_product_matches_protocol_chain(self):
        instances = 0
        with quiet():
            for mdp, req in random_instances(22, 10, max_states=5,
                                             num_objectives=2,
                                             max_branches=2):
                result = PersistenceSynthesizer(mdp, req).run()
                product = result.chain
                self.assertTrue(len(product) <= 30)
                chain = compose_protocol(mdp, req, result.protocol)
                self.check_forward(product, chain)
                self.check_backward(product, chain)
                instances += 1
        self.assertEqual(instances, 10)

    def check_forward(self, product, chain):
        """Every path of the protocol chain has a product path with the
        same probability and a stutter-equivalent trace."""
        for sample in enumerate_paths(chain, PATH_LENGTH):
            keys = [chain.keys[v] for v in sample.path]
            qid, state = keys[0]
            v = product.index[(state, qid, SWITCH)]
            probability = Fraction(1)
            trace = [product.labels[v]]
            for next_qid, next_state in keys[1:]:
                if next_qid != qid:
                    (tag, succ, prob), = product.edges[v]
                    self.assertEqual(tag[0], 'context')
                else:
                    (tag, middle, prob), = product.edges[v]
                    self.assertEqual(tag, TAU)
                    trace.append(product.labels[middle])
                    wanted = (next_state, qid, SWITCH)
                    matches = [(s, p) for _, s, p in product.edges[middle]
                               if product.keys[s] == wanted]
                    self.assertEqual(len(matches), 1)
                    succ, prob = matches[0]
                self.assertEqual(product.keys[succ],
                                 (next_state, next_qid, SWITCH))
                probability *= exact(prob)
                trace.append(product.labels[succ])
                v, qid, state = succ, next_qid, next_state
            self.assertEqual(probability, sample.probability)
            self.assertTrue(stutter_equivalent(sample.trace, trace))

    def check_backward(self, product, chain):
        """Every product path, read at its turn-2 states, is a path of
        the protocol chain with the same probability."""
        for sample in enumerate_paths(product, 2 * PATH_LENGTH):
            keys = [product.keys[v] for v in sample.path
                    if product.turn(v) == SWITCH]
            path = [chain.index[(qid, state)] for state, qid, _ in keys]
            probability = Fraction(1)
            for v, succ in zip(path, path[1:]):
                successors = dict(chain.successors(v))
                self.assertTrue(succ in successors)
                probability *= exact(successors[succ])
            self.assertEqual(probability, sample.probability)
            self.assertTrue(stutter_equivalent(
                sample.trace, [chain.labels[v] for v in path]))


class PctlSynthesisTest(unittest.TestCase):

    def test_general_requirement(self):
        protocol = synth_pctl(toy_model(), parse_requirement(
            'objective q0 = Pmax [ F "goal" ];'))
        self.assertAlmostEqual(protocol.satisfaction_prob, 0.9)
        self.assertEqual(protocol.algorithm, 'pctl')
        protocol = synth_pctl(toy_model(), parse_requirement(
            'objective q0 = Pmin [ F "fail" ];'))
        self.assertAlmostEqual(protocol.satisfaction_prob, 0.1)

    def test_fallback(self):
        mdp = toy_model()
        synthesizer = PctlSynthesizer(mdp, parse_requirement(FALLBACK))
        result = synthesizer.run()
        protocol = result.protocol
        self.assertAlmostEqual(protocol.satisfaction_prob, 1.0)
        self.assertEqual(sorted(protocol.entries),
                         [('q0', 0), ('q0', 1), ('q0', 2), ('q1', 2)])
        self.assertEqual(protocol.switches(),
                         {('q0', 2): Switch('w01', 'q1')})
        self.assertEqual(synthesizer.explored, ['q0', 'q1'])
        self.assertTrue(result.accepting(('q1', 2)))
        self.assertEqual(len(result.chain), 4)

    def test_contexts_of_minimizing_objectives(self):
        # from 0, `a` surely reaches the goal and `b` surely avoids it
        mdp = Mdp(3, 0, [
            (0, 'a', [(1, 1.0)]),
            (0, 'b', [(2, 1.0)]),
            (1, 'stay', [(1, 1.0)]),
            (2, 'stay', [(2, 1.0)]),
        ], props=['goal', 'fail'], labels={1: ['goal'], 2: ['fail']})
        req = parse_requirement(
            'objective q0 = Pmin [ F "goal" ];\n'
            'objective q1 = Pmax [ F "fail" ];\n'
            'context w01 : q0 -> q1 when Pmax < 0.5;\n')
        synthesizer = PctlSynthesizer(mdp, req)
        protocol = synthesizer.run().protocol
        self.assertEqual(synthesizer.vector('q0')[0], 0.0)
        self.assertEqual(synthesizer.context_vector('q0')[0], 1.0)
        self.assertEqual(protocol.switches(), {})
        self.assertEqual(protocol[('q0', 0)], Action('b'))
        self.assertEqual(synthesizer.explored, ['q0'])

        # once the goal is unlikely even at best the context fires
        protocol = synth_pctl(toy_model(p_goal=0.4), req)
        self.assertEqual(protocol[('q0', 0)], Switch('w01', 'q1'))
        self.assertAlmostEqual(protocol.satisfaction_prob, 0.6)

    def test_nondeterministic_contexts(self):
        req = parse_requirement(
            'objective a = Pmax [ F G "goal" ];\n'
            'objective b = Pmax [ F G "fail" ];\n'
            'objective c = Pmax [ F G "fail" ];\n'
            'context w1 : a -> b when Pmax < 0.5;\n'
            'context w2 : a -> c when Pmax < 0.8;\n')
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            protocol = synth_pctl(toy_model(), req)
        self.assertEqual(protocol[('a', 2)], Switch('w1', 'b'))
        self.assertTrue(NondeterminismWarning in
                        [w.category for w in caught])

    def test_agrees_with_persistence(self):
        with quiet():
            for mdp, req in random_instances(23, 25):
                general = synth_pctl(mdp, req)
                persistence, _ = synth_persistence(mdp, req)
                self.assertAlmostEqual(general.satisfaction_prob,
                                       persistence.satisfaction_prob,
                                       delta=1e-6)
                for key, decision in general.items():
                    other = persistence.get(key)
                    if other is not None:
                        self.assertEqual(isinstance(decision, Switch),
                                         isinstance(other, Switch))
                        if isinstance(decision, Switch):
                            self.assertEqual(decision, other)


class ProtocolTest(unittest.TestCase):

    def setUp(self):
        self.mdp = toy_model()
        self.req = parse_requirement(FALLBACK)
        self.result = PersistenceSynthesizer(self.mdp, self.req).run()

    def test_json(self):
        doc = json.loads(self.result.protocol.to_json())
        self.assertEqual(doc['algorithm'], 'persistence')
        self.assertAlmostEqual(doc['c'], 1.0)
        self.assertEqual(doc['entries'][0],
                         {'objective': 'q0', 'state': 0,
                          'decision': {'kind': 'action', 'action': 'go'}})
        self.assertEqual(doc['entries'][2]['decision'],
                         {'kind': 'switch', 'context': 'w01',
                          'target': 'q1'})

    def test_incompatible(self):
        bad = Protocol({('q0', 0): Action('stay')})
        self.assertRaises(IncompatibleProtocol, bad.check, self.mdp, self.req)
        self.assertRaises(IncompatibleProtocol, compose_protocol, self.mdp,
                          self.req, bad)
        self.assertRaises(IncompatibleProtocol, compose_protocol, self.mdp,
                          self.req, Protocol({}))
        wrong = Protocol({('q1', 2): Switch('w01', 'q0')})
        self.assertRaises(IncompatibleProtocol, wrong.check, self.mdp,
                          self.req)

    def test_compose(self):
        chain = compose_protocol(self.mdp, self.req, self.result.protocol)
        self.assertEqual(chain.keys[chain.initial], ('q0', 0))
        self.assertEqual(chain.tags(chain.index[('q0', 2)]), ['w01'])
        self.assertEqual(chain.successors(chain.index[('q0', 2)]),
                         [(chain.index[('q1', 2)], 1.0)])

    def test_dot(self):
        text = product_to_dot(self.result.chain, self.mdp)
        self.assertTrue(text.startswith('digraph product {'))
        self.assertTrue('shape=doublecircle' in text)
        self.assertTrue('style=dashed' in text)
        self.assertTrue('"w:w01"' in text)
        self.assertTrue('"start,q0,2"' in text)
        chain = compose_protocol(self.mdp, self.req, self.result.protocol)
        text = chain_to_dot(chain, self.mdp)
        self.assertTrue(text.startswith('digraph protocol {'))
        self.assertTrue('"q0,start"' in text)
        self.assertTrue('"go 0.9"' in text)

    def test_stats(self):
        stats = self.result.stats
        self.assertEqual(stats.columns(),
                         ['model', 'm_states', 'm_transitions', 'm_choices',
                          'p_states', 'p_transitions', 'p_choices', 't_model',
                          't_q0', 't_q1', 't_product', 't_verify', 't_total'])
        row = stats.row()
        self.assertEqual(len(row), len(stats.columns()))
        self.assertEqual(row[1:4], [3, 4, 3])
        self.assertEqual(row[4], row[6])
        self.assertTrue(all(cell != '' for cell in row[8:]))
        stream = io.StringIO()
        stats.write_csv(stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[0].startswith('model,m_states'))

    def test_unexplored_objective_time_is_empty(self):
        stats = RunStats('toy', ['q0', 'q1'])
        with stats.objective('q0'):
            pass
        row = stats.row()
        self.assertEqual(row[0], 'toy')
        self.assertNotEqual(row[8], '')
        self.assertEqual(row[9], '')
        self.assertRaises(KeyError, stats.phase, 'nowhere')

    def test_product_with_a_choice_is_rejected(self):
        stats = RunStats('toy', ['q0'])
        chain = Dtmc(['s', 't'], 's', {
            's': [('a', 't', 1.0), ('b', 's', 1.0)],
            't': [('a', 't', 1.0)],
        })
        self.assertRaises(ProductError, stats.record_product, chain)
        self.assertEqual(stats.product_size, None)
