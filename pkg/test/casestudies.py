import math
import unittest
import warnings

from captl.casestudies import MedaParams, RobotParams, build_meda, \
     build_robot, gen_meda, gen_robot
from captl.engine.query import objective_values
from captl.exceptions import BoundaryWarning, ValidationError
from captl.mdp import parse_model, reach
from captl.oracle import simulate
from captl.parser import parse_requirement
from captl.requirement import validate_persistence
from captl.synthesis import PersistenceSynthesizer, partition_states, \
     synth_pctl

from test.synthesis import check_partition, check_product


def by_name(mdp):
    return dict((mdp.name(s), s) for s in mdp.states)


class RobotTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.mdp, cls.req = build_robot()
        cls.states = by_name(cls.mdp)

    def test_requirement(self):
        self.assertEqual(validate_persistence(self.req), [])
        self.assertEqual(self.req.initial, 'q0')
        self.assertEqual([o.id for o in self.req.objectives],
                         ['q0', 'q1', 'q2', 'q3'])
        self.assertTrue(0.8 in self.req.context('w01').interval)
        self.assertFalse(0.85 in self.req.context('w01').interval)

    def test_moves(self):
        start = self.states['g0_h10_x1_y1']
        self.assertEqual(start, self.mdp.initial)
        branches = dict((self.mdp.name(t), p) for t, p in
                        self.mdp.distribution(start, 'N'))
        self.assertEqual(sorted(branches), ['g0_h8_x1_y1', 'g0_h9_x1_y2'])
        self.assertAlmostEqual(branches['g0_h9_x1_y2'], 0.9)
        self.assertAlmostEqual(branches['g0_h8_x1_y1'], 0.1)
        # no moves off the grid
        self.assertEqual(self.mdp.distribution(start, 'S'), ())
        self.assertEqual(self.mdp.distribution(start, 'W'), ())

    def test_sleep_is_absorbing(self):
        asleep = self.states['g1_h10_x1_y1']
        self.assertEqual(list(self.mdp.enabled(asleep)), ['sleep'])
        self.assertEqual(list(self.mdp.distribution(asleep, 'sleep')),
                         [(asleep, 1.0)])
        self.assertTrue('sleep' in self.mdp.labels[asleep])

    def test_generation_is_deterministic(self):
        model_text, req_text = gen_robot()
        self.assertEqual(gen_robot(), (model_text, req_text))
        self.assertEqual(parse_model(model_text), self.mdp)
        self.assertEqual(parse_requirement(req_text), self.req)

    def test_invalid_parameters(self):
        self.assertRaises(ValidationError, RobotParams(battery=11).resolved)
        self.assertRaises(ValidationError,
                          RobotParams(goal=(4, 4)).resolved)
        self.assertRaises(ValidationError,
                          RobotParams(obstacle_prob=1.5).resolved)
        self.assertEqual(RobotParams.from_size((4, 2)).resolved().goal,
                         (4, 2))

    def test_values_shrink_with_the_grid(self):
        values = []
        for size in (3, 6, 9):
            mdp, req = build_robot(RobotParams.from_size((size, size)))
            x = objective_values(mdp, req.objective('q0'))
            values.append(x[mdp.initial])
        self.assertTrue(values[0] > 0)
        self.assertTrue(values[0] >= values[1] >= values[2])
        self.assertAlmostEqual(values[2], 0.0)

    def test_synthesis(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', BoundaryWarning)
            result = PersistenceSynthesizer(self.mdp, self.req).run()
            general = synth_pctl(self.mdp, self.req)
        check_partition(self, self.mdp, result.partition)
        check_product(self, result.chain)
        c = result.satisfaction_prob
        self.assertTrue(0.0 < c <= 1.0)
        self.assertAlmostEqual(general.satisfaction_prob, c, delta=1e-6)
        self.assertEqual(general.switches(),
                         dict((key, d) for key, d in
                              result.protocol.switches().items()
                              if key in general))

        runs = 10000
        estimate = simulate(result.chain, runs=runs, seed=3,
                            accepting=result.accepting, reach=result.reach)
        sigma = math.sqrt(c * (1.0 - c) / runs)
        self.assertTrue(abs(estimate.mean - c) <= 3 * sigma + 1e-9)


class MedaTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.mdp, cls.req = build_meda()
        cls.states = by_name(cls.mdp)

    def test_requirement(self):
        self.assertEqual(validate_persistence(self.req), [])
        self.assertTrue(0.8 in self.req.context('w01').interval)
        self.assertFalse(0.85 in self.req.context('w01').interval)
        self.assertTrue(0.5 in self.req.context('w12').interval)

    def test_scheduler(self):
        initial = self.mdp.initial
        self.assertEqual(self.mdp.name(initial), 's0_A-_B-_e00')
        self.assertEqual(list(self.mdp.enabled(initial)),
                         ['dispense', 'abort'])
        self.assertAlmostEqual(
            sum(p for _, p in self.mdp.distribution(initial, 'dispense')),
            1.0)
        for name in ('mixed', 'salvaged', 'aborted'):
            state = self.states[name]
            self.assertEqual(list(self.mdp.enabled(state)), ['idle'])
            self.assertTrue(name in self.mdp.labels[state])

    def test_mixing_needs_a_shared_block(self):
        mixing = 0
        for state in self.mdp.states:
            if 'mix' in self.mdp.enabled(state):
                mixing += 1
                self.assertTrue('inBlock' in self.mdp.labels[state])
                (target, p), = self.mdp.distribution(state, 'mix')
                self.assertEqual(self.mdp.name(target), 'mixed')
        self.assertTrue(mixing > 0)

    def test_no_deadlocks(self):
        states = reach(self.mdp, self.mdp.initial)
        self.assertEqual(len(states), self.mdp.num_states)
        for state in states:
            self.assertTrue(self.mdp.enabled(state))

    def test_error_probabilities(self):
        params = MedaParams().resolved()
        self.assertAlmostEqual(params.p1(0), 0.05)
        self.assertAlmostEqual(params.p1(1), 0.1)
        self.assertAlmostEqual(params.p2(2), 0.24)
        self.assertEqual(MedaParams(p1_coeff=0.6).p1(1), 1.0)
        self.assertEqual(params.dispenser_a, (1, 1))
        self.assertEqual(params.dispenser_b, (4, 3))

    def test_invalid_parameters(self):
        self.assertRaises(ValidationError, MedaParams(width=2).resolved)
        self.assertRaises(ValidationError,
                          MedaParams(dispenser_a=(7, 1)).resolved)
        self.assertRaises(ValidationError,
                          MedaParams(max_errors=6).resolved)

    def test_generation_is_deterministic(self):
        params = MedaParams.from_size((5, 5))
        self.assertEqual(gen_meda(params), gen_meda(params))

    def test_partition(self):
        mdp, req = build_meda(MedaParams.from_size((5, 5)))
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', BoundaryWarning)
            partition = partition_states(mdp, req)
        check_partition(self, mdp, partition)
        x = partition.vectors['q0']
        mixed = by_name(mdp)['mixed']
        self.assertAlmostEqual(x[mixed], 1.0)
        self.assertTrue(0.0 < x[mdp.initial] <= 1.0)

    def test_synthesis(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', BoundaryWarning)
            result = PersistenceSynthesizer(self.mdp, self.req).run()
        check_partition(self, self.mdp, result.partition)
        check_product(self, result.chain)
        states, _, choices = result.stats.product_size
        self.assertEqual(states, choices)
        self.assertTrue(0.0 < result.satisfaction_prob <= 1.0)


if __name__ == '__main__':
    unittest.main()
