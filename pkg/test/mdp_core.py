import json
import random
import unittest
import warnings

import numpy as np

from captl.casestudies import RobotParams, build_robot
from captl.exceptions import DeadlockWarning, ParseError, StateError, \
     ValidationError
from captl.mdp import Mdp, cardinality, parse_model, post, reach, \
     serialize_model

from test.randmodels import random_mdp


def toy_model(p_goal=0.9):
    return Mdp(3, 0, [
        (0, 'go', [(1, p_goal), (2, round(1.0 - p_goal, 10))]),
        (1, 'stay', [(1, 1.0)]),
        (2, 'stay', [(2, 1.0)]),
    ], props=['goal', 'fail'], labels={1: ['goal'], 2: ['fail']},
        names={0: 'start', 1: 'goal', 2: 'fail'})


class MdpTest(unittest.TestCase):

    def test_basic_queries(self):
        mdp = toy_model()
        self.assertEqual(mdp.enabled(0), ('go',))
        self.assertEqual(mdp.distribution(0, 'go'), ((1, 0.9), (2, 0.1)))
        self.assertEqual(mdp.distribution(0, 'stay'), ())
        self.assertEqual(list(reach(mdp, 0)), [0, 1, 2])
        self.assertEqual(list(reach(mdp, 2)), [2])
        self.assertEqual(list(post(mdp, 0, 'go')), [1, 2])
        self.assertEqual(list(post(mdp, 0, 'stay')), [])
        self.assertEqual(mdp.name(1), 'goal')

    def test_cardinality(self):
        size = cardinality(toy_model())
        self.assertEqual(size.num_states, 3)
        self.assertEqual(size.num_nonzero_transitions, 4)
        self.assertEqual(size.num_choices, 3)

    def test_reach_is_transitive_closure(self):
        rng = random.Random(21)
        for _ in range(30):
            mdp = random_mdp(rng, max_states=20, min_states=20)
            n = mdp.num_states
            adjacent = np.eye(n, dtype=bool)
            for state, _, branches in mdp.transitions():
                for target, _ in branches:
                    adjacent[state, target] = True
            for k in range(n):
                adjacent |= np.outer(adjacent[:, k], adjacent[k, :])
            for state in mdp.states:
                closure = reach(mdp, state)
                self.assertEqual(set(closure),
                                 set(int(t) for t in
                                     np.flatnonzero(adjacent[state])))
                self.assertTrue(state in closure)
                for t in closure:
                    for action in mdp.enabled(t):
                        self.assertTrue(set(post(mdp, t, action))
                                        <= set(closure))

    def test_cardinality_of_robot_grid(self):
        mdp, _ = build_robot(RobotParams.from_size((3, 3)))
        size = cardinality(mdp)
        self.assertEqual(size.num_states, len(list(mdp.states)))
        self.assertEqual(size.num_choices,
                         sum(len(mdp.enabled(s)) for s in mdp.states))
        self.assertEqual(size.num_nonzero_transitions,
                         sum(1 for _, _, branches in mdp.transitions()
                             for _, p in branches if p > 0))

    def test_bad_distribution(self):
        self.assertRaises(ValidationError, Mdp, 2, 0,
                          [(0, 'a', [(0, 0.5), (1, 0.4)])])
        self.assertRaises(ValidationError, Mdp, 2, 0,
                          [(0, 'a', [(0, 1.5)])])
        self.assertRaises(ValidationError, Mdp, 2, 0,
                          [(0, 'a', [(1, 1.0)]), (0, 'a', [(0, 1.0)])])

    def test_bad_indices(self):
        self.assertRaises(StateError, Mdp, 2, 5, [(0, 'a', [(1, 1.0)])])
        self.assertRaises(StateError, Mdp, 2, 0, [(0, 'a', [(7, 1.0)])])
        self.assertRaises(StateError, reach, toy_model(), 3)
        self.assertRaises(StateError, reach, toy_model(), True)

    def test_undeclared_proposition(self):
        self.assertRaises(ValidationError, Mdp, 1, 0, [(0, 'a', [(0, 1.0)])],
                          props=['p'], labels={0: ['q']})

    def test_action_table(self):
        self.assertRaises(ValidationError, Mdp, 1, 0, [(0, 'b', [(0, 1.0)])],
                          actions=['a'])
        mdp = Mdp(2, 0, [(1, 'b', [(1, 1.0)]), (0, 'a', [(1, 1.0)])])
        self.assertEqual(mdp.actions, ('b', 'a'))

    def test_deadlock_warning(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            mdp = Mdp(2, 0, [(0, 'a', [(1, 1.0)])])
        self.assertTrue(mdp.is_deadlock(1))
        self.assertEqual([w.category for w in caught], [DeadlockWarning])

    def test_with_absorbing(self):
        mdp = toy_model().with_absorbing([0])
        self.assertTrue(mdp.is_deadlock(0))
        self.assertEqual(mdp.enabled(1), ('stay',))

    def test_serialize(self):
        doc = json.loads(serialize_model(toy_model()))
        self.assertEqual(doc['states'], 3)
        self.assertEqual(doc['init'], 0)
        self.assertEqual(doc['labels'], {'1': ['goal'], '2': ['fail']})
        self.assertEqual(doc['actions'], ['go', 'stay'])
        self.assertEqual(doc['transitions'][0],
                         {'from': 0, 'action': 'go',
                          'branches': [{'to': 1, 'prob': 0.9},
                                       {'to': 2, 'prob': 0.1}]})

    def test_roundtrip_random_models(self):
        rng = random.Random(11)
        for _ in range(100):
            mdp = random_mdp(rng)
            text = serialize_model(mdp)
            self.assertEqual(parse_model(text), mdp)
            self.assertEqual(serialize_model(parse_model(text)), text)

    def test_parse_without_action_table(self):
        doc = json.loads(serialize_model(toy_model()))
        del doc['actions']
        self.assertEqual(parse_model(json.dumps(doc)).actions, ('go', 'stay'))

    def test_parse_errors(self):
        try:
            parse_model('{"states": 2,\n "init": }')
        except ParseError as e:
            self.assertEqual(e.line, 2)
        else:
            self.fail('ParseError not raised')
        self.assertRaises(ValidationError, parse_model, '[]')
        self.assertRaises(ValidationError, parse_model,
                          '{"states": 1, "transitions": []}')
        self.assertRaises(ValidationError, parse_model,
                          '{"states": 1, "init": true, "transitions": []}')
