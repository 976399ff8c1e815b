"""
A three-state model: from ``start`` the only action reaches ``goal``
with probability 0.9 and ``fail`` otherwise. The requirement asks for
``F G "goal"`` and falls back to staying in ``fail`` once the goal
becomes unlikely.

Run it as ``python -m example.toy``; it writes ``toy.json`` and
``toy.captl`` into the current directory, so the same instance can be
fed to ``captl synth --model toy.json --req toy.captl``.
"""
import logging

from captl import Mdp, parse_requirement, serialize_model
from captl.oracle import simulate
from captl.synthesis import PersistenceSynthesizer


REQUIREMENT = """\
objective q0 = Pmax [ F G "goal" ];
objective q1 = Pmax [ F G "fail" ];
context w01 : q0 -> q1 when Pmax < 0.5;
initial q0;
"""


def create_model(p_goal=0.9):
    return Mdp(3, 0, [
        (0, 'go', [(1, p_goal), (2, 1.0 - p_goal)]),
        (1, 'stay', [(1, 1.0)]),
        (2, 'stay', [(2, 1.0)]),
    ], props=['goal', 'fail'], labels={1: ['goal'], 2: ['fail']},
        names={0: 'start', 1: 'goal', 2: 'fail'})


def create_requirement():
    return parse_requirement(REQUIREMENT)


if __name__ == '__main__':
    logging.basicConfig(level=logging.INFO)
    mdp = create_model()
    req = create_requirement()
    result = PersistenceSynthesizer(mdp, req).run()
    print(result.protocol.to_json())
    print('c=%.6f' % result.satisfaction_prob)
    estimate = simulate(result.chain, accepting=result.accepting)
    print('simulated %.6f +- %.6f' % (estimate.mean, estimate.half_width))

    with open('toy.json', 'w') as f:
        f.write(serialize_model(mdp))
    with open('toy.captl', 'w') as f:
        f.write(REQUIREMENT)
