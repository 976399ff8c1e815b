"""Seeded random models and requirements for the randomized tests.

Probabilities are whole percents so that the exact oracle reads the
very distribution the model holds.
"""
from captl.engine.dtmc import Dtmc
from captl.mdp import Mdp
from captl.parser import parse_requirement


PROPS = ('a', 'b', 'c')


def random_percents(rng, count):
    cuts = sorted(rng.sample(range(1, 100), count - 1))
    bounds = [0] + cuts + [100]
    return [(hi - lo) / 100.0 for lo, hi in zip(bounds, bounds[1:])]


def random_mdp(rng, max_states=8, max_actions=2, props=PROPS, min_states=2,
               max_branches=3):
    """A model without deadlocks; every state enables 1 to
    `max_actions` actions with 1 to `max_branches` successors each."""
    num_states = rng.randint(min_states, max_states)
    transitions = []
    for state in range(num_states):
        for a in range(rng.randint(1, max_actions)):
            targets = rng.sample(range(num_states),
                                 rng.randint(1, min(max_branches, num_states)))
            branches = list(zip(targets, random_percents(rng, len(targets))))
            transitions.append((state, 'a%d' % a, branches))
    labels = dict((s, [p for p in props if rng.random() < 0.4])
                  for s in range(num_states))
    return Mdp(num_states, 0, transitions, props=props, labels=labels)


def random_state_formula(rng, props=PROPS):
    first, second = rng.sample(props, 2)
    return rng.choice([
        '"%s"' % first,
        '!"%s"' % first,
        '"%s" | "%s"' % (first, second),
        '"%s" & !"%s"' % (first, second),
    ])


def random_persistence_text(rng, num_objectives=None, props=PROPS):
    """A persistence requirement: every objective's contexts lead to
    later objectives and their intervals split ``[0, c)``."""
    num_objectives = num_objectives or rng.randint(2, 4)
    lines = ['objective q%d = Pmax [ F G %s ];'
             % (i, random_state_formula(rng, props))
             for i in range(num_objectives)]
    for i in range(num_objectives - 1):
        later = list(range(i + 1, num_objectives))
        targets = rng.sample(later, rng.randint(1, min(2, len(later))))
        top = rng.choice([0.5, 0.75, 0.9, 1.0])
        cuts = sorted(rng.sample([0.1, 0.2, 0.3, 0.4], len(targets) - 1))
        bounds = [0.0] + cuts + [top]
        for j, target in enumerate(targets):
            lo, hi = bounds[j], bounds[j + 1]
            if lo == 0:
                interval = '< %g' % hi
            else:
                interval = 'in [%g, %g)' % (lo, hi)
            lines.append('context w%d%d : q%d -> q%d when Pmax %s;'
                         % (i, target, i, target, interval))
    lines.append('initial q0;')
    return '\n'.join(lines) + '\n'


def random_persistence_requirement(rng, num_objectives=None, props=PROPS):
    return parse_requirement(random_persistence_text(rng, num_objectives,
                                                     props))


def random_dtmc(rng, max_states=6):
    """A chain over integer keys with percent probabilities."""
    num_states = rng.randint(2, max_states)
    transitions = {}
    for v in range(num_states):
        targets = rng.sample(range(num_states),
                             rng.randint(1, min(2, num_states)))
        transitions[v] = [('step', t, p) for t, p in
                          zip(targets, random_percents(rng, len(targets)))]
    labels = dict((v, ['a'] if rng.random() < 0.5 else [])
                  for v in range(num_states))
    return Dtmc(range(num_states), 0, transitions, labels)
