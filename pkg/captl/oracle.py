# -*- coding: utf-8 -*-
"""
    captl.oracle
    ~~~~~~~~~~~~

    Ground truth that shares no code path with the value iteration
    engine: exact rational solving, exhaustive enumeration of memoryless
    strategies, Monte-Carlo sampling and trace comparison.

    :license: BSD, see LICENSE for more details.
"""
from collections import namedtuple
from fractions import Fraction
from itertools import groupby, product
import logging
import math

import numpy as np

from captl.config import DEFAULT_RUNS, DEFAULT_SEED, EXACT_SOLVE_LIMIT, \
     STRATEGY_LIMIT
from captl.engine.core import StrategyMap, eval_state_formula
from captl.engine.dtmc import induced_chain
from captl.exceptions import OracleError
from captl.formula import Eventually, EventuallyAlways, Query
from captl.mdp import reach


log = logging.getLogger(__name__)


#: `path` holds chain state indices, `trace` their label sets and
#: `probability` the exact product of the step probabilities
TraceSample = namedtuple('TraceSample', 'path trace probability')

#: 95% normal approximation of a Bernoulli estimate
SimulationStats = namedtuple('SimulationStats',
                             'mean stddev half_width runs')


def exact(prob):
    """The decimal a float was written as, as a :class:`Fraction`."""
    return Fraction(repr(float(prob)))


def _exact_successors(chain, v):
    return [(succ, exact(prob)) for succ, prob in chain.successors(v)]


def _can_reach(chain, target):
    preds = dict((v, set()) for v in range(len(chain)))
    for v in range(len(chain)):
        for succ, _ in chain.successors(v):
            preds[succ].add(v)
    seen = set(target)
    stack = list(target)
    while stack:
        for v in preds[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _solve(rows, rhs):
    """Gauss-Jordan elimination over :class:`Fraction`."""
    n = len(rows)
    matrix = [list(row) + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if matrix[r][col] != 0), None)
        if pivot is None:
            raise OracleError('singular system at column %d' % col)
        matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
        head = matrix[col][col]
        matrix[col] = [value / head for value in matrix[col]]
        for r in range(n):
            factor = matrix[r][col]
            if r != col and factor != 0:
                matrix[r] = [a - factor * b
                             for a, b in zip(matrix[r], matrix[col])]
    return [row[n] for row in matrix]


def exact_dtmc_reach(chain, target):
    """Exact probability of reaching `target` (state indices) from
    every state of `chain`, as a list of :class:`Fraction`."""
    if len(chain) > EXACT_SOLVE_LIMIT:
        raise OracleError('chain has %d states, the exact solver handles '
                          'at most %d' % (len(chain), EXACT_SOLVE_LIMIT))
    target = set(target)
    result = [Fraction(1) if v in target else Fraction(0)
              for v in range(len(chain))]
    can_reach = _can_reach(chain, target)
    unknown = [v for v in range(len(chain))
               if v in can_reach and v not in target]
    if not unknown:
        return result
    position = dict((v, i) for i, v in enumerate(unknown))
    rows, rhs = [], []
    for v in unknown:
        row = [Fraction(0)] * len(unknown)
        row[position[v]] += 1
        b = Fraction(0)
        for succ, prob in _exact_successors(chain, v):
            if succ in target:
                b += prob
            elif succ in position:
                row[position[succ]] -= prob
        rows.append(row)
        rhs.append(b)
    for v, value in zip(unknown, _solve(rows, rhs)):
        result[v] = value
    return result


def exact_persistence(chain, accepting):
    """Exact probability of ending in a bottom component of `chain`
    whose every state satisfies `accepting` (called with keys)."""
    target = set()
    for component in chain.bsccs():
        if all(accepting(chain.keys[v]) for v in component):
            target.update(component)
    return exact_dtmc_reach(chain, target)[chain.initial]


def enumerate_strategy_optimum(mdp, path, direction='max', root=None):
    """The optimal value of ``F a`` or ``F G a`` at `root` over every
    memoryless strategy, as a :class:`Fraction`.

    `path` may also be a :class:`~captl.formula.Query`, whose direction
    then wins.
    """
    if isinstance(path, Query):
        path, direction = path.path, path.direction
    if not isinstance(path, (Eventually, EventuallyAlways)) or \
            getattr(path, 'bound', None) is not None:
        raise OracleError('only F and F G path formulas are enumerated')
    goal = eval_state_formula(mdp, path.operand).states
    root = mdp.initial if root is None else root
    states = [s for s in reach(mdp, root) if not mdp.is_deadlock(s)]
    options = [mdp.enabled(s) for s in states]
    count = 1
    for enabled in options:
        count *= len(enabled)
    if count > STRATEGY_LIMIT:
        raise OracleError('%d strategies exceed the limit of %d'
                          % (count, STRATEGY_LIMIT))
    log.debug('enumerating %d strategies', count)

    best = None
    for combination in product(*options):
        chain = induced_chain(mdp, StrategyMap(zip(states, combination)), root)
        if isinstance(path, EventuallyAlways):
            value = exact_persistence(chain, goal.__contains__)
        else:
            target = [v for v, s in enumerate(chain.keys) if s in goal]
            value = exact_dtmc_reach(chain, target)[chain.initial]
        if best is None or (value > best if direction == 'max'
                            else value < best):
            best = value
    return best


def simulate(chain, runs=DEFAULT_RUNS, horizon=None, seed=DEFAULT_SEED,
             accepting=None, reach=False):
    """Estimates by sampling how likely a run of `chain` is successful.

    With `reach` a run succeeds when it hits a key satisfying
    `accepting` within `horizon` steps. Otherwise it succeeds when it
    is inside a bottom component whose every key is accepting once it
    enters a bottom component or the horizon ends. The horizon defaults
    to ten times the number of states.
    """
    if runs < 1:
        raise OracleError('at least one run is needed')
    accepting = accepting or (lambda key: False)
    horizon = 10 * len(chain) if horizon is None else horizon
    rng = np.random.default_rng(seed)

    targets, cumulative = [], []
    for v in range(len(chain)):
        succ = chain.successors(v)
        targets.append(np.array([t for t, _ in succ], dtype=np.int64))
        cumulative.append(np.cumsum([p for _, p in succ]))
    good = np.array([accepting(key) for key in chain.keys], dtype=bool)
    bottom = np.full(len(chain), -1, dtype=np.int64)
    accepting_bottom = []
    for i, component in enumerate(chain.bsccs()):
        bottom[component] = i
        accepting_bottom.append(bool(good[component].all()))

    successes = 0
    for _ in range(runs):
        v = chain.initial
        for _ in range(horizon + 1):
            if reach and good[v]:
                successes += 1
                break
            if not reach and bottom[v] >= 0:
                successes += accepting_bottom[bottom[v]]
                break
            u = rng.random() * cumulative[v][-1]
            v = int(targets[v][min(np.searchsorted(cumulative[v], u,
                                                   side='right'),
                                   len(targets[v]) - 1)])
    mean = successes / float(runs)
    stddev = math.sqrt(mean * (1.0 - mean) / runs)
    return SimulationStats(mean, stddev, 1.96 * stddev, runs)


def stutter_equivalent(t1, t2):
    """Whether two finite traces are equal once consecutive repeats are
    collapsed."""
    return [k for k, _ in groupby(t1)] == [k for k, _ in groupby(t2)]


def enumerate_paths(chain, length):
    """Every path of `chain` with exactly `length` steps from its
    initial state, with exact probabilities."""
    samples = []
    stack = [((chain.initial,), Fraction(1))]
    while stack:
        path, probability = stack.pop()
        if len(path) == length + 1:
            samples.append(TraceSample(
                path, tuple(chain.labels[v] for v in path), probability))
            continue
        for succ, prob in _exact_successors(chain, path[-1]):
            stack.append((path + (succ,), probability * prob))
    samples.sort(key=lambda sample: sample.path)
    return samples
