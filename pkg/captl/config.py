# -*- coding: utf-8 -*-
"""
    captl.config
    ~~~~~~~~~~~~

    Numeric defaults shared by the engine, the synthesis procedures and
    the command line. Functions take these as keyword defaults, so
    callers override them per call.

    :license: BSD, see LICENSE for more details.
"""

#: value iteration stops once the max-norm change drops below this
DEFAULT_EPSILON = 1e-6

DEFAULT_MAX_ITER = 1000000

#: slack for distribution sums and for argmax ties
PROB_TOLERANCE = 1e-9

#: boundary warnings fire within BOUNDARY_FACTOR * epsilon of an endpoint
BOUNDARY_FACTOR = 10

#: chains up to this many states are solved with a dense linear solve
EXACT_SOLVE_LIMIT = 2000

#: the strategy enumeration oracle refuses larger instances
STRATEGY_LIMIT = 1000000

DEFAULT_RUNS = 10000
DEFAULT_SEED = 0
