"""
    captl.engine
    ~~~~~~~~~~~~

    Quantitative PCTL solving over explicit MDPs and DTMCs.
"""
from captl.engine.core import (StrategyMap, TargetSet, ValueVector,
                               eval_state_formula, states_of)
from captl.engine.dtmc import (Dtmc, dtmc_persistence_prob, induced_chain,
                               reach_probabilities)
from captl.engine.persistence import mec_decomposition, persistence_values
from captl.engine.query import check_query, objective_values, path_values
from captl.engine.reach import (bounded_until_values, max_reach_values,
                                min_reach_values, next_values, prob0_max,
                                prob0_min, prob1_max, prob1_min, reach_values,
                                until_values)
from captl.engine.strategy import extract_strategy, verify_context


__all__ = ['StrategyMap', 'TargetSet', 'ValueVector', 'eval_state_formula',
           'states_of', 'Dtmc', 'dtmc_persistence_prob', 'induced_chain',
           'reach_probabilities', 'mec_decomposition', 'persistence_values',
           'check_query', 'objective_values', 'path_values',
           'bounded_until_values', 'max_reach_values', 'min_reach_values',
           'next_values', 'prob0_max', 'prob0_min', 'prob1_max', 'prob1_min',
           'reach_values', 'until_values', 'extract_strategy',
           'verify_context']
