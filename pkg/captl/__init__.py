# -*- coding: utf-8 -*-
"""
    captl
    ~~~~~

    Protocol synthesis for CAPTL requirements over Markov decision
    processes. A requirement lists objectives (``Pmax``/``Pmin`` path
    formulas) and contexts that switch between them once the active
    objective's optimal probability falls into an interval. Synthesis
    returns a protocol telling, per active objective and state, which
    action to play or which context to take, together with the
    probability that the requirement is satisfied.

    Typical usage::

        from captl import parse_model, parse_requirement, synth_persistence

        mdp = parse_model(open('robot_3x3.json').read())
        req = parse_requirement(open('robot_3x3.captl').read())
        protocol, product = synth_persistence(mdp, req)
        print(protocol.satisfaction_prob)

    :license: BSD, see LICENSE for more details.
"""
from captl.exceptions import CaptlError
from captl.mdp import Mdp, parse_model, serialize_model
from captl.parser import parse_query, parse_requirement
from captl.requirement import CaptlRequirement, print_requirement
from captl.synthesis import Protocol, synth_pctl, synth_persistence


__version__ = '0.1.0'

__all__ = ['CaptlError', 'Mdp', 'parse_model', 'serialize_model',
           'parse_query', 'parse_requirement', 'CaptlRequirement',
           'print_requirement', 'Protocol', 'synth_pctl',
           'synth_persistence']
