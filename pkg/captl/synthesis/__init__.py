"""
    captl.synthesis
    ~~~~~~~~~~~~~~~

    Protocol synthesis for requirements with context switching.
"""
from captl.synthesis.core import SynthesisResult, Synthesizer
from captl.synthesis.dot import chain_to_dot, product_to_dot
from captl.synthesis.pctl import PctlSynthesizer, synth_pctl
from captl.synthesis.persistence import (Partition, PersistenceSynthesizer,
                                         ProductDtmc, build_product,
                                         partition_states, synth_persistence)
from captl.synthesis.protocol import (Action, Protocol, Switch,
                                      compose_protocol)


SYNTHESIZERS = {
    'pctl': PctlSynthesizer,
    'persistence': PersistenceSynthesizer,
}


__all__ = ['SynthesisResult', 'Synthesizer', 'chain_to_dot',
           'product_to_dot', 'PctlSynthesizer', 'synth_pctl', 'Partition',
           'PersistenceSynthesizer', 'ProductDtmc', 'build_product',
           'partition_states', 'synth_persistence', 'Action', 'Protocol',
           'Switch', 'compose_protocol', 'SYNTHESIZERS']
