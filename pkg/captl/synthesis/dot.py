"""
    captl.synthesis.dot
    ~~~~~~~~~~~~~~~~~~~

    Graphviz exports of the product and of the protocol chain.
"""
from captl.util import render_template


def _state_name(mdp, state):
    return str(state) if mdp is None else mdp.name(state)


def _edges(chain):
    for v, out in enumerate(chain.edges):
        for tag, succ, prob in out:
            yield v, tag, succ, prob


def product_to_dot(product, mdp=None):
    """DOT text of a product: turn-2 states are double circles, context
    edges are labelled ``w:<id>`` and silent edges are dashed."""
    nodes = []
    for v, (state, qid, turn) in enumerate(product.keys):
        nodes.append((v, '%s,%s,%d' % (_state_name(mdp, state), qid, turn),
                      turn == 2))
    return render_template('product.dot', nodes=nodes,
                           edges=list(_edges(product)),
                           initial=product.initial)


def chain_to_dot(chain, mdp=None):
    """DOT text of the chain a protocol induces over
    ``(objective, state)`` pairs."""
    nodes = [(v, '%s,%s' % (qid, _state_name(mdp, state)))
             for v, (qid, state) in enumerate(chain.keys)]
    return render_template('chain.dot', nodes=nodes,
                           edges=list(_edges(chain)),
                           initial=chain.initial)
