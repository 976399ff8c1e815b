# -*- coding: utf-8 -*-
"""
    captl.casestudies.meda
    ~~~~~~~~~~~~~~~~~~~~~~

    The scheduler of a MEDA biochip segment mixing two droplets.

    The segment is `width` x `height` cells; a droplet occupies a 3x3
    square whose centre, the anchor, ranges over the inner cells
    ``1..width-2`` x ``1..height-2``. Anchors are grouped into 3x3
    blocks, and every block counts the actuation errors that happened
    in it, up to `max_errors`.

    Scheduler states:

    ==  ====================================================
    0   nothing dispensed: ``dispense`` or ``abort``
    1   droplets on chip: ``mvA[d]``, ``flush`` or ``abort``
    2   ``mvB[d]``
    3   ``update``
    4   ``mix`` (inBlock), ``repeat`` (droplets on chip) or
        ``exit`` (abAbsent)
    5   mixed
    6   salvaged
    7   aborted
    ==  ====================================================

    A move in direction N, S, E or W fails with ``p1(e)``, where ``e``
    is the error count of the droplet's block, and a failure registers
    an error there. A failure in a block whose count is already at
    `max_errors` leaves the droplet stuck for good. ``H`` holds the
    droplet. ``flush`` sends every droplet that can move out of the
    segment, each failing with ``p2(e)``.

    :license: BSD, see LICENSE for more details.
"""
from dataclasses import dataclass, fields
from typing import Optional, Tuple

from captl.casestudies.core import build_model
from captl.forms import MedaParamsForm, validate_form
from captl.mdp import serialize_model
from captl.parser import parse_requirement
from captl.util import render_template


DIRECTIONS = (('N', 0, 1), ('S', 0, -1), ('E', 1, 0), ('W', -1, 0),
              ('H', 0, 0))

ACTIONS = (('dispense',) +
           tuple('mvA[%s]' % d for d, _, _ in DIRECTIONS) +
           tuple('mvB[%s]' % d for d, _, _ in DIRECTIONS) +
           ('flush', 'update', 'mix', 'repeat', 'exit', 'abort', 'idle'))

PROPS = ('mixed', 'salvaged', 'aborted', 'inBlock', 'abAbsent')

MIXED, SALVAGED, ABORTED = 5, 6, 7

BLOCK = 3


@dataclass(frozen=True)
class MedaParams(object):
    width: int = 8
    height: int = 5
    p1_coeff: float = 0.05
    p2_coeff: float = 0.08
    max_errors: int = 1
    dispenser_a: Optional[Tuple[int, int]] = None
    dispenser_b: Optional[Tuple[int, int]] = None

    @classmethod
    def from_size(cls, size, **kwargs):
        width, height = size
        return cls(width=width, height=height, **kwargs)

    def resolved(self):
        """Validates the parameters; dispenser A defaults to the bottom
        left anchor, dispenser B to the middle of the top anchor row."""
        values = dict((f.name, getattr(self, f.name)) for f in fields(self))
        values['size'] = (values.pop('width'), values.pop('height'))
        data = validate_form(MedaParamsForm, values)
        width, height = data.pop('size')
        if data['dispenser_a'] is None:
            data['dispenser_a'] = (1, 1)
        if data['dispenser_b'] is None:
            data['dispenser_b'] = (width // 2, height - 2)
        return MedaParams(width=width, height=height, **data)

    def p1(self, errors):
        return min(self.p1_coeff * (1 + errors), 1.0)

    def p2(self, errors):
        return min(self.p2_coeff * (1 + errors), 1.0)


class _Segment(object):

    def __init__(self, params):
        self.params = params
        self.max_x = params.width - 2
        self.max_y = params.height - 2
        self.blocks_y = (self.max_y - 1) // BLOCK + 1
        blocks_x = (self.max_x - 1) // BLOCK + 1
        self.no_errors = (0,) * (blocks_x * self.blocks_y)

    def block(self, droplet):
        x, y, _ = droplet
        return ((x - 1) // BLOCK) * self.blocks_y + (y - 1) // BLOCK

    def inside(self, x, y):
        return 1 <= x <= self.max_x and 1 <= y <= self.max_y

    def in_block(self, a, b):
        return (a is not None and b is not None and
                self.block(a) == self.block(b))

    def dispensed(self, anchor):
        """Where a droplet dispensed at `anchor` lands: off by -1, 0 or
        +1 per axis, uniformly, clipped to the segment."""
        x0, y0 = anchor
        landing = {}
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                x = min(max(x0 + dx, 1), self.max_x)
                y = min(max(y0 + dy, 1), self.max_y)
                landing[x, y, False] = landing.get((x, y, False), 0) + 1
        return [(droplet, count / 9.0)
                for droplet, count in sorted(landing.items())]

    def failed(self, droplet, errors):
        """A failed actuation: one more error in the droplet's block, or
        a stuck droplet when the block is out of slack."""
        block = self.block(droplet)
        if errors[block] < self.params.max_errors:
            errors = errors[:block] + (errors[block] + 1,) + errors[block + 1:]
            return droplet, errors
        x, y, _ = droplet
        return (x, y, True), errors

    def movable(self, droplet):
        return droplet is not None and not droplet[2]

    def move(self, droplet, dx, dy, errors):
        if (dx, dy) == (0, 0):
            return [((droplet, errors), 1.0)]
        x, y, _ = droplet
        p = self.params.p1(errors[self.block(droplet)])
        return [(((x + dx, y + dy, False), errors), 1.0 - p),
                (self.failed(droplet, errors), p)]

    def flushed(self, droplet, errors, before):
        """Outcomes of flushing one droplet; `before` holds the error
        counts the failure probability is read from."""
        if not self.movable(droplet):
            return [((droplet, errors), 1.0)]
        p = self.params.p2(before[self.block(droplet)])
        return [((None, errors), 1.0 - p),
                (self.failed(droplet, errors), p)]

    def successors(self, state):
        sched, a, b, errors = state
        if sched >= MIXED:
            return [('idle', [(state, 1.0)])]
        aborted = ((ABORTED, None, None, None), 1.0)

        if sched == 0:
            landings = [((1, da, db, errors), pa * pb)
                        for da, pa in self.dispensed(self.params.dispenser_a)
                        for db, pb in self.dispensed(self.params.dispenser_b)]
            return [('dispense', landings), ('abort', [aborted])]

        if sched in (1, 2):
            droplet = a if sched == 1 else b
            name = 'mvA[%s]' if sched == 1 else 'mvB[%s]'
            result = []
            for d, dx, dy in DIRECTIONS:
                if (dx, dy) != (0, 0) and not (
                        self.movable(droplet) and
                        self.inside(droplet[0] + dx, droplet[1] + dy)):
                    continue
                branches = []
                for (moved, errs), p in self.move(droplet, dx, dy, errors):
                    pair = (moved, b) if sched == 1 else (a, moved)
                    branches.append(((sched + 1,) + pair + (errs,), p))
                result.append((name % d, branches))
            if sched == 1:
                branches = []
                for (na, errs_a), pa in self.flushed(a, errors, errors):
                    for (nb, errs), pb in self.flushed(b, errs_a, errors):
                        branches.append(((3, na, nb, errs), pa * pb))
                result.append(('flush', branches))
                result.append(('abort', [aborted]))
            return result

        if sched == 3:
            return [('update', [((4, a, b, errors), 1.0)])]

        result = []
        if self.in_block(a, b):
            result.append(('mix', [((MIXED, None, None, None), 1.0)]))
        if a is None and b is None:
            result.append(('exit', [((SALVAGED, None, None, None), 1.0)]))
        else:
            result.append(('repeat', [((1, a, b, errors), 1.0)]))
        return result

    def label(self, state):
        sched, a, b, _ = state
        props = set()
        if sched == MIXED:
            props.add('mixed')
        elif sched == SALVAGED:
            props.add('salvaged')
        elif sched == ABORTED:
            props.add('aborted')
        elif sched > 0:
            if self.in_block(a, b):
                props.add('inBlock')
            if a is None and b is None:
                props.add('abAbsent')
        return props


def _droplet_name(droplet):
    if droplet is None:
        return '-'
    x, y, stuck = droplet
    return '%d.%d%s' % (x, y, '!' if stuck else '')


def _name(state):
    sched, a, b, errors = state
    if sched >= MIXED:
        return ('mixed', 'salvaged', 'aborted')[sched - MIXED]
    return 's%d_A%s_B%s_e%s' % (sched, _droplet_name(a), _droplet_name(b),
                                ''.join(str(e) for e in errors))


def build_meda(params=None):
    """Returns the scheduler model and its requirement."""
    params = (params or MedaParams()).resolved()
    segment = _Segment(params)
    initial = (0, None, None, segment.no_errors)
    mdp = build_model(initial, segment.successors, ACTIONS, PROPS,
                      segment.label, _name)
    return mdp, parse_requirement(meda_requirement(params))


def meda_requirement(params):
    return render_template('meda.captl', params=params)


def gen_meda(params=None):
    """Returns the model document and the requirement document."""
    params = (params or MedaParams()).resolved()
    mdp, _ = build_meda(params)
    return serialize_model(mdp), meda_requirement(params)
