# -*- coding: utf-8 -*-
"""
    captl.casestudies.robot
    ~~~~~~~~~~~~~~~~~~~~~~~

    A battery-powered robot on a grid of rooms.

    A state is ``(g, h, x, y)``: the status ``g`` (0 on, 1 asleep,
    2 in error), the battery level ``h`` and the cell ``x, y`` counted
    from 1. While on, the robot moves N, S, E or W. A move reaches the
    neighbouring cell at `move_cost`, but with `obstacle_prob` it is
    blocked, stays put and pays `move_cost + obstacle_cost`. Batteries
    never drop below 0 and a move needs at least `move_cost`. Moves in
    the goal cell cost nothing and keep the robot where it is. ``sleep``
    and ``error`` change the status for good.

    :license: BSD, see LICENSE for more details.
"""
from dataclasses import dataclass, fields
from typing import Optional, Tuple

from captl.casestudies.core import build_model
from captl.forms import RobotParamsForm, validate_form
from captl.mdp import serialize_model
from captl.parser import parse_requirement
from captl.util import render_template


ON, SLEEP, ERROR = 0, 1, 2

ACTIONS = ('N', 'S', 'E', 'W', 'sleep', 'error')

PROPS = ('goal', 'chrg', 'safe', 'on', 'sleep', 'error', 'h>3')

MOVES = (('N', 0, 1), ('S', 0, -1), ('E', 1, 0), ('W', -1, 0))


@dataclass(frozen=True)
class RobotParams(object):
    width: int = 3
    height: int = 3
    battery: int = 10
    obstacle_prob: float = 0.1
    move_cost: int = 1
    obstacle_cost: int = 1
    start: Optional[Tuple[int, int]] = None
    goal: Optional[Tuple[int, int]] = None
    charger: Optional[Tuple[int, int]] = None
    safe: Optional[Tuple[int, int]] = None

    @classmethod
    def from_size(cls, size, **kwargs):
        width, height = size
        return cls(width=width, height=height, **kwargs)

    def resolved(self):
        """Validates the parameters and fills in the default cells: start
        bottom left, goal top right, charger top left, safe zone bottom
        right."""
        values = dict((f.name, getattr(self, f.name)) for f in fields(self))
        values['size'] = (values.pop('width'), values.pop('height'))
        data = validate_form(RobotParamsForm, values)
        width, height = data['size']
        defaults = {'start': (1, 1), 'goal': (width, height),
                    'charger': (1, height), 'safe': (width, 1)}
        for key, default in defaults.items():
            if data[key] is None:
                data[key] = default
        data['width'], data['height'] = data.pop('size')
        return RobotParams(**data)


def _successors(params):
    width, height = params.width, params.height
    p_obs = params.obstacle_prob

    def successors(state):
        g, h, x, y = state
        if g != ON:
            action = 'sleep' if g == SLEEP else 'error'
            return [(action, [(state, 1.0)])]
        result = []
        for action, dx, dy in MOVES:
            if (x, y) == params.goal:
                result.append((action, [(state, 1.0)]))
                continue
            nx, ny = x + dx, y + dy
            if not (1 <= nx <= width and 1 <= ny <= height):
                continue
            if h < params.move_cost:
                continue
            moved = (ON, h - params.move_cost, nx, ny)
            blocked = (ON, max(h - params.move_cost - params.obstacle_cost, 0),
                       x, y)
            result.append((action, [(moved, 1.0 - p_obs), (blocked, p_obs)]))
        result.append(('sleep', [((SLEEP, h, x, y), 1.0)]))
        result.append(('error', [((ERROR, h, x, y), 1.0)]))
        return result
    return successors


def _labeller(params):
    def label(state):
        g, h, x, y = state
        props = set([('on', 'sleep', 'error')[g]])
        if (x, y) == params.goal:
            props.add('goal')
        if (x, y) == params.charger:
            props.add('chrg')
        if (x, y) == params.safe:
            props.add('safe')
        if h > 3:
            props.add('h>3')
        return props
    return label


def _name(state):
    return 'g%d_h%d_x%d_y%d' % state


def build_robot(params=None):
    """Returns the robot model and its requirement."""
    params = (params or RobotParams()).resolved()
    initial = (ON, params.battery) + tuple(params.start)
    mdp = build_model(initial, _successors(params), ACTIONS, PROPS,
                      _labeller(params), _name)
    return mdp, parse_requirement(robot_requirement(params))


def robot_requirement(params):
    return render_template('robot.captl', params=params)


def gen_robot(params=None):
    """Returns the model document and the requirement document."""
    params = (params or RobotParams()).resolved()
    mdp, _ = build_robot(params)
    return serialize_model(mdp), robot_requirement(params)
