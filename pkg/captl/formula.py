# -*- coding: utf-8 -*-
"""
    captl.formula
    ~~~~~~~~~~~~~

    Abstract syntax for PCTL state formulas, path formulas, quantitative
    queries and the probability intervals that guard contexts.

    ``str()`` of every node prints the concrete syntax accepted by
    :mod:`captl.parser`, parenthesized just enough to parse back to the
    same tree.

    :license: BSD, see LICENSE for more details.
"""
from dataclasses import dataclass
from typing import Optional


# precedence levels used when printing: | < & < ! < atoms
_OR, _AND, _NOT, _ATOM = 1, 2, 3, 4


def _wrap(formula, level):
    text = str(formula)
    if formula.level < level:
        return '(%s)' % text
    return text


def format_number(value):
    value = float(value)
    if value.is_integer():
        return '%d' % value
    return repr(value)


# ----------------------------------------------------------------------
# State formulas
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class TrueFormula(object):
    level = _ATOM

    def __str__(self):
        return 'true'


TRUE = TrueFormula()


@dataclass(frozen=True)
class Prop(object):
    name: str
    level = _ATOM

    def __str__(self):
        return '"%s"' % self.name


@dataclass(frozen=True)
class Not(object):
    operand: object
    level = _NOT

    def __str__(self):
        return '!' + _wrap(self.operand, _NOT)


@dataclass(frozen=True)
class And(object):
    left: object
    right: object
    level = _AND

    def __str__(self):
        return '%s & %s' % (_wrap(self.left, _AND), _wrap(self.right, _NOT))


@dataclass(frozen=True)
class Or(object):
    left: object
    right: object
    level = _OR

    def __str__(self):
        return '%s | %s' % (_wrap(self.left, _OR), _wrap(self.right, _AND))


def propositions(formula):
    """Yields every proposition name used in a state formula."""
    if isinstance(formula, Prop):
        yield formula.name
    elif isinstance(formula, Not):
        for name in propositions(formula.operand):
            yield name
    elif isinstance(formula, (And, Or)):
        for name in propositions(formula.left):
            yield name
        for name in propositions(formula.right):
            yield name


# ----------------------------------------------------------------------
# Path formulas
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Next(object):
    operand: object

    def __str__(self):
        return 'X %s' % self.operand


@dataclass(frozen=True)
class Until(object):
    left: object
    right: object
    bound: Optional[int] = None

    def __str__(self):
        if self.bound is None:
            return '%s U %s' % (self.left, self.right)
        return '%s U<=%d %s' % (self.left, self.bound, self.right)


@dataclass(frozen=True)
class Eventually(object):
    operand: object
    bound: Optional[int] = None

    def __str__(self):
        if self.bound is None:
            return 'F %s' % self.operand
        return 'F<=%d %s' % (self.bound, self.operand)


@dataclass(frozen=True)
class EventuallyAlways(object):
    operand: object

    def __str__(self):
        return 'F G %s' % self.operand


@dataclass(frozen=True)
class Always(object):
    operand: object

    def __str__(self):
        return 'G %s' % self.operand


# ----------------------------------------------------------------------
# Intervals and queries
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Interval(object):
    """A probability interval with open or closed endpoints."""
    lo: float
    lo_strict: bool
    hi: float
    hi_strict: bool

    @classmethod
    def below(cls, value, strict=True):
        return cls(0.0, False, float(value), strict)

    @classmethod
    def above(cls, value, strict=True):
        return cls(float(value), strict, 1.0, False)

    def contains(self, value):
        if value < self.lo or (self.lo_strict and value == self.lo):
            return False
        if value > self.hi or (self.hi_strict and value == self.hi):
            return False
        return True

    __contains__ = contains

    def is_empty(self):
        return self.lo > self.hi or (
            self.lo == self.hi and (self.lo_strict or self.hi_strict))

    def intersection(self, other):
        if self.lo == other.lo:
            lo, lo_strict = self.lo, self.lo_strict or other.lo_strict
        elif self.lo > other.lo:
            lo, lo_strict = self.lo, self.lo_strict
        else:
            lo, lo_strict = other.lo, other.lo_strict
        if self.hi == other.hi:
            hi, hi_strict = self.hi, self.hi_strict or other.hi_strict
        elif self.hi < other.hi:
            hi, hi_strict = self.hi, self.hi_strict
        else:
            hi, hi_strict = other.hi, other.hi_strict
        return Interval(lo, lo_strict, hi, hi_strict)

    def __str__(self):
        if self.lo == 0 and not self.lo_strict:
            return '%s %s' % ('<' if self.hi_strict else '<=',
                              format_number(self.hi))
        return 'in %s%s, %s%s' % ('(' if self.lo_strict else '[',
                                  format_number(self.lo),
                                  format_number(self.hi),
                                  ')' if self.hi_strict else ']')


@dataclass(frozen=True)
class Query(object):
    """``Pmax``/``Pmin`` over a path formula, optionally bounded."""
    direction: str
    path: object
    bound: Optional[Interval] = None

    def __str__(self):
        op = 'Pmax' if self.direction == 'max' else 'Pmin'
        if self.bound is not None:
            bound = str(self.bound)
            if bound.startswith('<'):
                op += bound.replace(' ', '')
            else:
                op += ' ' + bound
        return '%s [ %s ]' % (op, self.path)
