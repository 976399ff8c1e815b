# -*- coding: utf-8 -*-
"""
    captl.parser
    ~~~~~~~~~~~~

    LALR parser for the CAPTL requirement language and for single PCTL
    queries. A requirement document looks like this::

        // robot task planner
        objective q0 = Pmax [ F G "goal" & "h>3" & "on" ];
        objective q1 = Pmax [ F G "chrg" & "h>3" & "sleep" ];
        context w01 : q0 -> q1 when Pmax < 0.75;
        initial q0;

    :license: BSD, see LICENSE for more details.
"""
from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from captl.exceptions import CaptlError, ParseError
from captl.formula import (TRUE, Always, And, Eventually, EventuallyAlways,
                           Interval, Next, Not, Or, Prop, Query, Until)
from captl.requirement import CaptlRequirement, Context, Objective


GRAMMAR = r"""
requirement: _decl*

_decl: objective | context | initial

objective: "objective" CNAME "=" direction "[" objective_path "]" ";"
context: "context" CNAME ":" CNAME "->" CNAME "when" PMAX bound ";"
initial: "initial" CNAME ";"

query: direction bound? "[" path "]"

?objective_path: "F" stateform          -> eventually
               | "F" "G" stateform      -> eventually_always

?path: objective_path
     | "F" "<=" NUMBER stateform        -> bounded_eventually
     | "G" stateform                    -> always
     | "X" stateform                    -> next
     | stateform "U" stateform          -> until
     | stateform "U" "<=" NUMBER stateform -> bounded_until

direction: PMAX | PMIN

bound: "<" NUMBER                       -> lt
     | "<=" NUMBER                      -> le
     | ">" NUMBER                       -> gt
     | ">=" NUMBER                      -> ge
     | "in" lopen NUMBER "," NUMBER ropen -> within

!lopen: "[" | "("
!ropen: "]" | ")"

?stateform: disjunction
?disjunction: conjunction
            | disjunction "|" conjunction -> or_
?conjunction: negation
            | conjunction "&" negation  -> and_
?negation: atom
         | "!" negation                 -> not_
?atom: ESCAPED_STRING                   -> prop
     | "true"                           -> true
     | "(" disjunction ")"

PMAX: "Pmax"
PMIN: "Pmin"

%import common.CNAME
%import common.ESCAPED_STRING
%import common.NUMBER
%import common.CPP_COMMENT
%import common.WS
%ignore WS
%ignore CPP_COMMENT
"""

_parser = Lark(GRAMMAR, parser='lalr', start=['requirement', 'query'])


def _integer(token):
    if not token.isdigit():
        raise ParseError('step bound must be a natural number, got %s' % token,
                         line=token.line, column=token.column)
    return int(token)


@v_args(inline=True)
class _BuildAst(Transformer):

    def prop(self, token):
        return Prop(token[1:-1])

    def true(self):
        return TRUE

    def not_(self, operand):
        return Not(operand)

    def and_(self, left, right):
        return And(left, right)

    def or_(self, left, right):
        return Or(left, right)

    def eventually(self, operand):
        return Eventually(operand)

    def eventually_always(self, operand):
        return EventuallyAlways(operand)

    def bounded_eventually(self, steps, operand):
        return Eventually(operand, _integer(steps))

    def always(self, operand):
        return Always(operand)

    def next(self, operand):
        return Next(operand)

    def until(self, left, right):
        return Until(left, right)

    def bounded_until(self, left, steps, right):
        return Until(left, right, _integer(steps))

    def direction(self, token):
        return 'max' if token == 'Pmax' else 'min'

    def lt(self, value):
        return Interval.below(float(value), strict=True)

    def le(self, value):
        return Interval.below(float(value), strict=False)

    def gt(self, value):
        return Interval.above(float(value), strict=True)

    def ge(self, value):
        return Interval.above(float(value), strict=False)

    def lopen(self, token):
        return token == '('

    def ropen(self, token):
        return token == ')'

    def within(self, lo_strict, lo, hi, hi_strict):
        return Interval(float(lo), lo_strict, float(hi), hi_strict)

    def query(self, direction, *rest):
        if len(rest) == 2:
            bound, path = rest
        else:
            bound, path = None, rest[0]
        return Query(direction, path, bound)

    def objective(self, name, direction, path):
        return Objective(str(name), direction, path)

    def context(self, name, source, target, _pmax, interval):
        # the formula is filled in from the source objective later
        return Context(str(name), str(source), str(target), None, interval)

    def initial(self, name):
        return str(name)

    def requirement(self, *decls):
        return list(decls)


def _parse(text, start):
    try:
        tree = _parser.parse(text, start=start)
        return _BuildAst().transform(tree)
    except UnexpectedInput as e:
        line = e.line if getattr(e, 'line', -1) not in (-1, None) else None
        column = e.column if line is not None else None
        token = getattr(e, 'token', None)
        if token is not None and token.type in ('$END', '<EOF>'):
            message = 'unexpected end of input'
        elif token is not None:
            message = 'unexpected %r' % str(token)
        else:
            message = 'unexpected character %r' % getattr(e, 'char', '?')
        raise ParseError(message, line=line, column=column)
    except VisitError as e:
        if isinstance(e.orig_exc, CaptlError):
            raise e.orig_exc
        raise


def parse_requirement(text):
    """Parses a requirement document and returns a validated
    :class:`~captl.requirement.CaptlRequirement`.
    """
    objectives, contexts, initials = [], [], []
    for decl in _parse(text, 'requirement'):
        if isinstance(decl, Objective):
            objectives.append(decl)
        elif isinstance(decl, Context):
            contexts.append(decl)
        else:
            initials.append(decl)
    if len(initials) > 1:
        raise ParseError('initial objective declared %d times' % len(initials))

    paths = dict((o.id, o.path) for o in objectives)
    contexts = [Context(c.id, c.source, c.target, paths.get(c.source),
                        c.interval) for c in contexts]
    return CaptlRequirement(objectives, contexts,
                            initials[0] if initials else None)


def parse_query(text):
    return _parse(text, 'query')
