# -*- coding: utf-8 -*-
"""
    captl.requirement
    ~~~~~~~~~~~~~~~~~

    CAPTL requirements: prioritized objectives connected by contexts.
    An objective is a single ``Pmax``/``Pmin`` query over ``F`` or
    ``F G``. A context attached to the edge ``q -> q'`` fires when the
    optimal value of `q`'s own path formula lies in the context's
    interval.

    :license: BSD, see LICENSE for more details.
"""
from dataclasses import dataclass

import networkx as nx

from captl.exceptions import RequirementError
from captl.formula import Eventually, EventuallyAlways, Interval, Query


@dataclass(frozen=True)
class Objective(object):
    id: str
    direction: str
    path: object

    @property
    def b_set(self):
        """The state formula the path formula ranges over (the set B of
        a persistence objective)."""
        return self.path.operand

    @property
    def query(self):
        return Query(self.direction, self.path)

    def __str__(self):
        return 'objective %s = %s;' % (self.id, self.query)


@dataclass(frozen=True)
class Context(object):
    id: str
    source: str
    target: str
    formula: object
    interval: Interval

    def __str__(self):
        return 'context %s : %s -> %s when Pmax %s;' % (
            self.id, self.source, self.target, self.interval)


class CaptlRequirement(object):
    """A validated requirement: objectives in declaration order,
    contexts in declaration order and the initial objective.

    Construction fails with :class:`RequirementError` listing every
    problem found when ids clash, references dangle, intervals are
    malformed or the objective graph has a cycle.
    """

    def __init__(self, objectives, contexts=(), initial=None):
        self.objectives = tuple(objectives)
        self.contexts = tuple(contexts)
        self._objectives = dict((o.id, o) for o in self.objectives)
        if initial is None and self.objectives:
            initial = self.objectives[0].id
        self.initial = initial

        problems = self._problems()
        if problems:
            raise RequirementError('; '.join(problems), problems)

    def _problems(self):
        problems = []
        if not self.objectives:
            problems.append('requirement declares no objective')
        if len(self._objectives) != len(self.objectives):
            problems.append('duplicate objective id')
        for objective in self.objectives:
            if objective.direction not in ('max', 'min'):
                problems.append('objective %s: unknown direction %r'
                                % (objective.id, objective.direction))
            if not isinstance(objective.path, (Eventually, EventuallyAlways)):
                problems.append('objective %s: path formula must be F or F G'
                                % objective.id)
        if self.initial is not None and self.initial not in self._objectives:
            problems.append('unknown initial objective %s' % self.initial)

        seen = set()
        for context in self.contexts:
            if context.id in seen or context.id in self._objectives:
                problems.append('duplicate id %s' % context.id)
            seen.add(context.id)
            for ref in (context.source, context.target):
                if ref not in self._objectives:
                    problems.append('context %s: unknown objective reference %s'
                                    % (context.id, ref))
            if context.source == context.target:
                problems.append('context %s: source and target are both %s'
                                % (context.id, context.source))
            interval = context.interval
            if not 0.0 <= interval.lo <= interval.hi <= 1.0:
                problems.append('context %s: malformed interval %s'
                                % (context.id, interval))
            elif interval.is_empty():
                problems.append('context %s: empty interval %s'
                                % (context.id, interval))
        if not problems and not nx.is_directed_acyclic_graph(self.graph()):
            problems.append('objective graph is cyclic')
        return problems

    def graph(self):
        graph = nx.DiGraph()
        graph.add_nodes_from(o.id for o in self.objectives)
        graph.add_edges_from((c.source, c.target) for c in self.contexts)
        return graph

    def objective(self, qid):
        try:
            return self._objectives[qid]
        except KeyError:
            raise RequirementError('unknown objective %s' % qid)

    def context(self, wid):
        for context in self.contexts:
            if context.id == wid:
                return context
        raise RequirementError('unknown context %s' % wid)

    @property
    def edges(self):
        """The switching relation as ``(source, context_id, target)``
        triples in declaration order."""
        return tuple((c.source, c.id, c.target) for c in self.contexts)

    def contexts_of(self, qid):
        self.objective(qid)
        return [c for c in self.contexts if c.source == qid]

    def topological_order(self):
        position = dict((o.id, i) for i, o in enumerate(self.objectives))
        return list(nx.lexicographical_topological_sort(
            self.graph(), key=position.__getitem__))

    def __eq__(self, other):
        if not isinstance(other, CaptlRequirement):
            return NotImplemented
        return (self.objectives == other.objectives and
                self.contexts == other.contexts and
                self.initial == other.initial)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return '<CaptlRequirement objectives=%s initial=%s>' % (
            ','.join(o.id for o in self.objectives), self.initial)


def validate_persistence(req):
    """Returns the list of reasons `req` is not a persistence
    requirement; an empty list means it is one.
    """
    violations = []
    for objective in req.objectives:
        if objective.direction != 'max':
            violations.append('objective %s: Pmin is not allowed, '
                              'persistence objectives are Pmax' % objective.id)
        if not isinstance(objective.path, EventuallyAlways):
            violations.append('objective %s: path formula must be F G'
                              % objective.id)

    for objective in req.objectives:
        contexts = req.contexts_of(objective.id)
        for context in contexts:
            if context.formula != objective.path:
                violations.append(
                    'context %s: bounds %s instead of objective %s\'s own '
                    'formula' % (context.id, context.formula, objective.id))
        overlapping = False
        for i, first in enumerate(contexts):
            for second in contexts[i + 1:]:
                if not first.interval.intersection(second.interval).is_empty():
                    overlapping = True
                    violations.append(
                        'objective %s: intervals of %s and %s overlap'
                        % (objective.id, first.id, second.id))
        if contexts and not overlapping and not _is_initial_segment(
                [c.interval for c in contexts]):
            violations.append(
                'objective %s: union of context intervals is not of the '
                'form [0,c)' % objective.id)
    return violations


def _is_initial_segment(intervals):
    """True if pairwise disjoint `intervals` cover exactly [0,c) for
    some 0 < c <= 1."""
    ordered = sorted(intervals, key=lambda i: (i.lo, i.lo_strict))
    first, last = ordered[0], ordered[-1]
    if first.lo != 0 or first.lo_strict:
        return False
    for previous, current in zip(ordered, ordered[1:]):
        if previous.hi != current.lo:
            return False
        if previous.hi_strict and current.lo_strict:
            return False
    return last.hi_strict and 0 < last.hi <= 1


def print_requirement(req):
    lines = [str(o) for o in req.objectives]
    lines.extend(str(c) for c in req.contexts)
    lines.append('initial %s;' % req.initial)
    return '\n'.join(lines) + '\n'
