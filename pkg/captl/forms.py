# -*- coding: utf-8 -*-
"""
    captl.forms
    ~~~~~~~~~~~

    WTForms forms validating case-study parameters, whether they come
    from Python code or from the command line.

    :license: BSD, see LICENSE for more details.
"""
from wtforms import Form, validators
from wtforms import fields as wtf_fields

from captl.exceptions import ValidationError


class PairField(wtf_fields.Field):
    """A text field holding two integers joined by `separator`, such as
    ``8x5`` or ``2,3``."""

    def __init__(self, label=None, validators=None, separator='x', **kwargs):
        super(PairField, self).__init__(label, validators, **kwargs)
        self.separator = separator

    def _value(self):
        if self.raw_data:
            return u' '.join(self.raw_data)
        if self.data is None:
            return u''
        return u'%d%s%d' % (self.data[0], self.separator, self.data[1])

    def process_data(self, value):
        self.data = tuple(value) if value is not None else None

    def process_formdata(self, valuelist):
        if valuelist and valuelist[0] not in (None, u''):
            text = u''.join(valuelist).strip()
            try:
                first, second = text.split(self.separator)
                self.data = (int(first), int(second))
            except ValueError:
                self.data = None
                raise ValueError(self.gettext(
                    u'expected two integers separated by %r'
                    % self.separator))


class GridSizeField(PairField):
    """A ``WxH`` size."""

    def pre_validate(self, form):
        if self.data is not None and min(self.data) < 1:
            raise validators.ValidationError(u'sizes must be positive')


class CoordinateField(PairField):
    """An ``x,y`` position; empty means the case study's default."""

    def __init__(self, label=None, validators=None, **kwargs):
        super(CoordinateField, self).__init__(label, validators,
                                              separator=',', **kwargs)


def _within_grid(form, field, low=1):
    if field.data is None or form.size.data is None:
        return
    width, height = form.size.data
    x, y = field.data
    if not (low <= x <= width and low <= y <= height):
        raise validators.ValidationError(
            u'%d,%d lies outside the %dx%d grid' % (x, y, width, height))


class RobotParamsForm(Form):
    size = GridSizeField(u'Grid size', [validators.InputRequired()])
    battery = wtf_fields.IntegerField(
        u'Initial battery', [validators.InputRequired(),
                             validators.NumberRange(min=0, max=10)])
    obstacle_prob = wtf_fields.FloatField(
        u'Obstacle probability', [validators.InputRequired(),
                                  validators.NumberRange(min=0, max=1)])
    move_cost = wtf_fields.IntegerField(
        u'Move cost', [validators.InputRequired(),
                       validators.NumberRange(min=0)])
    obstacle_cost = wtf_fields.IntegerField(
        u'Extra obstacle cost', [validators.InputRequired(),
                                 validators.NumberRange(min=0)])
    start = CoordinateField(u'Start', [validators.Optional()])
    goal = CoordinateField(u'Goal', [validators.Optional()])
    charger = CoordinateField(u'Charger', [validators.Optional()])
    safe = CoordinateField(u'Safe zone', [validators.Optional()])

    validate_start = validate_goal = _within_grid
    validate_charger = validate_safe = _within_grid


class MedaParamsForm(Form):
    size = GridSizeField(u'Segment size', [validators.InputRequired()])
    p1_coeff = wtf_fields.FloatField(
        u'Move error growth', [validators.InputRequired(),
                               validators.NumberRange(min=0, max=1)])
    p2_coeff = wtf_fields.FloatField(
        u'Flush error growth', [validators.InputRequired(),
                                validators.NumberRange(min=0, max=1)])
    max_errors = wtf_fields.IntegerField(
        u'Errors per block', [validators.InputRequired(),
                              validators.NumberRange(min=0, max=5)])
    dispenser_a = CoordinateField(u'Dispenser A', [validators.Optional()])
    dispenser_b = CoordinateField(u'Dispenser B', [validators.Optional()])

    def validate_size(self, field):
        if field.data is not None and min(field.data) < 3:
            raise validators.ValidationError(
                u'a segment needs at least 3x3 cells')

    def _anchor(self, field):
        if field.data is None or self.size.data is None:
            return
        width, height = self.size.data
        x, y = field.data
        if not (1 <= x <= width - 2 and 1 <= y <= height - 2):
            raise validators.ValidationError(
                u'dispenser %d,%d is not a droplet position of a %dx%d '
                u'segment' % (x, y, width, height))

    validate_dispenser_a = validate_dispenser_b = _anchor


class GenOptionsForm(Form):
    case = wtf_fields.SelectField(
        u'Case study', choices=[('robot', u'Robot'), ('meda', u'MEDA')])
    size = GridSizeField(u'Size', [validators.Optional()])


class FormData(dict):
    """A dict of single values that WTForms accepts as form data. Pairs
    are joined with the separator their field expects."""

    def __init__(self, values, separators=None):
        super(FormData, self).__init__(values)
        self.separators = separators or {}

    def getlist(self, key):
        value = self.get(key)
        if value is None:
            return []
        if isinstance(value, (tuple, list)):
            separator = self.separators.get(key, ',')
            return [separator.join(str(v) for v in value)]
        return [str(value)]


def _separators(form_class):
    separators = {}
    for name in dir(form_class):
        unbound = getattr(form_class, name)
        field_class = getattr(unbound, 'field_class', None)
        if field_class is not None and issubclass(field_class, PairField):
            separator = unbound.kwargs.get(
                'separator', ',' if issubclass(field_class, CoordinateField)
                else 'x')
            separators[name] = separator
    return separators


def validate_form(form_class, values):
    """Validates `values` with `form_class` and returns the form's data.
    Raises :class:`~captl.exceptions.ValidationError` listing every
    problem."""
    formdata = FormData(values, _separators(form_class))
    form = form_class(formdata)
    if not form.validate():
        raise ValidationError('; '.join(
            '%s: %s' % (name, ', '.join(str(e) for e in errors))
            for name, errors in sorted(form.errors.items())))
    return form.data
