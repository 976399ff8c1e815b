import inspect
import os

import jinja2


_environment = None


def get_template_dir():
    """Returns the directory holding the templates shipped with this
    package.
    """
    return os.path.join(
        os.path.dirname(inspect.getfile(inspect.currentframe())), 'templates')


def _get_environment():
    global _environment
    if _environment is None:
        _environment = jinja2.Environment(
            loader=jinja2.FileSystemLoader(get_template_dir()),
            undefined=jinja2.StrictUndefined,
            keep_trailing_newline=True,
            trim_blocks=True,
            lstrip_blocks=True)
        _environment.filters['dot_escape'] = dot_escape
    return _environment


def render_template(template_name, **context):
    """Renders one of the package templates with `context`."""
    return _get_environment().get_template(template_name).render(**context)


def dot_escape(value):
    """Quotes `value` as a DOT identifier or label."""
    return '"%s"' % str(value).replace('\\', '\\\\').replace('"', '\\"')
