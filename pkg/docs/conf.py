# -*- coding: utf-8 -*-
#
# CAPTL documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# The package is documented with autodoc straight from the source tree.
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'CAPTL'
copyright = u'2026, the CAPTL developers'

# The short X.Y version.
version = '0.1'
# The full version, including alpha/beta/rc tags.
release = '0.1.0'

exclude_patterns = ['_build']

add_function_parentheses = False

autodoc_member_order = 'bysource'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'alabaster'

html_static_path = []

htmlhelp_basename = 'CAPTLdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'CAPTL.tex', u'CAPTL Documentation',
   u'the CAPTL developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'captl', u'CAPTL Documentation',
     [u'the CAPTL developers'], 1)
]
