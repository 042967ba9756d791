# -*- coding: utf-8 -*-
#
# tilekt documentation build configuration file
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# the package is imported from the source tree
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

# General information about the project.
project = u'tilekt'
copyright = u'Copyright (C) 2026  The tilekt authors'

# The short X.Y version.
version = '1.0'
# The full version, including alpha/beta/rc tags.
release = '1.0'

exclude_patterns = ['_build']
pygments_style = 'sphinx'


# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'tilektdoc'


# -- Options for LaTeX output --------------------------------------------------

latex_elements = {
}

latex_documents = [
  ('index', 'tilekt.tex', u'tilekt Documentation',
   u'The tilekt authors', 'manual'),
]


# -- Options for manual page output --------------------------------------------

# One entry per manual page. List of tuples
# (source start file, name, description, authors, manual section).
man_pages = [
    # docs
    ('terminology', 'tilekt-terminology', u'tilekt Documentation',
     [u'The tilekt authors'], 7),

    # command line
    ('cli', 'tilekt', u'tilekt Documentation',
     [u'The tilekt authors'], 1),

    # file formats
    ('substitution_1d-1.0', 'tilekt-substitution_1d', u'tilekt Documentation',
     [u'The tilekt authors'], 5),
    ('block_2d-1.0', 'tilekt-block_2d', u'tilekt Documentation',
     [u'The tilekt authors'], 5),
    ('complex-1.0', 'tilekt-complex', u'tilekt Documentation',
     [u'The tilekt authors'], 5),
    ('direct_limit-1.0', 'tilekt-direct_limit', u'tilekt Documentation',
     [u'The tilekt authors'], 5),
    ('report-1.0', 'tilekt-report', u'tilekt Documentation',
     [u'The tilekt authors'], 5),
    ('corpus-1.0', 'tilekt-corpus', u'tilekt Documentation',
     [u'The tilekt authors'], 5),
]


# -- Options for Texinfo output ------------------------------------------------

texinfo_documents = [
  ('index', 'tilekt', u'tilekt Documentation',
   u'The tilekt authors', 'tilekt', 'K-theory of substitution tilings.',
   'Miscellaneous'),
]

# Display methods before attributes
autodoc_member_order = 'bysource'
