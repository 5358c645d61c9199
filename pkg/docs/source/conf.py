# -*- coding: utf-8 -*-
"""Configuration file for RTD"""
# Configuration file for the Sphinx documentation builder.
#
# For a full list of options see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Project information -----------------------------------------------------

project = u'Lingrow'

VERSION = "0.1.0"

# The short X.Y version
version = VERSION
# The full version, including alpha/beta/rc tags
release = VERSION

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = None
exclude_patterns = []
pygments_style = None

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
htmlhelp_basename = 'Lingrowdoc'

# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'lingrow', u'Lingrow Documentation', [], 1)
]
