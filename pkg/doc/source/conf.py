# -*- coding: utf-8 -*-
#
# metalidar documentation build configuration file.
#
# Build with:
#
#   sphinx-build -b html doc/source doc/build/html

import os
import sys

# The package is imported from the checkout, not from site-packages.
sys.path.insert(0, os.path.abspath('../..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosummary',
]

templates_path = ['.templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'metalidar'
copyright = '2026, the metalidar developers'
author = 'the metalidar developers'

version = '0.1'
release = '0.1.0'

language = 'en'
exclude_patterns = []
add_function_parentheses = True
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

import sphinx_rtd_theme  # noqa
html_theme = "sphinx_rtd_theme"
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
htmlhelp_basename = 'metalidardoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
    'pointsize': '12pt',
}

latex_documents = [
    (master_doc, 'metalidar.tex', 'metalidar Documentation',
     author, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'metalidar', 'metalidar Documentation',
     [author], 1)
]
