# Sphinx configuration of the mcpcast api reference

import os
import sys

# document the checkout, not an installed copy
sys.path.insert(0, os.path.abspath('../..'))
import mcpcast

project = 'mcpcast'
copyright = '2026, mcpcast developers'
author = 'mcpcast developers'
release = mcpcast.__version__
version = '.'.join(release.split('.')[:2])

extensions = [
    'sphinx.ext.autodoc',
    'sphinxcontrib.napoleon',
    'recommonmark',
    'sphinx_markdown_tables',
]

# docstrings follow the google layout with Args / Returns / Raises sections
napoleon_google_docstring = True
napoleon_numpy_docstring = False
autodoc_member_order = 'bysource'
autodoc_default_options = {
    'members': True,
    'show-inheritance': True,
}

source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown',
}
templates_path = ['_templates']
exclude_patterns = []

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
