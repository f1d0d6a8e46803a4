# Sphinx configuration for kappa-fermion.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))

from kfermion import __version__  # noqa: E402

project = "kappa-fermion"
copyright = "2026, kappa-fermion contributors"
author = "kappa-fermion contributors"
release = __version__
version = ".".join(__version__.split(".")[:2])

# -- Extensions --------------------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.mathjax",
    "sphinx_inline_tabs",
]

autosummary_generate = True
autoclass_content = "both"
autodoc_member_order = "bysource"
autodoc_default_options = {"members": True, "show-inheritance": True}

exclude_patterns = []

# -- HTML output -------------------------------------------------------------

# Read the Docs injects its own theme.
if os.environ.get("READTHEDOCS") != "True":
    import sphinx_rtd_theme

    html_theme = "sphinx_rtd_theme"

html_title = "kappa-fermion {}".format(release)
html_static_path = ["_static"]
