# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

sys.path.insert(0, os.path.abspath("../mcvdim"))


# -- Project information -----------------------------------------------------

project = "mcvdim"
copyright = "2026, the mcvdim developers"
author = "the mcvdim developers"


# -- General configuration ---------------------------------------------------

# Add any Sphinx extension module names here, as strings. They can be
# extensions coming with Sphinx (named 'sphinx.ext.*') or your custom
# ones.
extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "myst_parser",
    "sphinx.ext.mathjax",
]

autodoc_default_options = {
    "members": True,
    "inherited-members": True,
    "member-order": "groupwise",
    "undoc-members": False,
    "private-members": False,
    "special-members": "__init__",
}

# Add any paths that contain templates here, relative to this directory.
templates_path = ["_templates"]

# List of patterns, relative to source directory, that match files and
# directories to ignore when looking for source files.
exclude_patterns = ["_build"]


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_theme_options = {
    "navigation_depth": 5,
    "collapse_navigation": False,
}


# Get sphinx-apidocs to run on readthedocs pipeline
# see https://github.com/readthedocs/readthedocs.org/issues/1139
def run_apidoc(_):
    from sphinx.ext.apidoc import main

    os.chdir("..")
    src_dir = os.path.join("../mcvdim")
    main(["-M", "-f", "-o", "source", src_dir])


def setup(app):
    app.connect("builder-inited", run_apidoc)
