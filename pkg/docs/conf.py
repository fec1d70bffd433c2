"""Sphinx configuration for the psibeta API documentation."""

from importlib.metadata import version as get_version

project = "psibeta"
release = get_version("psibeta")
version = ".".join(release.split(".")[:2])

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

autodoc_member_order = "bysource"
autodoc_typehints = "description"
nitpicky = False

html_theme = "sphinx_rtd_theme"
html_show_sourcelink = False
