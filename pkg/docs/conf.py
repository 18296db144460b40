# Sphinx configuration for the rimaps documentation.
import os
import sys

from recommonmark.transform import AutoStructify

sys.path.insert(0, os.path.abspath(".."))

from rimaps.Version import Version  # noqa: E402

project = "rimaps"
author = "rimaps developers"
release = Version.version

extensions = ["recommonmark"]
templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
html_theme = "sphinx_rtd_theme"
source_suffix = [".rst", ".md"]


def setup(app):
    app.add_config_value(
        "recommonmark_config",
        {
            "auto_toc_tree_section": "Contents",
            "enable_math": True,
        },
        True,
    )
    app.add_transform(AutoStructify)
