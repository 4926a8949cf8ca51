#!/usr/bin/env python3
"""
Documentation generation script for sphex.
This script generates HTML documentation using pdoc.
"""

from pathlib import Path

import pdoc


def generate_docs() -> None:
    """
    Generate documentation for the project.
    """
    output_dir = Path("docs")
    output_dir.mkdir(exist_ok=True)

    modules = [
        "sphex",
        "sphex.permutation",
        "sphex.group",
        "sphex.fixtures",
        "sphex.isomorphism",
        "sphex.exactnum",
        "sphex.chartab",
        "sphex.lattice",
        "sphex.oliver",
        "sphex.exclusion",
        "sphex.verify",
        "sphex.config",
        "sphex.cache",
        "sphex.serializer",
        "sphex.models",
        "sphex.errors",
        "sphex.utils",
        "main",
    ]

    pdoc.render.configure(
        docformat="google",  # Use Google-style docstrings
        show_source=True,
    )

    try:
        pdoc.pdoc(*modules, output_directory=output_dir)
    except Exception as e:
        print(f"Error generating documentation: {e}")
        return

    print(f"Documentation generated in {output_dir.absolute()}")
    print("You can view the documentation by opening docs/index.html in your browser")


if __name__ == "__main__":
    generate_docs()
