#!/usr/bin/python
# -*- coding: utf-8 -*-


import os

from setuptools import setup


# recursively scan for python modules to be included
package_root_dirs = ["tilekt"]
packages = set()
for package_root_dir in package_root_dirs:
    for root, dirs, files in os.walk(package_root_dir):
        if "__init__.py" in files:
            packages.add(root.replace("/", "."))
packages = sorted(packages)


setup(
    name            = "tilekt",
    version         = "1.0",
    description     = "K-theory of the stable, unstable and asymptotic algebras of substitution tilings",
    author          = "The tilekt authors",
    license         = "LGPLv2.1",

    packages        = packages,
    package_data    = {"tilekt": ["data/*.json"]},
    scripts         = [],
    entry_points    = {
        "console_scripts": [
            "tilekt = tilekt.cli:main",
        ],
    },
    test_suite      = "tests",
    install_requires=[
        'six',
        'sympy>=1.12',
        'numpy',
    ],
)
