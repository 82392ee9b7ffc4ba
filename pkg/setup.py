#!/usr/bin/env python

from setuptools import setup, find_packages

requires = [
    "flask",
	"click>=8.2",
	"WTForms",
	"Flask-Caching",
	"dicttoxml",
	"numpy",
	"pandas",
]

setup(
    name='hitchin-pants',
    version='0.1',
    description='Bonahon-Dreyer coordinates of the Fuchsian locus of Hitchin components of a pair of pants',
    include_package_data=True,
    packages=find_packages(exclude=["tests"]),
    install_requires=requires,
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": ["hitchin-pants = hitchinpants.cli:cli"],
    },
    package_dir={'hitchinpants': 'hitchinpants/'}
)
