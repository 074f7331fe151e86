#!/usr/bin/env python3
"""
Setup script for the DeLaM kernel package
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read the README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text()

setup(
    name="delam",
    version="0.1.0",
    description="Type checker, conversion checker and law bench for a layered type theory of code and meta-programs",
    long_description=long_description,
    long_description_content_type="text/markdown",
    author="DeLaM Kernel Developers",
    author_email="",

    packages=find_packages(where="src"),
    package_dir={"": "src"},
    package_data={"delam": ["grammar.lark", "settings/*.json"]},
    py_modules=["delam_tool"],

    python_requires=">=3.8",

    install_requires=[
        "lark>=1.1",
    ],

    extras_require={
        "dev": [
            "pytest",
            "pytest-cov",
            "black",
            "flake8",
            "mypy",
            "hypothesis",
        ],
    },

    entry_points={
        "console_scripts": [
            "delam=delam_tool:main",
        ],
    },

    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Software Development :: Compilers",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],

    keywords="type-theory type-checker meta-programming universe-polymorphism contextual-types",
)
