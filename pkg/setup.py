"""
# Setup Script

Derived from the setuptools sample project at
https://github.com/pypa/sampleproject/blob/main/setup.py

"""

# Always prefer setuptools over distutils
from setuptools import setup, find_packages
import pathlib

# Get the long description from the README file
here = pathlib.Path(__file__).parent.resolve()
readme = here / "readme.md"
long_description = "" if not readme.exists() else readme.read_text(encoding="utf-8")

setup(
    name="qchybrid",
    version="0.1.0",
    description="Quantum-Classical Hybrid Dynamics",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(),
    python_requires=">=3.9, <3.12",
    install_requires=[
        # Param-classes and datatypes are pydantic dataclasses.
        # Tested with everything in the 1.9-1.10 range.
        "pydantic>=1.9.0,<1.11",
        "numpy>=1.21",
        "scipy>=1.7",
        "pyyaml>=6.0",
    ],
    extras_require={
        "dev": [
            "pytest==7.1",
            "coverage",
            "pytest-cov",
            "hypothesis",
            "black==22.6",
        ]
    },
    entry_points={
        "console_scripts": [
            "qchybrid=qchybrid.scenario.cli:main",
        ]
    },
)
