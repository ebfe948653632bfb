"""
Setup configuration for the Semiclassical Wave Packet SDK

Installs the ``wavepacket_sdk`` package and the ``wavepacket`` command.
"""

from setuptools import setup, find_packages
from pathlib import Path
import re


# Read version from __init__.py
def get_version():
    init_file = Path(__file__).parent / "wavepacket_sdk" / "__init__.py"
    with open(init_file, 'r', encoding='utf-8') as f:
        content = f.read()
        version_match = re.search(r'^__version__ = [\'"]([^\'"]*)[\'"]', content, re.MULTILINE)
        if version_match:
            return version_match.group(1)
    raise RuntimeError("Unable to find version string.")


def get_long_description():
    readme_file = Path(__file__).parent / "README.md"
    if readme_file.exists():
        with open(readme_file, 'r', encoding='utf-8') as f:
            return f.read()
    return ""


REQUIRED_DEPENDENCIES = [
    # Numerics
    "numpy>=1.22.0",
    "scipy>=1.8.0",
    "pandas>=1.4.0",

    # Configuration
    "pyyaml>=6.0",

    # Command line
    "click>=8.0.0",
]

OPTIONAL_DEPENDENCIES = {
    "dev": [
        "pytest>=7.0.0",
        "pytest-cov>=3.0.0",
        "black>=22.0.0",
        "flake8>=5.0.0",
        "mypy>=0.971",
    ],
}

ENTRY_POINTS = {
    "console_scripts": [
        "wavepacket=wavepacket_sdk.cli.main:main",
    ],
}

CLASSIFIERS = [
    "Development Status :: 4 - Beta",
    "Intended Audience :: Science/Research",
    "License :: OSI Approved :: MIT License",
    "Operating System :: OS Independent",
    "Programming Language :: Python :: 3",
    "Programming Language :: Python :: 3.9",
    "Programming Language :: Python :: 3.10",
    "Programming Language :: Python :: 3.11",
    "Topic :: Scientific/Engineering :: Physics",
    "Topic :: Scientific/Engineering :: Mathematics",
]

KEYWORDS = [
    "quantum", "semiclassical", "wave-packets", "hermite",
    "polynomials", "gauss-hermite", "numerics",
]

setup(
    name="semiclassical-wavepacket-sdk",
    version=get_version(),
    description="Polynomial prefactors, evaluation and checks for multivariate semiclassical wave packets",
    long_description=get_long_description(),
    long_description_content_type="text/markdown",

    packages=find_packages(include=["wavepacket_sdk", "wavepacket_sdk.*"]),
    include_package_data=True,

    python_requires=">=3.9",
    install_requires=REQUIRED_DEPENDENCIES,
    extras_require=OPTIONAL_DEPENDENCIES,

    entry_points=ENTRY_POINTS,

    license="MIT",
    classifiers=CLASSIFIERS,
    keywords=" ".join(KEYWORDS),

    zip_safe=False,
    platforms=["any"],
    test_suite="tests",
)
