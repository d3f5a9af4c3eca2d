import re

from setuptools import find_packages, setup

with open("README.md") as fl:
    LONG_DESCRIPTION = fl.read()


def get_version():
    version_file = open("ggdkit/__init__.py").read()
    version_match = re.search(
        r'^__version__ = [\'"]([^\'"]*)[\'"]',
        version_file,
        re.MULTILINE,
    )
    if version_match:
        return version_match.group(1)
    raise RuntimeError("Unable to find version string.")


setup(
    name="ggdkit",
    version=get_version(),
    description=("Geometric graph distance and geometric edit distance for embedded graphs."),
    license="Apache",
    keywords="graph distance geometric embedding branch-and-bound",
    packages=find_packages(
        exclude=[
            "tests",
        ],
    ),
    long_description=LONG_DESCRIPTION,
    long_description_content_type="text/markdown",
    tests_require=["pytest"],
    python_requires=">=3.9",
    install_requires=[
        "prometheus-client>=0.12.0",
        "numpy>=1.22",
        "scipy>=1.8",
        "networkx>=2.8",
        "pydantic>=2.0,<3",
    ],
    entry_points={
        "console_scripts": [
            "ggdkit=ggdkit.cli:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Intended Audience :: Developers",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: Apache Software License",
    ],
)
