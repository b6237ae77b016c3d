#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.

import io

from setuptools import find_packages, setup


def readme():
    with io.open('README.md', encoding='utf-8') as f:
        return f.read()


def requirements(filename):
    reqs = list()
    with io.open(filename, encoding='utf-8') as f:
        for line in f.readlines():
            reqs.append(line.strip())
    return reqs


setup(
    name='dispersive-lab',
    version='0.3.0',
    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
    license='MIT',
    author='dispersive-lab developers',
    description='dispersive-lab is a python package to run numerical experiments on fractional Schrödinger evolutions with complex time.',
    long_description=readme(),
    long_description_content_type='text/markdown',
    install_requires=requirements(filename='requirements.txt'),
    include_package_data=True,
    entry_points={
        'console_scripts': ['dispersive-lab=dispersive_lab.cli:main']
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
        "Topic :: Software Development :: Libraries"
    ],
    python_requires='>=3.8',
    extras_require={
        "tests": requirements(filename='tests/requirements.txt'),
        "docs": requirements(filename='docs/requirements.txt')
    },
    keywords=', '.join([
        'fractional Schrödinger', 'maximal estimates', 'pointwise convergence', 'oscillatory integrals',
        'Littlewood-Paley', 'Riesz energy', 'box counting', 'harmonic analysis'
    ]),
)
