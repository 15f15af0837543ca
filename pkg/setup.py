"""
Setup configuration for installs without a PEP 517 frontend.

Mirrors pyproject.toml.
"""

from setuptools import setup

setup(
    name='liptrop',
    version='0.1.0',
    description='Inf-convolution monoids of 1-Lipschitz functions on finite invariant metric groups',
    packages=['src', 'src.liptrop', 'pipelines', 'pipelines.utils'],
    python_requires='>=3.9',
    install_requires=[
        'numpy>=1.24.0',
        'networkx>=3.1',
        'pyyaml>=6.0.0',
    ],
    extras_require={
        'test': [
            'pytest>=8.0.0',
            'pytest-cov>=5.0.0',
            'pytest-mock>=3.12.0',
        ],
    },
    entry_points={
        'console_scripts': ['liptrop=pipelines.liptrop_cli:main'],
    },
)
