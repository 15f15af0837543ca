"""
Pipeline utilities package.

Helpers for the liptrop command line: context loading, property suites and
report output.
"""

__version__ = '0.1.0'
