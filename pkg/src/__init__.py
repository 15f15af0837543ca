"""Liptrop package root.

Exact-arithmetic laboratory for inf-convolution monoids of 1-Lipschitz
functions over finite invariant metric groups.
"""

__version__ = "0.1.0"
__author__ = "Liptrop Developers"
