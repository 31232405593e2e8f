"""
Analysis of Boolean monomial dynamical systems over F2^n.

The fixed point behaviour of a system is decided from its dependency graph
(strongly connected components and their loop numbers) and can be checked
against the exhaustive state space for small systems.
"""

__version__ = "1.0.0"
