"""
mu_lab: sum-triple statistics over finite abelian groups.

This package provides Fourier transforms on Z(m1) x ... x Z(mk), three
independent ways of counting mu(A, B, C), bound formulas, shore maximization,
and a seeded Monte Carlo harness for checking the bounds on random sets.
"""

__version__ = "0.1.0"
