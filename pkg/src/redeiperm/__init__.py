"""Permutation polynomials of GF(q^2), q = 2^t with t odd, built from the
characteristic-2 Redei function, with exhaustive verification tools."""

__version__ = "0.1.0"
