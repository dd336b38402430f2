"""Exact symbolic toolkit for conformal Galilei algebras.

Covers the finitely many generator families with mass or exotic central
extensions (plus the six-dimensional centerless case), their lowest-weight
modules and singular vectors, vector-field realizations, and the invariant
differential equation hierarchies built from the singular vectors.  All
arithmetic is exact over rational functions of the weight parameters.
"""

__version__ = "0.1.0"
