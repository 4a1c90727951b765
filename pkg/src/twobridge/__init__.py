"""Exact invariants of two-bridge knots, their dihedral covering links and
the formal Seiberg-Witten polynomials built from them."""

__version__ = "0.1.0"
