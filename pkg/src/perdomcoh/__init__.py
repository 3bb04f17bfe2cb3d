"""Compactly supported l-adic cohomology of basic period domains, computed
combinatorially from Weyl group, Galois orbit and parabolic data."""

__version__ = "0.1.0"
