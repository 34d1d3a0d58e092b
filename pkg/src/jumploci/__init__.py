"""Exact computation of rank-one and sl2 jump loci for CDGAs, Lie algebras and
torus-bundle groups."""

__version__ = "0.1.0"
