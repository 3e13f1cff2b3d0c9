"""Exact-arithmetic checks of cyclic sieving on generalized cluster complexes."""

__version__ = "0.1.0"
