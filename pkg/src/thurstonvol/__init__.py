"""Exact computations comparing the symplectic and integral normalizations of Thurston measure."""

__version__ = "0.1.0"
