"""Exact K-stability invariants of polarized surfaces given by blow-up lattice data."""

__version__ = "0.1.0"
