"""Normalized unit groups of modular group algebras of 2-groups over GF(2)."""

__version__ = "0.1.0"
