"""Decide left k-cyclicity and the Köthe property for finite-dimensional algebras."""

__version__ = "0.1.0"
