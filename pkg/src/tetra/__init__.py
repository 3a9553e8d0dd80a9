"""Tetramodules over finite-dimensional bialgebras and their cohomology."""

__version__ = "0.1.0"
