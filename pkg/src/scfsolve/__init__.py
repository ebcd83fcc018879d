"""Exact free-fermion solutions of spin models with simplicial claw-free frustration graphs."""

__version__ = "0.1.0"
