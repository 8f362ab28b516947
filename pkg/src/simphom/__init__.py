"""Finite simplicial groups: Moore homology, cycle objects, Kan conditions and
regular-pushout characterizations of acyclic fibrations, checked exhaustively."""

__version__ = "0.1.0"
