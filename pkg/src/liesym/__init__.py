"""Symmetry toolkit: finite groups, matrix Lie algebras, SU(2)/SU(3), Lorentz and lattice Noether charges."""
__version__ = "0.1.0"
