"""Cohomology of finite p-groups over F_p, with checks for the projective unitary case."""

__version__ = "0.1.0"
