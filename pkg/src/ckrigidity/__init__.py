"""Rigidity of right-angled Coxeter group actions on a torus complex."""

__version__ = "0.1.0"
