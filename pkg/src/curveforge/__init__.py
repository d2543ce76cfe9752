"""Rational points, arcs, codes and Stöhr-Voloch invariants of plane curves over small finite fields."""

__version__ = "0.1.0"
