"""Mordell-Weil rank bounds for elliptic curves over rational function fields."""

__version__ = "0.1.0"
