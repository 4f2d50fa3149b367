"""Supersingular polynomials over prime fields, their linear-factor counts,
and the modular-function machinery behind them."""

__version__ = "0.1.0"
