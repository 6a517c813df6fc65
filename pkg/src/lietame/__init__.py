"""Exact computations on classical Lie algebras: root systems, nilpotent orbits,
strata, quasi-b-functions and the Weyl-algebra identities behind them."""

__version__ = "0.1.0"
