"""Exact commutative algebra for central hyperplane arrangements and their Jacobian ideals."""

__version__ = "0.1.0"
