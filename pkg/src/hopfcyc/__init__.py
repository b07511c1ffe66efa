"""Exact equivariant cyclic cohomology, K-theory and index computations for finite Hopf actions."""

__version__ = "0.1.0"
