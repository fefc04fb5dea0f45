"""Numerics for Selberg-class L-functions: Mellin-Barnes kernels, Meijer-G
closed forms, Dirichlet-inverse Riesz sums, and zero-sum identity checks."""

__version__ = "0.1.0"
