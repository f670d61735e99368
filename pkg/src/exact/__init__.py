"""Exact Gaussian-rational arithmetic, polynomials and certified bounds."""
