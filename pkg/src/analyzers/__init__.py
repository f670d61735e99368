"""Numerical analyses of constructed truncations: characteristics, zeros, covers."""
