"""Binomial step systems and their exact solvers."""
