"""Reporters that write analysis tables."""
