"""Test package for Slowgrowth."""
