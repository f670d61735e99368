"""Slowgrowth - certified truncations of universal entire functions of slow growth"""

__version__ = "1.0.0"
