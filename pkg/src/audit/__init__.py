"""Independent transcript verification."""
