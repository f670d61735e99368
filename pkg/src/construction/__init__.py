"""Step-wise construction of certified truncations."""
