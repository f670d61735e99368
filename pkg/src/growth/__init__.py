"""Growth envelopes, oracles and slow growth rules."""
