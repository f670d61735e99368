"""Target enumeration, pairing and step schedules."""
