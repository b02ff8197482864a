"""Domain types, errors, configuration and job routing."""
