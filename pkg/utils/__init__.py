"""Configuration, validation and seeded randomness helpers for setlearn."""
