"""Unit tests for setlearn."""
