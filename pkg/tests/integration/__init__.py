"""Integration tests reproducing published step counts."""
