"""Command-line interface for localmds."""
