"""localmds test suite: unit, property and command-line tests for every module."""
