"""Support library: configuration, models, I/O, logging and output."""
