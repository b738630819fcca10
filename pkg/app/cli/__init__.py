"""Command-line interface: train, predict, evaluate and inspect."""
