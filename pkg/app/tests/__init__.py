"""Unit tests for the QKRLS prognostics toolkit."""
