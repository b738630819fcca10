"""Service layer for model persistence."""
