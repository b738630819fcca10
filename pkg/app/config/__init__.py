"""Run configuration and environment settings."""
