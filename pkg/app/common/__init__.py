"""Common exceptions, data models and logging setup for the prognostics toolkit."""
