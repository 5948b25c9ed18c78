"""Logging, run summaries and audit result records."""
