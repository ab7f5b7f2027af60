"""Unit tests for the NCR simulator."""
