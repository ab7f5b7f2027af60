"""Utility modules for the NCR simulator."""
