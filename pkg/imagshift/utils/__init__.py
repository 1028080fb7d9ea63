"""Utility modules for imagshift."""
