"""Command-line interface tools for imagshift."""
