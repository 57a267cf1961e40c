"""Exact enumeration and verification toolkit for 2-SAT functions,
literal posets, and red/blue colored graphs."""

__version__ = "0.1.0"
