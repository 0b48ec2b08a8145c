"""Exact homological algebra over skew group algebras of finite groups."""

__version__ = "0.1.0"
