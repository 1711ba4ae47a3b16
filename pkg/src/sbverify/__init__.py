"""Certificates for a symplectic obstruction and a matching curve configuration."""

__version__ = "0.1.0"
