"""Exact and numerical tools for local zeta functions of elliptic curves,
Cuntz-Krieger K-theory, cluster mutation and archimedean local factors."""

from .errors import DomainError

__version__ = "0.1.0"
__all__ = ["DomainError", "__version__"]
