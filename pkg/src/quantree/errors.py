"""Exception types raised across the package."""


class QuantreeError(Exception):
    """Base class for all package errors."""


class ValidationError(QuantreeError, ValueError):
    """Malformed graph data or an operation applied to an unsuitable graph."""


class UnsupportedError(QuantreeError):
    """Operation not supported for this kind of graph (e.g. diameter with cycles)."""


class DomainError(QuantreeError, ValueError):
    """Numerical argument outside the domain of an operation."""


class ResolutionError(QuantreeError, RuntimeError):
    """Root scan failed to resolve the spectrum even after refinement."""
