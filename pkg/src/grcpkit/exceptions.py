"""Exception hierarchy.

Input problems subclass :class:`ValueError`, resource caps subclass
:class:`ResourceCapExceeded`, and broken mathematical invariants subclass
:class:`PropertyViolated` and carry an ``evidence`` mapping for reports.
"""

from __future__ import annotations

from typing import Any


class GrcpError(Exception):
    """Base class for all errors raised by grcpkit."""


class InvalidInput(GrcpError, ValueError):
    pass


class ParseError(InvalidInput):
    pass


class FloatRejected(ParseError):
    pass


class NotStronglyConnected(InvalidInput):
    pass


class NotIrreducible(NotStronglyConnected):
    pass


class NotRegular(InvalidInput):
    pass


class NotStochastic(InvalidInput):
    pass


class InvalidColoring(InvalidInput):
    pass


class NotInKernel(InvalidInput):
    pass


class NotARange(InvalidInput):
    pass


class DiscreteStability(InvalidInput):
    pass


class BadDelta(InvalidInput):
    pass


class NotAFixedPoint(InvalidInput):
    pass


class NotFound(InvalidInput):
    pass


class ResourceCapExceeded(GrcpError):
    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class SizeCapExceeded(ResourceCapExceeded):
    pass


class SearchSpaceExceeded(ResourceCapExceeded):
    pass


class PropertyViolated(GrcpError):
    def __init__(self, message: str, evidence: dict[str, Any] | None = None):
        super().__init__(message)
        self.evidence = evidence or {}


class InternalInvariantError(PropertyViolated):
    pass


class CongruenceViolation(PropertyViolated):
    pass


class DecompositionResidual(PropertyViolated):
    pass
