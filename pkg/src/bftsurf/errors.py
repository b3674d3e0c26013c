"""Domain errors.  Everything raised for bad mathematical input derives from :class:`BFTError`."""

from __future__ import annotations


class BFTError(Exception):
    """Base class; ``details`` are serialized next to the error name on the CLI."""

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.__class__.__name__)
        self.details = details

    def to_json(self) -> dict:
        out = {"error": type(self).__name__, "message": str(self)}
        for k, v in self.details.items():
            out[k] = str(v) if isinstance(v, int) and not isinstance(v, bool) else v
        return out


class InvalidModulus(BFTError):
    pass


class PerfectSquareModulus(BFTError):
    pass


class PerfectSquareType(BFTError):
    pass


class ZeroSlope(BFTError):
    pass


class NonIntegralInvariant(BFTError):
    pass


class HodgeViolation(BFTError):
    pass


class HypothesisFailed(BFTError):
    """``x0^2 (n^2) < 2 y0^2 (l.n)^2``; ``deficit`` is the exact shortfall."""

    def __init__(self, message: str = "", *, deficit: int, **details):
        super().__init__(message, deficit=deficit, **details)
        self.deficit = deficit


class NuTooSmall(BFTError):
    pass


class BelowDomain(BFTError):
    pass


class NotAmple(BFTError):
    def __init__(self, message: str = "", *, quantity: str, **details):
        super().__init__(message, quantity=quantity, **details)
        self.quantity = quantity


class OddSelfIntersection(BFTError):
    pass


class InvalidLattice(BFTError):
    pass


class InvalidClass(BFTError):
    pass


class BudgetExceeded(BFTError):
    pass
