"""Exception types and the violation record shared by all validators."""

from dataclasses import dataclass, field


class NicholsError(Exception):
    """Base class for every error raised by this package."""


class InputError(NicholsError, ValueError):
    """Malformed or inconsistent input data."""


class ModulusMismatch(InputError):
    """Two scalars from different cyclotomic fields met without an explicit embedding."""


class UnsupportedFeature(InputError):
    pass


class BudgetExceeded(NicholsError):
    """A computation would exceed its configured size budget.

    ``partial`` carries whatever was finished before the guard tripped
    (for instance a HilbertPrefix with the remaining degrees flagged).
    """

    def __init__(self, message, size=None, limit=None, partial=None):
        super().__init__(message)
        self.size = size
        self.limit = limit
        self.partial = partial


@dataclass(frozen=True)
class Violation:
    """A located failure of a mathematical identity.

    ``kind`` names the identity, ``witness`` is the offending tuple of
    indices and ``values`` holds the two disagreeing sides (if any).
    """

    kind: str
    witness: tuple
    detail: str = ""
    values: tuple = field(default=())

    def to_json(self):
        return {
            "kind": self.kind,
            "witness": list(self.witness),
            "detail": self.detail,
            "values": [str(v) for v in self.values],
        }
