"""Exception types shared across the package."""


class AdlvError(Exception):
    """Base class for domain errors."""


class DatumError(AdlvError):
    """Malformed root datum input."""


class NotInLeviError(AdlvError):
    """The Weyl part of b is not in the Weyl group of the requested Levi."""


class SuperbasicImpossible(AdlvError):
    """b is basic in L but L has a factor that is not of type A."""


class KappaMismatch(AdlvError):
    """Kottwitz points differ, so b is not in B(G, mu)."""


class NotInBGmu(AdlvError):
    """The pair (mu, b) fails the Mazur / Kottwitz condition."""


class PreconditionError(AdlvError):
    """An operation was called outside its documented domain."""


class ResourceExhausted(AdlvError):
    """A search exceeded its configured size bound."""


class ChainNotFound(AdlvError):
    """No path was found in a set that is expected to be connected."""
