"""Exception hierarchy shared by all modules."""


class AlcoveChargeError(Exception):
    """Base class for all package errors."""


class UnsupportedFamily(AlcoveChargeError):
    """Cartan family/rank pair is not supported."""


class WeylGroupTooLarge(AlcoveChargeError):
    """Full Weyl group enumeration was requested beyond the configured bound."""


class RankMismatch(AlcoveChargeError):
    """Operands live in Cartan spaces of different ranks."""


class PointOnWall(AlcoveChargeError):
    """A point expected to be regular lies on an affine coroot hyperplane."""

    def __init__(self, hyperplane, message=None):
        self.hyperplane = hyperplane
        super().__init__(message or f"point lies on hyperplane {hyperplane}")


class NotAdjacent(AlcoveChargeError):
    """Two alcoves do not share a codimension-one face."""


class NotAbove(AlcoveChargeError):
    """Wall-crossing check called with the pair ordered against the direction cone."""


class NotInVreg(AlcoveChargeError):
    """Pair (lambda, mu) is outside the regular neighborhood V^reg."""


class NotInS(AlcoveChargeError):
    """Pair (lambda, mu) is outside the fundamental domain S."""


class DegenerateSegment(AlcoveChargeError):
    """A witness segment meets a codimension >= 2 stratum; resample witnesses."""


class NotSimplyLaced(AlcoveChargeError):
    """Kleinian models require an ADE Cartan datum."""


class UnsupportedModel(AlcoveChargeError):
    """Operation is not defined for this K-theory model kind."""


class ZeroClass(AlcoveChargeError):
    """K-class argument must be nonzero."""


class ZeroPolynomial(AlcoveChargeError):
    """Polynomial argument must be nonzero."""


class NonTransversalCrossing(AlcoveChargeError):
    """Transport path crosses a wall non-transversally or at a bad mu position."""


class PathLeavesVreg(AlcoveChargeError):
    """Transport path exits V^reg away from a legal crossing event."""


class VanishingCharge(AlcoveChargeError):
    """Central charge vanishes where a phase is requested."""
