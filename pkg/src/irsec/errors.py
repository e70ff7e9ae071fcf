"""Exception types shared across the simulator."""


class IrsecError(Exception):
    """Base class for all simulator errors."""


class IllConditioned(IrsecError):
    """Gram matrix of the effective channel is numerically singular
    (degenerate UE/IRS geometry)."""


class DegenerateGeometry(IrsecError):
    """Two endpoints of a propagation link coincide."""


class PlacementFailure(IrsecError):
    """Rejection sampling for node placement exceeded the attempt budget."""


class SizeLimit(IrsecError):
    """Requested permutation enumeration is too large to materialize."""


class Infeasible(IrsecError):
    """No (permutation set, dwell time) pair satisfies the rate constraint."""


class ParseError(IrsecError):
    """Config file could not be parsed; message carries line/field info."""


class ValidationError(IrsecError):
    """Config or scenario violates an invariant."""
