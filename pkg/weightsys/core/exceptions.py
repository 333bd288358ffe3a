"""Exceptions raised by the weightsys library."""


class WeightSystemError(ValueError):
    """Base class for every domain error."""
    pass


class PermutationError(WeightSystemError):
    """Malformed permutation text, non-bijection or unmet size precondition."""
    pass


class PolyParseError(WeightSystemError):
    pass


class SeriesError(WeightSystemError):
    """Wrong constant term or mismatched truncation orders."""
    pass


class SwapError(WeightSystemError):
    pass


class BoundExceeded(WeightSystemError):
    """A desk-scale guard refused the request."""
    pass


class RelationError(WeightSystemError):
    pass


class BasisOrderError(WeightSystemError):
    pass


class CacheError(WeightSystemError):
    pass
