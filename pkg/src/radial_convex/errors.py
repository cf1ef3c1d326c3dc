"""Exception hierarchy shared by all modules."""


class ConvexConfigError(ValueError):
    """Base class for every error raised by this package."""


class TooFewPoints(ConvexConfigError):
    pass


class DegenerateHull(ConvexConfigError):
    """Input is collinear (2D) or coplanar (3D)."""


class NonUnitInput(ConvexConfigError):
    pass


class RadiiNotDistinct(ConvexConfigError):
    pass


class RepetitionTooHigh(ConvexConfigError):
    """Some radius repeats five or more times; the planar constructions do not apply."""


class BudgetUnderflow(ConvexConfigError):
    """No positive angular slack is left for a strictifying perturbation."""


class DegenerateGrid(ConvexConfigError):
    pass


class WeightOutOfRange(ConvexConfigError):
    pass


class DimensionMismatch(ConvexConfigError):
    pass


class LengthMismatch(ConvexConfigError):
    pass
