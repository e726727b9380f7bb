"""Exception hierarchy shared by every module."""


class LatticeError(Exception):
    """Base class for all errors raised by the package."""


class InputError(LatticeError):
    """Bad user input; the CLI maps these to exit code 2."""


class NotALattice(InputError):
    pass


class NotPlanar(InputError):
    pass


class DownwardEdge(InputError):
    pass


class UnknownLabel(InputError):
    pass


class UnknownEdge(InputError):
    pass


class NotSR(InputError):
    pass


class NotComparable(InputError):
    pass


class NotAnInterval(InputError):
    pass


class BoundaryLamp(InputError):
    pass


class NoRecipe(InputError):
    pass


class CellNotFound(InputError):
    pass


class NotRectangular(InputError):
    pass


class NotDistributive(InputError):
    pass


class PlacementFailure(LatticeError):
    pass


class LampNotFound(InputError):
    pass


class BadK(InputError):
    pass


class BadDimensions(InputError):
    pass


class NotACongruence(InputError):
    pass


class NotANeonTube(InputError):
    pass


class LabelClash(InputError):
    pass


class JNotInP(InputError):
    pass


class JNotInternal(InputError):
    pass


class IsoFailure(LatticeError):
    pass


class RecipeError(InputError):
    """A recipe step failed; ``step`` is 1-based, matching snapshot indices."""

    def __init__(self, step, cause):
        self.step = step
        self.cause = cause
        super().__init__(f"step {step}: {type(cause).__name__}: {cause}")
