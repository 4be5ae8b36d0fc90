"""Exception hierarchy shared by every adesign module."""


class AdesignError(ValueError):
    """Base class for bad input to any adesign operation."""


class FieldError(AdesignError):
    pass


class GroupError(AdesignError):
    pass


class IncidenceError(AdesignError):
    pass


class SetDiffError(AdesignError):
    pass


class GraphError(AdesignError):
    pass


class ConstructionError(AdesignError):
    """A construction's hypotheses are not met by its input."""


class BoundsError(AdesignError):
    pass


class FormatError(AdesignError):
    """A block, matrix or group-subset file could not be parsed."""
