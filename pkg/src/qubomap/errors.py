"""Exception hierarchy shared across the package."""


class QuboError(Exception):
    """Base class for all errors raised by qubomap."""


class DimensionError(QuboError, ValueError):
    """An assignment does not match the number of model variables."""


class ModelError(QuboError, ValueError):
    """A QUBO model violates its structural invariants."""


class CapacityError(QuboError):
    """A search space exceeds the configured enumeration cap."""


class InstanceError(QuboError, ValueError):
    """A problem instance is malformed or degenerate."""


class WeightError(QuboError, ValueError):
    """Penalty weights violate the admissibility inequalities of a problem."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("inadmissible weights: " + "; ".join(self.violations))


class FeasibilityError(QuboError, ValueError):
    """A domain solution is structurally invalid for its instance."""


class EncodingError(QuboError, ValueError):
    """A domain solution cannot be represented under the encoding."""


class ParseError(QuboError, ValueError):
    """A serialized document could not be parsed."""
