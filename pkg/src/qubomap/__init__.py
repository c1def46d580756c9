"""Map combinatorial problems to QUBO models, solve them, and check the results."""

from . import encoders, lucas, problems, qubo
from .encoders import PenaltyWeights, build, canonical_encode, decode, default_weights, validate_weights
from .errors import QuboError
from .qubo import QuboModel, VariableRegistry, energy, to_ising

__all__ = [
    "PenaltyWeights",
    "QuboError",
    "QuboModel",
    "VariableRegistry",
    "build",
    "canonical_encode",
    "decode",
    "default_weights",
    "encoders",
    "energy",
    "lucas",
    "problems",
    "qubo",
    "to_ising",
    "validate_weights",
]
