"""Boundary-element DC solver for conductors.

Surface charge, surface potential, capacitance matrices and DC resistances
from one scalar-potential boundary integral formulation.
"""

from ._spie import (
    InputError,
    Mesh,
    NumericalError,
    OperatorSet,
    Report,
    __version__,
    assemble_operators,
    capacitance_matrix,
    eps0,
    oracles,
    solve_case,
)

__all__ = [
    "InputError",
    "Mesh",
    "NumericalError",
    "OperatorSet",
    "Report",
    "__version__",
    "assemble_operators",
    "capacitance_matrix",
    "eps0",
    "oracles",
    "solve_case",
]
