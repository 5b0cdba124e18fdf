"""Partial orders of information content on classical and quantum states.

The main entry points are re-exported here; see the submodules for the
full surface.
"""

from .errors import PartialityError
from .simplex import (
    ClassicalState,
    bayesian_explain,
    bayesian_leq,
    bayesian_leq_recursive,
    bayesian_leq_symmetric,
    line_path,
    mixing_combine,
    pure,
    shannon_entropy,
    uniform,
)
from .spectra import DensityMatrix, Observable, diag_embedding, spectral_leq, von_neumann_entropy

__version__ = "0.1.0"

__all__ = [
    "ClassicalState",
    "DensityMatrix",
    "Observable",
    "PartialityError",
    "bayesian_explain",
    "bayesian_leq",
    "bayesian_leq_recursive",
    "bayesian_leq_symmetric",
    "diag_embedding",
    "line_path",
    "mixing_combine",
    "pure",
    "shannon_entropy",
    "spectral_leq",
    "uniform",
    "von_neumann_entropy",
]
