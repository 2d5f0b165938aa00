"""Max-min (fuzzy) linear algebra over the integer chain ``0..top``."""

from .conformism import (
    ConformismReport,
    EFVectors,
    Verdict,
    Violation,
    Witness,
    check_conforming,
    ef_vectors,
    eigenspace_structure,
    preconditions,
    witness_second_solution,
)
from .errors import (
    ConstructionError,
    ContextError,
    DimensionError,
    InstanceError,
    MaxMinError,
    NotConformingError,
    OracleLimitError,
)
from .graphs import (
    CycleDecomposition,
    ThresholdDigraph,
    cycles_of_permutation,
    gamma,
    gamma_star,
    is_level_permutation,
    threshold_digraph,
)
from .instance import InstanceFile, parse_instance
from .robustness import (
    RobustnessReport,
    UpwardnessResult,
    in_attraction,
    is_invariant,
    is_weakly_robust,
    is_weakly_x_robust,
    is_x_simple_vector,
    robustness_report,
    upwardness_check,
)
from .semiring import Box, Matrix, Scalar, Vector, matmul, matvec, oplus, otimes, power
from .solver import (
    Reduction,
    SolveReport,
    cover_sets,
    is_solvable,
    is_unique,
    principal_solution,
    reduce_system,
    solve,
)
from .spectral import aggregates, greatest_eigenvector, is_eigenvector, orbit

__all__ = [name for name in dir() if not name.startswith("_")]
