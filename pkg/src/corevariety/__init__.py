"""Exact core varieties and representing measures for truncated moment
problems on finite ground sets."""

from .corevar import (CoreVarietyTrace, Decision, Hypothesis, Status, StepCertificate, check_hypotheses,
                      core_variety, decide, make_staircase, step)
from .errors import (CoreVarietyError, DependentBasis, InternalInfeasible, InvalidNesting, InvariantViolation,
                     NoMeasure, NotInCoreVariety, ParseError, StaircaseCertificationError, UnknownLabel)
from .exact import ConeDesc, LpResult, LpStatus, Mat, kernel_basis, lp, rank, relint_point, rref, to_rat
from .extend import (ExtensionProblem, TowerSpec, extension_problem, separating_function, tail_diagnostic,
                     tower_core_variety, tower_decide, tower_from_names, v_positive_extension)
from .faces import FaceDescriptor, face_of, finite_fastpath, in_relint, is_exposed, member
from .measure import (AtomicMeasure, caratheodory_prune, compress_cloud, cover_point, extract, is_strictly_positive,
                      monomial_moments)
from .space import (FunctionSystem, Functional, GroundSet, SubsetView, from_functions, from_matrix,
                    monomial_grid, monomial_system, point_evaluation, restrict)

__all__ = [
    "AtomicMeasure",
    "ConeDesc",
    "CoreVarietyError",
    "CoreVarietyTrace",
    "Decision",
    "DependentBasis",
    "ExtensionProblem",
    "FaceDescriptor",
    "FunctionSystem",
    "Functional",
    "GroundSet",
    "Hypothesis",
    "InternalInfeasible",
    "InvalidNesting",
    "InvariantViolation",
    "LpResult",
    "LpStatus",
    "Mat",
    "NoMeasure",
    "NotInCoreVariety",
    "ParseError",
    "StaircaseCertificationError",
    "Status",
    "StepCertificate",
    "SubsetView",
    "TowerSpec",
    "UnknownLabel",
    "caratheodory_prune",
    "check_hypotheses",
    "compress_cloud",
    "core_variety",
    "cover_point",
    "decide",
    "extension_problem",
    "extract",
    "face_of",
    "finite_fastpath",
    "from_functions",
    "from_matrix",
    "in_relint",
    "is_exposed",
    "is_strictly_positive",
    "kernel_basis",
    "lp",
    "make_staircase",
    "member",
    "monomial_grid",
    "monomial_moments",
    "monomial_system",
    "point_evaluation",
    "rank",
    "relint_point",
    "restrict",
    "rref",
    "separating_function",
    "step",
    "tail_diagnostic",
    "to_rat",
    "tower_core_variety",
    "tower_decide",
    "tower_from_names",
    "v_positive_extension",
]

__version__ = "0.1.0"
