"""Exact tropical maximum likelihood estimation for toric models."""

from .affine import Cone, contains_point, pluecker, tau_operator, vertex
from .critical import (
    CriticalPoint,
    CriticalPointSet,
    Diagnostic,
    cone_intersection,
    solve,
    solve_by_triangulation,
    solve_curve,
    solve_polygon,
    uniform_constant,
)
from .errors import (
    HasColoop,
    InvalidData,
    NoAllOnes,
    NoCertificate,
    NotABasis,
    NotACurve,
    NotAFace,
    NotUniform,
    ParseError,
    RankDeficient,
    SingularMatrix,
    TropicalMLEError,
)
from .estimators import TauOperator, TropicalIPS, TropicalToricMLE
from .matroid import Matroid, ModelMatrix, dual, free_coextension, matroid_from_matrix
from .subdivision import (
    Triangulation,
    is_face,
    lies_in_cell,
    maximal_cells,
    refines,
    regular_triangulation,
)
from .tips import ScalingModel, reparametrize, tips_run, tips_step

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "CriticalPoint",
    "CriticalPointSet",
    "Diagnostic",
    "HasColoop",
    "InvalidData",
    "Matroid",
    "ModelMatrix",
    "NoAllOnes",
    "NoCertificate",
    "NotABasis",
    "NotACurve",
    "NotAFace",
    "NotUniform",
    "ParseError",
    "RankDeficient",
    "ScalingModel",
    "SingularMatrix",
    "TauOperator",
    "Triangulation",
    "TropicalIPS",
    "TropicalMLEError",
    "TropicalToricMLE",
    "cone_intersection",
    "contains_point",
    "dual",
    "free_coextension",
    "is_face",
    "lies_in_cell",
    "matroid_from_matrix",
    "maximal_cells",
    "pluecker",
    "refines",
    "regular_triangulation",
    "reparametrize",
    "solve",
    "solve_by_triangulation",
    "solve_curve",
    "solve_polygon",
    "tau_operator",
    "tips_run",
    "tips_step",
    "uniform_constant",
    "vertex",
]
