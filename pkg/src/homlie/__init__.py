"""Exact-arithmetic computation of Hom-Lie and related twisted structures
on finite-dimensional structure-constant algebras."""

from .algebra import (
    AlgebraSpec,
    BilinearForm,
    LawViolation,
    builtin,
    builtin_names,
    killing_form,
    make_algebra,
    parse_builtin,
    structural_subspaces,
)
from .actions import (
    NonSplitAction,
    NotSubmodule,
    WeightComponent,
    act,
    conjugate,
    is_submodule,
    sl2_decompose,
    weight_decompose,
)
from .constructions import (
    Cocycle2,
    PartialAlgebra,
    adjoin_map,
    central_extension,
    cocycle2,
    km_window,
    semidirect_derivation,
    tensor_lie,
    twisted_cyclic,
)
from .jordan import (
    ClosureVerdict,
    closure_check,
    counterexample_suite,
    jordan_product,
    jordan_structure_constants,
)
from .linalg import Matrix, Scalar, Subspace, nullspace, rref, subspace_combine
from .solver import (
    HOM_2NILP,
    HOM_CYCLIC,
    HOM_LIE,
    HomSolution,
    StructureKind,
    central_ext_homlie_decomposed,
    coboundary_space,
    current_formula_span,
    delta_derivation,
    f_t,
    is_multiplicative,
    seq_uv,
    solve_bilinear,
    solve_qder,
    solve_structures,
    tensor_formula_span,
)
from .window import WindowSolution, beta_map, central_maps, solve_window

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "BilinearForm",
    "ClosureVerdict",
    "Cocycle2",
    "HOM_2NILP",
    "HOM_CYCLIC",
    "HOM_LIE",
    "HomSolution",
    "LawViolation",
    "Matrix",
    "NonSplitAction",
    "NotSubmodule",
    "PartialAlgebra",
    "Scalar",
    "StructureKind",
    "Subspace",
    "WeightComponent",
    "WindowSolution",
    "act",
    "adjoin_map",
    "beta_map",
    "builtin",
    "builtin_names",
    "central_ext_homlie_decomposed",
    "central_extension",
    "central_maps",
    "closure_check",
    "coboundary_space",
    "cocycle2",
    "conjugate",
    "counterexample_suite",
    "current_formula_span",
    "delta_derivation",
    "f_t",
    "is_multiplicative",
    "is_submodule",
    "jordan_product",
    "jordan_structure_constants",
    "killing_form",
    "km_window",
    "make_algebra",
    "nullspace",
    "parse_builtin",
    "rref",
    "semidirect_derivation",
    "seq_uv",
    "sl2_decompose",
    "solve_bilinear",
    "solve_qder",
    "solve_structures",
    "solve_window",
    "structural_subspaces",
    "subspace_combine",
    "tensor_formula_span",
    "tensor_lie",
    "twisted_cyclic",
    "weight_decompose",
]
