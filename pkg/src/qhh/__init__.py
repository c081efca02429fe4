"""First Hochschild (co)homology of bound quiver algebras.

Build a finite-dimensional algebra from a quiver with relations, grow it
by new arrows, and compare the closed jump formula for dim HH1 against
direct derivation-solver and bar-complex computations, all over exact
fields, with every identity re-checkable via ``verify``.
"""

from .linalg import (QQ, FpElement, Matrix, PrimeField, SpanBuilder,
                     Subspace, nullspace, rank, rref)
from .quiver import (Arrow, BudgetExceededError, Path, Quiver, stationary)
from .algebra import (AdmissibilityError, Bimodule, BoundQuiverPresentation,
                      MalformedRelationError, Relation,
                      StructureConstantsAlgebra, bimodule_hom_dim,
                      bimodule_invariants, bound_quiver_dimensions,
                      build_algebra)
from .modules import (LeftModule, direct_sum, ext1_dim, hom_dim,
                      injective_at, projective_at, simple_at, syzygy)
from .extension import (ExtendedRelativePath, InfiniteError, RelativePath,
                        build_extended_algebra, enumerate_extended,
                        enumerate_relative_paths, expected_dimension,
                        has_relative_cycle, hom_bimodule_dim, relative_graph,
                        rebuild_dimensions)
from .hochschild import (CohomologySlice, Derivation, derived_h1_dim, h0,
                         h1_cohomology, h1_homology, inner_derivation,
                         lie_bracket, relative_h1_dim)
from .formula import (CycleError, DeltaBreakdown, Identity,
                      RelativeLoopError, SamplerExhaustedError,
                      VerificationReport, acyclic_path_algebra_hh1,
                      delta_formula, random_acyclic_quiver, random_instance,
                      single_arrow_delta, verify)
from .cli import CapExceededError, InstanceFile, ParseError, main, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "QQ", "FpElement", "Matrix", "PrimeField", "SpanBuilder", "Subspace",
    "nullspace", "rank", "rref",
    "Arrow", "BudgetExceededError", "Path", "Quiver", "stationary",
    "AdmissibilityError", "Bimodule", "BoundQuiverPresentation",
    "MalformedRelationError", "Relation", "StructureConstantsAlgebra",
    "bimodule_hom_dim", "bimodule_invariants", "bound_quiver_dimensions",
    "build_algebra",
    "LeftModule", "direct_sum", "ext1_dim", "hom_dim", "injective_at",
    "projective_at", "simple_at", "syzygy",
    "ExtendedRelativePath", "InfiniteError", "RelativePath",
    "build_extended_algebra", "enumerate_extended",
    "enumerate_relative_paths", "expected_dimension", "has_relative_cycle",
    "hom_bimodule_dim", "relative_graph", "rebuild_dimensions",
    "CohomologySlice", "Derivation", "derived_h1_dim", "h0",
    "h1_cohomology", "h1_homology", "inner_derivation", "lie_bracket",
    "relative_h1_dim",
    "CycleError", "DeltaBreakdown", "Identity", "RelativeLoopError",
    "SamplerExhaustedError", "VerificationReport",
    "acyclic_path_algebra_hh1", "delta_formula", "random_acyclic_quiver",
    "random_instance", "single_arrow_delta", "verify",
    "CapExceededError", "InstanceFile", "ParseError", "main", "parse",
    "serialize",
    "__version__",
]
