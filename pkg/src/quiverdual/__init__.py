"""Exact computations with bound quivers, centred on the duality between twisted
trivial extensions and (n+1)-preprojective presentations."""

from .algebra import (
    GradedBasis,
    LinComb,
    Presentation,
    expand,
    graded_basis,
    hilbert_table,
    homogeneity_degree,
    maximal_bound_paths,
    normalize_relations,
)
from .dual import pairing, quadratic_dual, relation_span_equal
from .errors import InconsistencyError, QuiverDualError
from .preprojective import fstar_oracle, koszul_complex_maps, preproj_presentation, structure_coefficients, zeta
from .quiver import Arrow, Path, Quiver
from .resolution import koszul_witness, minimal_resolution_of_simple
from .translation import SliceSpec, characterize, is_complete_tau_slice, slice_presentation, znq_window
from .trivext import (
    Twist,
    TrivExtAlgebra,
    is_trivext_quadratic,
    mu_sigma,
    returning_arrow_quiver,
    trivext_multiply,
    trivext_relations,
    trivial_extension,
)
from .verify import compare_graded_dims, verify_main_theorem, verify_orthogonality

__version__ = "0.1.0"
