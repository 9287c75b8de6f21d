"""Crystallographic groups, flat orbifolds, and their collapsed limits."""

from .catalog import catalog_get, catalog_list, generalized_klein_bottle, torus
from .collapse import (
    CollapseResult,
    collapse,
    product_resolution,
    rational_closure,
    rational_isotypic_components,
    verify_theorem_c,
)
from .groups import (
    AffineElement,
    CrystalGroup,
    FlatOrbError,
    HolonomyData,
    group_from_dict,
    group_to_dict,
    load_group,
)
from .lattices import (
    Lattice,
    SpecialBasis,
    check_diameter_bound,
    covering_radius,
    reduced_basis,
    sequence_limit,
    short_vectors,
    special_basis,
)
from .reps import (
    IsotypicComponent,
    IsotypicReport,
    commutant_basis,
    invariant_forms_basis,
    isotypic_decompose,
    teich_report,
)
from .wallpaper import OrbifoldLabel, classify2, fundamental_cell_check, render_svg, singular_locus

__version__ = "0.1.0"

__all__ = [
    "AffineElement",
    "CollapseResult",
    "CrystalGroup",
    "FlatOrbError",
    "HolonomyData",
    "IsotypicComponent",
    "IsotypicReport",
    "Lattice",
    "OrbifoldLabel",
    "SpecialBasis",
    "catalog_get",
    "catalog_list",
    "check_diameter_bound",
    "classify2",
    "collapse",
    "commutant_basis",
    "covering_radius",
    "fundamental_cell_check",
    "generalized_klein_bottle",
    "group_from_dict",
    "group_to_dict",
    "invariant_forms_basis",
    "isotypic_decompose",
    "load_group",
    "product_resolution",
    "rational_closure",
    "rational_isotypic_components",
    "reduced_basis",
    "render_svg",
    "sequence_limit",
    "short_vectors",
    "singular_locus",
    "special_basis",
    "teich_report",
    "torus",
    "verify_theorem_c",
]
