"""Edit distance functions of hereditary graph properties via colored regularity graphs."""

from .crg import (
    Crg,
    StructureReport,
    are_twins,
    canonical_form,
    components,
    detect_structures,
    enumerate_black_crgs,
    fuse_twins,
    gray_graph,
    has_gray_cycle_in_range,
    invert_colors,
    krs,
    make_crg,
    parse_crg,
    partition_vertex,
    sub_crg,
)
from .edf import (
    CurveRow,
    EdfCurve,
    MaxPoint,
    basic_checks,
    complete_bounds,
    cycle_closed_form,
    dist_exact,
    edf_curve,
    edf_upper,
    gamma,
    maximize,
    witness_tag,
)
from .embed import CliqueSpectrum, clique_spectrum, embeds, in_property
from .errors import CapExceededError, DomainError, ParseError, TrivialPropertyError
from .gfun import (
    GSolution,
    LocalDegreeReport,
    PCoreReport,
    clamp_p,
    f,
    g,
    g_all_gray,
    g_components,
    g_no_gray,
    is_p_core,
    local_degree_check,
    matrix,
    symmetrization_residual,
)
from .graphs import (
    SimpleGraph,
    chromatic_number,
    clique_cover_number,
    complement,
    has_induced,
    is_isomorphic,
    named_graph,
    parse_graph,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "CliqueSpectrum",
    "Crg",
    "CurveRow",
    "DomainError",
    "EdfCurve",
    "GSolution",
    "LocalDegreeReport",
    "MaxPoint",
    "ParseError",
    "PCoreReport",
    "SimpleGraph",
    "StructureReport",
    "TrivialPropertyError",
    "are_twins",
    "basic_checks",
    "canonical_form",
    "chromatic_number",
    "clamp_p",
    "clique_cover_number",
    "clique_spectrum",
    "complement",
    "complete_bounds",
    "components",
    "cycle_closed_form",
    "detect_structures",
    "dist_exact",
    "edf_curve",
    "edf_upper",
    "embeds",
    "enumerate_black_crgs",
    "f",
    "fuse_twins",
    "g",
    "g_all_gray",
    "g_components",
    "g_no_gray",
    "gamma",
    "gray_graph",
    "has_gray_cycle_in_range",
    "has_induced",
    "in_property",
    "invert_colors",
    "is_isomorphic",
    "is_p_core",
    "krs",
    "local_degree_check",
    "make_crg",
    "matrix",
    "maximize",
    "named_graph",
    "parse_crg",
    "parse_graph",
    "partition_vertex",
    "sub_crg",
    "symmetrization_residual",
    "witness_tag",
]
