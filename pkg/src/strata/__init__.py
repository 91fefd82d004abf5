"""
Strata - decorated strata, tautological classes, substacks and the
normal-form basis.
"""

from src.strata.decoration import Decoration, DecoratedStratum, DecorationPolynomial
from src.strata.hilbert import hilbert_coefficients
from src.strata.normal_form import (
    NormalFormBasis,
    enumerate_normal_form_basis,
    is_normal_form,
    normal_form_decorations,
)
from src.strata.substacks import (
    AllGraphs,
    CustomList,
    MaxEdges,
    Oesinghaus,
    Semistable,
    StableOnly,
    SubstackSpec,
    check_contraction_closed,
    get_spec_registry,
    resolve_spec,
)
from src.strata.taut_class import (
    Ambient,
    TautClass,
    boundary_class,
    canonical_stratum,
    class_sum,
    decorated,
    graph_class,
    kappa_class,
    make_class,
    psi_class,
)

__all__ = [
    "Decoration",
    "DecoratedStratum",
    "DecorationPolynomial",
    "Ambient",
    "TautClass",
    "make_class",
    "class_sum",
    "canonical_stratum",
    "decorated",
    "psi_class",
    "kappa_class",
    "boundary_class",
    "graph_class",
    "SubstackSpec",
    "AllGraphs",
    "MaxEdges",
    "StableOnly",
    "Semistable",
    "Oesinghaus",
    "CustomList",
    "check_contraction_closed",
    "get_spec_registry",
    "resolve_spec",
    "NormalFormBasis",
    "enumerate_normal_form_basis",
    "is_normal_form",
    "normal_form_decorations",
    "hilbert_coefficients",
]
