"""
Calculus - products, gluing, forgetful maps, stabilization and normalization.
"""

from src.calculus.forgetful import (
    forgetful_pullback,
    forgetful_pushforward,
    restrict_to_open,
    section_class,
    smooth_forgetful_pullback,
)
from src.calculus.gluing import default_matching, glue_strata, gluing_pushforward
from src.calculus.product import excess_class, power, product, product_all, stratum_product, transport_decoration
from src.calculus.rewriting import (
    distribute_kappa,
    kappa_to_preferred,
    normalize,
    psi_to_boundary,
    reduce_class,
    symmetrized_psi,
    vertex_rewrite,
)
from src.calculus.stabilization import (
    StabilizationSeries,
    chain_graph,
    stabilization_kappa_series,
    stabilization_pullback,
    stabilization_pullback_kappa,
    stabilization_pullback_psi,
)
from src.calculus.structures import GenericStructure, generic_structures

__all__ = [
    "default_matching",
    "glue_strata",
    "gluing_pushforward",
    "GenericStructure",
    "generic_structures",
    "transport_decoration",
    "excess_class",
    "stratum_product",
    "product",
    "power",
    "product_all",
    "section_class",
    "forgetful_pullback",
    "restrict_to_open",
    "smooth_forgetful_pullback",
    "forgetful_pushforward",
    "distribute_kappa",
    "vertex_rewrite",
    "normalize",
    "reduce_class",
    "symmetrized_psi",
    "psi_to_boundary",
    "kappa_to_preferred",
    "StabilizationSeries",
    "chain_graph",
    "stabilization_kappa_series",
    "stabilization_pullback",
    "stabilization_pullback_kappa",
    "stabilization_pullback_psi",
]
