"""
Stable - comparison with the Chow ring of the stable moduli space.
"""

from src.stable.compare import (
    forgetful_chart_pullback,
    image_rank,
    is_stable_zero,
    pullback_rank_csv,
    pullback_rank_table,
    restrict_to_stable,
    stable_basis,
    stable_chow_rank,
    stable_coordinates,
    stable_forgetful_pullback,
    stable_wdvv_relations,
)

__all__ = [
    "stable_basis",
    "stable_coordinates",
    "stable_wdvv_relations",
    "stable_chow_rank",
    "restrict_to_stable",
    "forgetful_chart_pullback",
    "stable_forgetful_pullback",
    "is_stable_zero",
    "image_rank",
    "pullback_rank_table",
    "pullback_rank_csv",
]
