"""
Rank routes - Endpoints for Chow ranks, Hilbert coefficients and pullback images.
"""

from typing import Any, Dict, List

from fastapi import APIRouter, Depends, HTTPException, Query

from src.core import ChowException
from src.schemas import HilbertResponse, PullbackRankResponse, RankResponse
from src.services import HilbertService, PullbackService, RankService

router = APIRouter()


def get_rank_service() -> RankService:
    """Get rank service instance."""
    return RankService(threads=1)


def get_hilbert_service() -> HilbertService:
    """Get hilbert service instance."""
    return HilbertService()


def get_pullback_service() -> PullbackService:
    """Get pullback service instance."""
    return PullbackService(threads=1)


@router.get("/ranks", response_model=RankResponse)
def get_rank(
    n: int = Query(..., ge=0),
    d: int = Query(..., ge=0),
    spec: str = Query("all"),
    rank_service: RankService = Depends(get_rank_service),
) -> Dict[str, Any]:
    """
    Rank of CH^d of the named open substack with n markings.

    Returns:
        The rank with its parameters.
    """
    try:
        return {"n": n, "d": d, "spec": spec, "rank": rank_service.rank(n, d, spec)}
    except ChowException as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")


@router.get("/specs")
def list_specs(
    hilbert_service: HilbertService = Depends(get_hilbert_service),
) -> List[str]:
    """Names accepted by the spec parameter (max-edges takes an argument, as in max-edges:2)."""
    return hilbert_service.available_specs()


@router.get("/hilbert", response_model=HilbertResponse)
def get_hilbert(
    n: int = Query(..., ge=0),
    spec: str = Query("all"),
    d_max: int = Query(8, ge=0),
    hilbert_service: HilbertService = Depends(get_hilbert_service),
) -> Dict[str, Any]:
    """Hilbert coefficients h_0..h_{d_max} of the named substack."""
    try:
        return hilbert_service.series(n, spec, d_max)
    except ChowException as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")


@router.get("/pullback-rank", response_model=PullbackRankResponse)
def get_pullback_rank(
    n: int = Query(..., ge=0),
    d: int = Query(..., ge=0),
    m: int = Query(..., ge=0),
    pullback_service: PullbackService = Depends(get_pullback_service),
    rank_service: RankService = Depends(get_rank_service),
) -> Dict[str, Any]:
    """
    Rank of F_m^*(CH^d) together with the prestable rank it bounds.
    """
    try:
        value = pullback_service.image_rank(n, d, m)
        total = rank_service.rank(n, d)
        return {"n": n, "d": d, "m": m, "rank": value, "chow_rank": total, "exact": value == total}
    except ChowException as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")
