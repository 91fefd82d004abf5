"""
API response schemas.

Defines Pydantic models for API responses.
"""

from typing import List

from pydantic import BaseModel, Field


class RankResponse(BaseModel):
    """Rank of one Chow group."""

    n: int = Field(..., ge=0, description="Number of markings")
    d: int = Field(..., ge=0, description="Codimension")
    spec: str = Field(..., description="Substack spec name")
    rank: int = Field(..., ge=0, description="Rank of CH^d")


class HilbertResponse(BaseModel):
    """Hilbert coefficients of an open substack."""

    n: int = Field(..., ge=0, description="Number of markings")
    spec: str = Field(..., description="Substack spec name")
    coefficients: List[int] = Field(..., description="h_0, ..., h_D")


class PullbackRankResponse(BaseModel):
    """Rank of a forgetful-chart pullback image."""

    n: int = Field(..., ge=0, description="Number of markings")
    d: int = Field(..., ge=0, description="Codimension")
    m: int = Field(..., ge=0, description="Number of added markings")
    rank: int = Field(..., ge=0, description="Rank of the image")
    chow_rank: int = Field(..., ge=0, description="Rank of CH^d on the prestable stack")
    exact: bool = Field(..., description="Whether the image rank reaches chow_rank")


class CheckResultResponse(BaseModel):
    """Outcome of one identity check."""

    name: str
    passed: bool
    cases: int = Field(..., ge=0)
    failures: List[str] = Field(default_factory=list)
    elapsed: float = Field(..., ge=0)


class VerifyResponse(BaseModel):
    """Outcome of a verification run."""

    passed: bool = Field(..., description="True when every selected check passed")
    results: List[CheckResultResponse] = Field(..., description="Per-check results")

