"""
Schemas package - request, response and command models.
"""

from src.schemas.command import CommandConfig, OutputFormat, Subcommand, parse_pairs
from src.schemas.requests import VerifyRequest
from src.schemas.responses import (
    CheckResultResponse,
    HilbertResponse,
    PullbackRankResponse,
    RankResponse,
    VerifyResponse,
)

__all__ = [
    "CommandConfig",
    "OutputFormat",
    "Subcommand",
    "parse_pairs",
    "VerifyRequest",
    "RankResponse",
    "HilbertResponse",
    "PullbackRankResponse",
    "CheckResultResponse",
    "VerifyResponse",
]
