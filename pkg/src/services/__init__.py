"""
Services package - computations shared by the CLI and the HTTP API.
"""

from src.services.hilbert_service import HilbertService
from src.services.pullback_service import PullbackService
from src.services.rank_service import RankService
from src.services.verification_service import VerificationService

__all__ = ["RankService", "HilbertService", "VerificationService", "PullbackService"]
