"""
Verify routes - Endpoint running the identity checks.
"""

from typing import Any, Dict

from fastapi import APIRouter, Depends, HTTPException

from src.core import ChowException, RegistryException
from src.schemas import VerifyRequest, VerifyResponse
from src.services import VerificationService

router = APIRouter()


def get_verification_service() -> VerificationService:
    """Get verification service instance."""
    return VerificationService()


@router.get("/checks")
def list_checks(
    verification_service: VerificationService = Depends(get_verification_service),
) -> Dict[str, str]:
    """Registered check names and descriptions."""
    return verification_service.list_checks()


@router.post("/verify", response_model=VerifyResponse)
def verify(
    request: VerifyRequest,
    verification_service: VerificationService = Depends(get_verification_service),
) -> Dict[str, Any]:
    """
    Run the selected identity checks.

    Args:
        request: Names to run; all checks when omitted.
        verification_service: Verification service instance.

    Returns:
        Overall status and per-check results.
    """
    try:
        results = verification_service.run(request.only)
        return verification_service.summary(results)
    except RegistryException as e:
        raise HTTPException(status_code=404, detail=str(e))
    except ChowException as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Internal server error: {str(e)}")
