"""
API request schemas.

Defines Pydantic models for incoming API requests.
"""

from typing import List, Optional

from pydantic import BaseModel, Field, validator


class VerifyRequest(BaseModel):
    """Request to run identity checks."""

    only: Optional[List[str]] = Field(default=None, description="Check names to run; all when omitted")

    @validator("only")
    def validate_only(cls, v):
        """Strip names and reject blanks."""
        if v is None:
            return v
        names = [name.strip() for name in v]
        if any(not name for name in names):
            raise ValueError("Check names cannot be empty")
        return names
