"""
Command schemas.

Validated configuration for one CLI invocation.
"""

import re
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator, validator

from src.core import ChowException
from src.strata.substacks import resolve_spec

PAIR_PATTERN = re.compile(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)")


class Subcommand(str, Enum):
    """CLI subcommands."""

    RANKS = "ranks"
    HILBERT = "hilbert"
    VERIFY = "verify"
    PULLBACK_RANKS = "pullback-ranks"


class OutputFormat(str, Enum):
    """Output encodings."""

    JSON = "json"
    CSV = "csv"
    TEXT = "text"


def parse_pairs(text: str) -> List[Tuple[int, int]]:
    """
    Parse "(n,d),(n,d),..." into integer pairs.

    Raises:
        ValueError: If the text has anything besides pairs and separators.
    """
    pairs = [(int(a), int(b)) for a, b in PAIR_PATTERN.findall(text)]
    rest = PAIR_PATTERN.sub("", text).replace(",", "").strip()
    if rest or not pairs:
        raise ValueError(f"cannot parse pairs from '{text}'")
    return pairs


class CommandConfig(BaseModel):
    """Configuration of one CLI invocation."""

    subcommand: Subcommand
    n_min: int = Field(default=0, ge=0)
    n_max: int = Field(default=4, ge=0)
    d_min: int = Field(default=0, ge=0)
    d_max: int = Field(default=3, ge=0)
    n: int = Field(default=0, ge=0, description="Markings for hilbert")
    spec: str = Field(default="all", description="Substack spec, e.g. max-edges:3")
    pairs: List[Tuple[int, int]] = Field(default_factory=list)
    m_max: int = Field(default=6, ge=0)
    only: Optional[List[str]] = None
    format: OutputFormat = OutputFormat.TEXT
    threads: Optional[int] = Field(default=None, ge=1)
    out: Optional[str] = None

    @validator("spec")
    def validate_spec(cls, v):
        """Reject spec names that do not resolve."""
        try:
            resolve_spec(v)
        except ChowException as e:
            raise ValueError(str(e))
        return v.strip()

    @validator("pairs", pre=True)
    def validate_pairs(cls, v):
        """Accept the "(n,d),..." string form."""
        if isinstance(v, str):
            return parse_pairs(v)
        return v

    @model_validator(mode="after")
    def validate_ranges(self) -> "CommandConfig":
        if self.n_min > self.n_max:
            raise ValueError(f"empty n range {self.n_min}..{self.n_max}")
        if self.d_min > self.d_max:
            raise ValueError(f"empty degree range {self.d_min}..{self.d_max}")
        if self.subcommand == Subcommand.PULLBACK_RANKS:
            if not self.pairs:
                raise ValueError("pullback-ranks needs at least one (n,d) pair")
            for n, _ in self.pairs:
                if n + self.m_max < 3:
                    raise ValueError(f"n + m must reach 3 for n={n} with m_max={self.m_max}")
        return self
