"""
Pydantic models for the pfg file formats and reports.
"""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import (
    DEFAULT_CAMPAIGN_GROUPS,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    MAX_THREAD_WORKERS,
)


def _degree_strings(value: Any) -> Any:
    # JSON integers 0 and 1 are accepted and kept as strings; floats are not
    if isinstance(value, list):
        return [_degree_strings(v) for v in value]
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return value


class GroupFile(BaseModel):
    """Group file: a Cayley table; identity and inverses are derived at load."""

    model_config = ConfigDict(extra="forbid")

    order: int = Field(ge=1)
    table: list[list[int]]
    name: str = "G"

    @model_validator(mode="after")
    def _square_table(self) -> "GroupFile":
        if len(self.table) != self.order or any(len(row) != self.order for row in self.table):
            raise ValueError(f"table must be {self.order}x{self.order}")
        return self


class PfsFile(BaseModel):
    """PFS file: a carrier reference (registry name, path or inline group) and triples."""

    model_config = ConfigDict(extra="forbid")

    carrier: str | GroupFile
    triples: list[list[str]]

    @field_validator("triples", mode="before")
    @classmethod
    def _stringify(cls, value: Any) -> Any:
        return _degree_strings(value)


class MapFile(BaseModel):
    """Map file between two carriers; ``homomorphism=False`` admits set maps."""

    model_config = ConfigDict(extra="forbid")

    source: str | GroupFile
    target: str | GroupFile
    map: list[int]
    homomorphism: bool = True


class CampaignConfig(BaseModel):
    """
    Settings for a verification campaign.

    Attributes:
        groups (list[str]): Registry names or group-file paths to sample on.
        trials (int): Instances per theorem.
        seed (int): Master seed; every instance derives its own seed from it.
        theorems (list[str] | None): Theorem tags to run; None runs all.
        strict (bool): Check the literal statements instead of the corrected ones.
        max_order (int | None): Subgroup enumeration cap override.
        workers (int): Thread pool size.
    """

    groups: list[str] = Field(default_factory=lambda: list(DEFAULT_CAMPAIGN_GROUPS))
    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    seed: int = DEFAULT_SEED
    theorems: list[str] | None = None
    strict: bool = False
    max_order: int | None = Field(default=None, ge=1)
    workers: int = Field(default=MAX_THREAD_WORKERS, ge=1)


class VerificationReport(BaseModel):
    """
    Outcome of checking one theorem over one or more instances.

    ``passed`` is true exactly when ``counterexample`` is None. Instances whose
    hypothesis failed are counted in ``vacuous`` and never in ``substantive``.
    For iff theorems ``lhs_true``/``lhs_false`` count the polarity of the
    left-hand side.
    """

    theorem_id: str
    passed: bool
    instances_checked: int = Field(ge=1)
    substantive: int = 0
    vacuous: int = 0
    lhs_true: int = 0
    lhs_false: int = 0
    strict: bool = False
    low_coverage: bool = False
    details: dict[str, Any] = Field(default_factory=dict)
    counterexample: dict[str, Any] | None = None
    elapsed: float | None = None

    @model_validator(mode="after")
    def _verdict_matches_counterexample(self) -> "VerificationReport":
        if self.passed != (self.counterexample is None):
            raise ValueError("passed must be true exactly when there is no counterexample")
        return self
