"""Shared Pydantic base model configuration for file formats and reports."""

from pydantic import BaseModel, ConfigDict


class KCBaseModel(BaseModel):
    """Frozen base model; every boundary document of kctapes derives from it."""

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")
