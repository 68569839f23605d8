"""Tunable parameters of the search and law harnesses."""

from pydantic import Field

from kctapes.base_model import KCBaseModel

DEFAULT_SEED = 2024


class SearchOptions(KCBaseModel):
    """Bounds for countermodel search."""

    max_size: int = Field(default=2, ge=1)
    budget: int = Field(default=100_000, ge=1)
    seed: int = DEFAULT_SEED
    restricted: bool = False


class LawOptions(KCBaseModel):
    """Sampling parameters for the acceptance suites."""

    samples: int = Field(default=500, ge=1)
    seed: int = DEFAULT_SEED
    max_size: int = Field(default=3, ge=1)
