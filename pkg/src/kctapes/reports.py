"""Report models shared by every checker: verdict, witness and seed."""

from typing import Any, Literal

from pydantic import Field, model_validator

from kctapes.base_model import KCBaseModel

Verdict = Literal["holds", "fails"]


class Witness(KCBaseModel):
    """Evidence that a check fails: the offending law and element pair."""

    law: str
    source: str | None = None
    target: str | None = None
    bindings: dict[str, str] = Field(default_factory=dict)


class CheckReport(KCBaseModel):
    """
    Outcome of a semantic check. A failing verdict always carries a witness and a
    holding verdict never does.
    """

    verdict: Verdict
    witness: Witness | None = None
    seed: int | None = None
    detail: str | None = None

    @model_validator(mode="after")
    def _witness_iff_fails(self) -> "CheckReport":
        """Reject reports whose witness disagrees with the verdict."""
        if (self.verdict == "fails") != (self.witness is not None):
            raise ValueError("a witness is present exactly when the verdict is 'fails'")
        return self

    @property
    def holds(self) -> bool:
        """Return whether the check holds."""
        return self.verdict == "holds"

    @classmethod
    def passed(cls, **kwargs: Any) -> "CheckReport":
        """Build a holding report."""
        return cls(verdict="holds", **kwargs)

    @classmethod
    def failed(cls, witness: Witness, **kwargs: Any) -> "CheckReport":
        """Build a failing report."""
        return cls(verdict="fails", witness=witness, **kwargs)


class RuleReport(CheckReport):
    """Outcome of a Hoare rule instance: soundness plus premise validity."""

    rule: str
    premises_valid: bool
    conclusion_valid: bool
    failing_premise: int | None = None


class SuiteReport(KCBaseModel):
    """Outcome of an acceptance suite: one entry per law checked."""

    suite: str
    seed: int
    checked: int
    laws: list[str] = Field(default_factory=list)
    failures: list[Witness] = Field(default_factory=list)

    @property
    def holds(self) -> bool:
        """Return whether every law held."""
        return not self.failures


class TypeReport(KCBaseModel):
    """The inferred type of a term."""

    dom: str
    cod: str


class RelationReport(KCBaseModel):
    """An evaluated relation with its pairs rendered as elements."""

    dom: str
    cod: str
    pairs: list[tuple[str, str]] = Field(default_factory=list)
    relation: str


class TermReport(KCBaseModel):
    """A term produced by an encoding, as an S-expression dump."""

    term: str
    dom: str
    cod: str
