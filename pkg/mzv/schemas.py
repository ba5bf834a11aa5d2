from __future__ import annotations

import re
from enum import StrEnum
from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from mzv import settings
from mzv.checks import CheckName

_COEFF_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")

PositiveInt = Annotated[int, Field(ge=1)]
Letter = Annotated[int, Field(ge=0)]


def format_coefficient(value: Fraction) -> str:
    """Machine form of a rational: always "p/q" with q > 0."""
    return f"{value.numerator}/{value.denominator}"


class _Wire(BaseModel):
    model_config = ConfigDict(extra="forbid")


class _Term(_Wire):
    coeff: str

    @field_validator("coeff", mode="before")
    @classmethod
    def normalise_coefficient(cls, v: object) -> str:
        if isinstance(v, int) and not isinstance(v, bool):
            v = str(v)
        if not isinstance(v, str) or not (match := _COEFF_RE.match(v)):
            raise ValueError("coefficient must be a string 'p/q' or 'p'")
        numerator, denominator = match.group(1), match.group(2) or "1"
        if int(denominator) == 0:
            raise ValueError("coefficient denominator must be positive")
        value = Fraction(int(numerator), int(denominator))
        if value == 0:
            raise ValueError("canonical vectors carry no zero coefficients")
        return format_coefficient(value)

    @property
    def value(self) -> Fraction:
        return Fraction(self.coeff)


# ---------------------------------------------------------------------------
# Compositions and their tensors
# ---------------------------------------------------------------------------


class CompositionModel(_Wire):
    comp: list[PositiveInt]


class CompositionTerm(_Term):
    comp: list[PositiveInt]


class HVectorModel(_Wire):
    terms: list[CompositionTerm]


class CompositionPairTerm(_Term):
    left: list[PositiveInt]
    right: list[PositiveInt]


class HTensorModel(_Wire):
    terms: list[CompositionPairTerm]


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


class WordModel(_Wire):
    letters: list[Letter]


class WordTerm(_Term):
    letters: list[Letter]


class WordVectorModel(_Wire):
    terms: list[WordTerm]


# ---------------------------------------------------------------------------
# Chen fractions
# ---------------------------------------------------------------------------


class ChenFractionModel(_Wire):
    exponents: list[PositiveInt]
    variables: list[PositiveInt]

    @model_validator(mode="after")
    def validate_shape(self) -> ChenFractionModel:
        if len(self.exponents) != len(self.variables):
            raise ValueError("exponents and variables must have equal length")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variables must be distinct")
        return self


class FractionTerm(_Term):
    fraction: ChenFractionModel


class FracVectorModel(_Wire):
    terms: list[FractionTerm]


class FractionPairTerm(_Term):
    left: ChenFractionModel
    right: ChenFractionModel


class FracTensorModel(_Wire):
    terms: list[FractionPairTerm]


# ---------------------------------------------------------------------------
# Relations and reports
# ---------------------------------------------------------------------------


class GeneratorModel(_Wire):
    kind: str
    sources: list[list[PositiveInt]]
    value: HVectorModel


class CheckStatus(StrEnum):
    PASS = "pass"
    FAIL = "fail"


class CheckResult(BaseModel):
    check: CheckName
    weight: int
    status: CheckStatus
    counterexample: str | None = None


class VerificationReport(BaseModel):
    """Outcome of one or more verification suites, one record per (check, weight)."""

    results: list[CheckResult] = Field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(r.status == CheckStatus.PASS for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == CheckStatus.FAIL]

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(
            results=[*self.results, *other.results],
            seed=self.seed if self.seed is not None else other.seed,
        )


class RelationResidual(BaseModel):
    generator: str
    value: float
    tolerance: float
    status: CheckStatus


class NumericReport(BaseModel):
    residuals: list[RelationResidual] = Field(default_factory=list)
    max_abs: float = 0.0
    tolerance: float
    terms: int
    status: CheckStatus


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


class NumericMode(StrEnum):
    NESTED = "nested"
    FRACTIONS = "fractions"


class NumericConfig(BaseModel):
    terms: int = Field(default=settings.default_terms, ge=10)
    tolerance: float = Field(default=settings.default_tolerance, gt=0)
    mode: NumericMode = NumericMode.NESTED

    model_config = ConfigDict(frozen=True)


class OutputFormat(StrEnum):
    TEXT = "text"
    JSON = "json"
    LATEX = "latex"


class CommandConfig(BaseModel):
    """Options shared by every subcommand, resolved from flags and environment."""

    command: str
    format: OutputFormat = OutputFormat.TEXT
    max_weight: int | None = Field(default=None, ge=1)
    terms: int = Field(default=settings.default_terms, ge=10)
    tol: float = Field(default=settings.default_tolerance, gt=0)
    seed: int = settings.default_seed
    jobs: int = Field(default=settings.default_jobs, ge=1)
    mode: NumericMode = NumericMode.NESTED

    @property
    def numeric(self) -> NumericConfig:
        return NumericConfig(terms=self.terms, tolerance=self.tol, mode=self.mode)


# ---------------------------------------------------------------------------
# Command outputs
# ---------------------------------------------------------------------------


class ChenEvaluation(BaseModel):
    expression: str
    assignment: dict[int, str]
    value: str


class ZetaEvaluation(BaseModel):
    expression: str
    value: float
    terms: int
    mode: NumericMode


class RelationsOutput(BaseModel):
    generators: list[GeneratorModel]
    numeric: NumericReport | None = None
