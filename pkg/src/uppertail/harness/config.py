"""
Experiment configuration files.

A tail experiment is described by a JSON document mirroring
``TailExperimentConfig``; the pattern is either a path to a complex file
(resolved against the config file's directory) or an inline
``{"n": ..., "facets": [...]}`` object.
"""

import json
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from ..complexes import SimplicialComplex, from_facets, read_complex
from ..exceptions import InvalidParameters, MalformedComplex
from ..model import ModelParams, parse_real

SEED_MAX = 2**64 - 1

Number = Union[int, float, str]


class TailTarget(str, Enum):
    """Random quantity whose upper tail is estimated."""

    ORDERED_COUNT = "ordered-count"  # N_o(K, G)
    SIMPLEX_COUNT = "simplex-count"  # s_j(K), j = dim G
    BETTI = "betti"  # beta_{k*}(K)


class PatternSpec(BaseModel):
    """Inline complex given by its facets."""

    n: int = Field(..., ge=0, description="Number of vertices")
    facets: List[List[int]] = Field(default_factory=list, description="Maximal faces")

    def to_complex(self) -> SimplicialComplex:
        return from_facets(self.n, [tuple(f) for f in self.facets])


class TailExperimentConfig(BaseModel):
    """Monte Carlo estimate of P(X >= (1 + epsilon) * mean) for one target X."""

    n: int = Field(..., ge=1, description="Number of vertices of the random complex")
    k_max: int = Field(..., ge=1, description="Highest dimension generated")
    probs: Optional[List[Number]] = Field(None, description="p_1..p_kmax")
    alphas: Optional[List[Number]] = Field(None, description="alpha_1..alpha_kmax, p_i = n^-alpha_i")
    pattern: Union[str, PatternSpec] = Field(..., description="Complex file path or inline facets")
    epsilon: Number = Field(..., description="Relative excess over the mean, > 0")
    trials: int = Field(..., ge=1, description="Number of sampled complexes")
    seed: int = Field(default=0, ge=0, le=SEED_MAX, description="Master 64-bit seed")
    target: TailTarget = Field(default=TailTarget.ORDERED_COUNT)
    field_char: int = Field(default=2, ge=2, description="Coefficient field for the betti target")

    @field_validator("epsilon")
    @classmethod
    def _positive_epsilon(cls, value: Number) -> Number:
        try:
            parsed = parse_real(value)
        except InvalidParameters as e:
            raise ValueError(str(e)) from e
        if not parsed > 0:
            raise ValueError(f"epsilon must be > 0, got {value}")
        return value

    @model_validator(mode="after")
    def _one_parametrisation(self) -> "TailExperimentConfig":
        if (self.probs is None) == (self.alphas is None):
            raise ValueError("give exactly one of probs or alphas")
        return self

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "TailExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise InvalidParameters(f"cannot read experiment config {path}: {e}") from e
        return cls.model_validate(data)

    def epsilon_value(self) -> Fraction:
        value = parse_real(self.epsilon)
        return value if isinstance(value, Fraction) else Fraction(value)

    def model_params(self) -> ModelParams:
        if self.probs is not None:
            return ModelParams(n=self.n, k_max=self.k_max, probs=tuple(map(parse_real, self.probs)))
        assert self.alphas is not None
        return ModelParams(n=self.n, k_max=self.k_max, alphas=tuple(map(parse_real, self.alphas)))

    def load_pattern(self, base_dir: Optional[Union[str, Path]] = None) -> SimplicialComplex:
        if isinstance(self.pattern, PatternSpec):
            return self.pattern.to_complex()
        path = Path(self.pattern)
        if not path.is_absolute() and base_dir is not None:
            path = Path(base_dir) / path
        if not path.exists():
            raise MalformedComplex(f"pattern file not found: {path}")
        return read_complex(path)
