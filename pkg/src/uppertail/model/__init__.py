"""The multi-parameter random complex: parameters, sampling and critical-dimension analysis."""

from .critical import (
    CriticalProfile,
    critical_profile,
    first_positive_index,
    is_subcritical,
    level_sum,
    regime_verified,
    satisfies_new_cond,
    satisfies_new_cond2,
    tau,
)
from .faces import face_presence_probability, free_simplex_probability, mean_face_count
from .params import (
    ALPHA_INFINITY,
    ModelParams,
    Real,
    is_infinite,
    parse_real,
    parse_vector,
    power_of_n,
)
from .sampler import colex_rank, face_uniforms, sample

__all__ = [
    "ALPHA_INFINITY",
    "CriticalProfile",
    "ModelParams",
    "Real",
    "colex_rank",
    "critical_profile",
    "face_presence_probability",
    "face_uniforms",
    "first_positive_index",
    "free_simplex_probability",
    "is_infinite",
    "is_subcritical",
    "level_sum",
    "mean_face_count",
    "parse_real",
    "parse_vector",
    "power_of_n",
    "regime_verified",
    "sample",
    "satisfies_new_cond",
    "satisfies_new_cond2",
    "tau",
]
