"""Model parameters for the multi-parameter complex K(n; p_1, ..., p_k)."""

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple, Union

from ..exceptions import InvalidParameters

Real = Union[Fraction, float]

# Sentinel for alpha_i = infinity, i.e. p_i = 0.
ALPHA_INFINITY: float = math.inf


def parse_real(text: Union[str, int, float, Fraction]) -> Real:
    """Parse a decimal/fraction literal exactly; ``inf`` and ``∞`` give the sentinel."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return ALPHA_INFINITY if math.isinf(text) else Fraction(str(text))
    token = text.strip().lower()
    if token in {"inf", "+inf", "infinity", "∞"}:
        return ALPHA_INFINITY
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidParameters(f"cannot parse number {text!r}") from e


def parse_vector(text: str) -> Tuple[Real, ...]:
    """Parse a comma-separated list such as ``0.3,0,1/2``."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise InvalidParameters("empty parameter vector")
    return tuple(parse_real(p) for p in parts)


def is_infinite(value: Real) -> bool:
    return isinstance(value, float) and math.isinf(value)


def power_of_n(n: int, alpha: Real) -> Real:
    """n^{-alpha}, exact when alpha is an integer-valued fraction."""
    if is_infinite(alpha):
        return Fraction(0) if n >= 2 else Fraction(1)
    if isinstance(alpha, Fraction) and alpha.denominator == 1:
        return Fraction(1, n ** alpha.numerator) if alpha >= 0 else Fraction(n ** -alpha.numerator)
    return float(n) ** (-float(alpha))


@dataclass(frozen=True)
class ModelParams:
    """n plus either probabilities (p_1..p_kmax) or exponents (alpha_1..alpha_kmax).

    Vectors shorter than ``k_max`` are padded with the neutral entry
    (alpha = 0, p = 1); longer ones are cut at ``k_max``.
    """

    n: int
    k_max: int
    probs: Optional[Tuple[Real, ...]] = None
    alphas: Optional[Tuple[Real, ...]] = None
    _resolved: Tuple[Real, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidParameters(f"n must be non-negative, got {self.n}")
        if self.k_max < 1:
            raise InvalidParameters(f"k_max must be >= 1, got {self.k_max}")
        if (self.probs is None) == (self.alphas is None):
            raise InvalidParameters("give exactly one of probs or alphas")

        if self.probs is not None:
            probs = self._fit(self.probs, Fraction(1))
            for i, p in enumerate(probs, start=1):
                if not 0 <= p <= 1:
                    raise InvalidParameters(f"p_{i}={p} outside [0, 1]")
            object.__setattr__(self, "probs", probs)
            object.__setattr__(self, "_resolved", probs)
        else:
            assert self.alphas is not None
            alphas = self._fit(self.alphas, Fraction(0))
            for i, a in enumerate(alphas, start=1):
                if a < 0 or (isinstance(a, float) and math.isnan(a)):
                    raise InvalidParameters(f"alpha_{i}={a} must be >= 0")
            object.__setattr__(self, "alphas", alphas)
            object.__setattr__(
                self, "_resolved", tuple(power_of_n(self.n, a) for a in alphas)
            )

    def _fit(self, values: Iterable[Real], pad: Real) -> Tuple[Real, ...]:
        fitted = [parse_real(v) if not isinstance(v, float) else v for v in values]
        fitted = fitted[: self.k_max]
        fitted.extend([pad] * (self.k_max - len(fitted)))
        return tuple(fitted)

    # Accessors -------------------------------------------------------------

    @property
    def uses_exponents(self) -> bool:
        return self.alphas is not None

    def probability(self, i: int) -> Real:
        """p_i for 1 <= i; dimensions above k_max are never generated (p = 0)."""
        if i < 1:
            raise InvalidParameters(f"probabilities are indexed from 1, got {i}")
        if i > self.k_max:
            return Fraction(0)
        return self._resolved[i - 1]

    def probabilities(self) -> Tuple[Real, ...]:
        return self._resolved

    def exponent(self, i: int) -> Real:
        """alpha_i, derived as -log_n p_i when the model was given by probabilities."""
        if self.alphas is not None:
            return self.alphas[i - 1] if i <= self.k_max else ALPHA_INFINITY
        p = self.probability(i)
        if p == 0:
            return ALPHA_INFINITY
        if p == 1 or self.n <= 1:
            return Fraction(0)
        return -math.log(float(p)) / math.log(self.n)

    def exponents(self) -> Tuple[Real, ...]:
        return tuple(self.exponent(i) for i in range(1, self.k_max + 1))

    def with_n(self, n: int) -> "ModelParams":
        """Same exponents (or probabilities) at another vertex count."""
        return replace(self, n=n)

    def to_dict(self) -> Dict[str, Any]:
        def show(values: Optional[Sequence[Real]]) -> Optional[list]:
            if values is None:
                return None
            return ["inf" if is_infinite(v) else str(v) for v in values]

        return {
            "n": self.n,
            "k_max": self.k_max,
            "probs": show(self.probs),
            "alphas": show(self.alphas),
        }
