"""
Exact logarithms of rational power products.

A :class:`LogValue` stands for ``sum_i e_i * ln(a_i)`` with positive rational
atoms ``a_i`` and rational exponents ``e_i``. Sums, differences and rational
multiples stay in this form, and the sign of any value is decided exactly by
comparing ``prod a_i^{D e_i}`` against 1 as big integers, where D clears the
exponent denominators. The float approximation settles every comparison whose
magnitude is clearly away from zero.
"""

import math
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, Optional, Tuple, Union

Rational = Union[int, Fraction]

# Floats decide the sign when |approx| exceeds this share of the total magnitude.
_FLOAT_MARGIN = 1e-9


def _log_fraction(a: Fraction) -> float:
    return math.log(a.numerator) - math.log(a.denominator)


class LogValue:
    """Exact ``ln(prod a_i^{e_i})``; immutable, compared by value."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[Fraction, Fraction]] = None):
        clean: Dict[Fraction, Fraction] = {}
        for atom, exponent in (terms or {}).items():
            atom, exponent = Fraction(atom), Fraction(exponent)
            if atom <= 0:
                raise ValueError(f"logarithm of non-positive number {atom}")
            if atom == 1 or exponent == 0:
                continue
            total = clean.get(atom, Fraction(0)) + exponent
            if total:
                clean[atom] = total
            else:
                clean.pop(atom, None)
        self._terms: Tuple[Tuple[Fraction, Fraction], ...] = tuple(sorted(clean.items()))

    # Constructors ----------------------------------------------------------

    @classmethod
    def zero(cls) -> "LogValue":
        return cls()

    @classmethod
    def log(cls, a: Rational) -> "LogValue":
        """ln(a) for a positive rational a."""
        return cls({Fraction(a): Fraction(1)})

    @classmethod
    def power(cls, base: Rational, exponent: Rational) -> "LogValue":
        """ln(base^exponent) = exponent * ln(base)."""
        return cls({Fraction(base): Fraction(exponent)})

    # Arithmetic ------------------------------------------------------------

    @property
    def terms(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        return self._terms

    def _combine(self, other: "LogValue", sign: int) -> "LogValue":
        merged: Dict[Fraction, Fraction] = dict(self._terms)
        for atom, exponent in other._terms:
            merged[atom] = merged.get(atom, Fraction(0)) + sign * exponent
        return LogValue(merged)

    @staticmethod
    def _coerce(other: object) -> Optional["LogValue"]:
        if isinstance(other, LogValue):
            return other
        if isinstance(other, (int, Fraction)) and other == 0:
            return LogValue()
        return None

    def __add__(self, other: object) -> "LogValue":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._combine(rhs, 1)

    __radd__ = __add__

    def __sub__(self, other: object) -> "LogValue":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._combine(rhs, -1)

    def __rsub__(self, other: object) -> "LogValue":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs._combine(self, -1)

    def __neg__(self) -> "LogValue":
        return LogValue({a: -e for a, e in self._terms})

    def __mul__(self, factor: object) -> "LogValue":
        if not isinstance(factor, (int, Fraction)):
            return NotImplemented
        return LogValue({a: e * factor for a, e in self._terms})

    __rmul__ = __mul__

    def __truediv__(self, divisor: object) -> "LogValue":
        if not isinstance(divisor, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(divisor))

    # Sign and ordering -----------------------------------------------------

    def __float__(self) -> float:
        return math.fsum(float(e) * _log_fraction(a) for a, e in self._terms)

    def _magnitude(self) -> float:
        return math.fsum(abs(float(e) * _log_fraction(a)) for a, e in self._terms)

    def sign(self) -> int:
        """-1, 0 or 1, decided exactly."""
        if not self._terms:
            return 0
        approx = float(self)
        if abs(approx) > _FLOAT_MARGIN * (1.0 + self._magnitude()):
            return 1 if approx > 0 else -1
        scale = reduce(math.lcm, (e.denominator for _, e in self._terms), 1)
        top, bottom = 1, 1
        for atom, exponent in self._terms:
            power = int(exponent * scale)
            if power > 0:
                top *= atom.numerator**power
                bottom *= atom.denominator**power
            else:
                top *= atom.denominator ** (-power)
                bottom *= atom.numerator ** (-power)
        return (top > bottom) - (top < bottom)

    def _compare(self, other: object) -> Optional[int]:
        rhs = self._coerce(other)
        if rhs is None:
            return None
        return (self - rhs).sign()

    def __eq__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result == 0

    def __lt__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result < 0

    def __le__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result <= 0

    def __gt__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result > 0

    def __ge__(self, other: object) -> bool:
        result = self._compare(other)
        return NotImplemented if result is None else result >= 0

    def is_zero(self) -> bool:
        return self.sign() == 0

    # Conversions -----------------------------------------------------------

    def exp(self) -> Optional[Fraction]:
        """The rational ``prod a_i^{e_i}`` when every exponent is an integer, else None."""
        if any(e.denominator != 1 for _, e in self._terms):
            return None
        out = Fraction(1)
        for atom, exponent in self._terms:
            out *= atom ** int(exponent)
        return out

    def __repr__(self) -> str:
        return f"LogValue({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for atom, exponent in self._terms:
            parts.append(f"ln({atom})" if exponent == 1 else f"{exponent}*ln({atom})")
        return " + ".join(parts)


def log_sum(values: Iterable[LogValue]) -> LogValue:
    return sum(values, LogValue())
