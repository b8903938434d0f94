"""
The vertex-weight program of a pattern G and its solutions.

    maximise   sum_v x_v
    subject to sum_{v in sigma} x_v <= ln m_i   for every i-face sigma of G (i = 0..k)
               x >= 0

Its dual minimises sum_v y_v ln m_0 + sum_sigma z_sigma ln m_{dim sigma} subject to
y_v + sum_{sigma ∋ v} z_sigma >= 1 with y, z >= 0. Right-hand sides are exact
:class:`LogValue` objects or plain floats; the constraint matrix is 0/1.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Tuple, Union

from ..complexes import Face, SimplicialComplex
from .logvalue import LogValue

Scalar = Union[LogValue, float]


class SolveMode(str, Enum):
    EXACT = "exact"
    FLOAT = "float"


def scalar_to_json(value: Scalar) -> Dict[str, Any]:
    if isinstance(value, LogValue):
        return {"value": float(value), "exact": str(value)}
    return {"value": float(value)}


@dataclass(frozen=True)
class LPInstance:
    """One row per face of G; vertex rows come first, in ``G.vertices`` order."""

    pattern: SimplicialComplex
    vertices: Tuple[int, ...]
    rows: Tuple[Face, ...]
    rhs: Tuple[Scalar, ...]
    mode: SolveMode

    @classmethod
    def build(cls, pattern: SimplicialComplex, log_bounds: Tuple[Scalar, ...]) -> "LPInstance":
        rows: List[Face] = []
        rhs: List[Scalar] = []
        for i in range(pattern.dimension + 1):
            for face in pattern.faces(i):
                rows.append(face)
                rhs.append(log_bounds[i])
        exact = all(isinstance(b, LogValue) for b in log_bounds)
        return cls(
            pattern=pattern,
            vertices=pattern.vertices,
            rows=tuple(rows),
            rhs=tuple(rhs),
            mode=SolveMode.EXACT if exact else SolveMode.FLOAT,
        )

    @property
    def column_of(self) -> Dict[int, int]:
        return {v: j for j, v in enumerate(self.vertices)}

    def incidence(self) -> List[List[Fraction]]:
        """Row-major 0/1 constraint matrix."""
        col = self.column_of
        matrix = [[Fraction(0)] * len(self.vertices) for _ in self.rows]
        for r, face in enumerate(self.rows):
            for v in face:
                matrix[r][col[v]] = Fraction(1)
        return matrix


@dataclass(frozen=True)
class LPSolution:
    """Optimal primal point, dual certificate and value gamma."""

    gamma: Scalar
    primal: Tuple[Scalar, ...]
    dual: Tuple[Union[Fraction, float], ...]
    instance: LPInstance
    backend: str
    mode: SolveMode
    iterations: int = 0

    @property
    def dual_vertex(self) -> Dict[int, Union[Fraction, float]]:
        """y_v for the vertex rows."""
        return {face[0]: y for face, y in zip(self.instance.rows, self.dual) if len(face) == 1}

    @property
    def dual_face(self) -> Dict[Face, Union[Fraction, float]]:
        """z_sigma for the positive-dimensional rows."""
        return {face: z for face, z in zip(self.instance.rows, self.dual) if len(face) > 1}

    @property
    def weights(self) -> Dict[int, Scalar]:
        return dict(zip(self.instance.vertices, self.primal))

    def gamma_float(self) -> float:
        return float(self.gamma)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": scalar_to_json(self.gamma),
            "mode": self.mode.value,
            "backend": self.backend,
            "iterations": self.iterations,
            "primal": {str(v): scalar_to_json(x) for v, x in self.weights.items()},
            "dual": {
                "y": {str(v): str(y) for v, y in self.dual_vertex.items()},
                "z": {",".join(map(str, f)): str(z) for f, z in self.dual_face.items()},
            },
        }
