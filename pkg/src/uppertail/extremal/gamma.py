"""
The extremal parameter through its vertex-weight program.

``solve_gamma`` gives gamma(m_0, ..., m_k; G) with a dual certificate;
``n_hat_bounds`` turns it into the sandwich
(c^{s_0}/#Aut) e^gamma <= N <= s_0^{s_0} e^gamma; ``blowup_witness`` builds the
complex realising the lower side.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

from ..complexes import Face, SimplicialComplex, from_facets
from ..config import get_settings
from ..counting import is_subcomplex, pattern_stats
from ..exceptions import InvalidRange, InvalidSubcomplex, WitnessBoundViolated
from ..model import Real, parse_real
from .backends import LPBackend, create_lp_backend
from .logvalue import LogValue
from .program import LPInstance, LPSolution, Scalar, SolveMode, scalar_to_json

logger = logging.getLogger(__name__)


# Queries --------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalQuery:
    """Face budgets (m_0, ..., m_k) for a pattern G of dimension k.

    With ``exponent_base`` set, ``bounds`` holds exponents beta_i and
    m_i = base^{beta_i}. Rational bounds (or rational exponents) solve exactly;
    float bounds solve in floating point.
    """

    pattern: SimplicialComplex
    bounds: Tuple[Real, ...]
    exponent_base: Optional[int] = None

    def __post_init__(self) -> None:
        if self.pattern.dimension < 0:
            raise InvalidRange("the pattern must be non-empty")
        parsed = tuple(b if isinstance(b, float) else parse_real(b) for b in self.bounds)
        if len(parsed) != self.pattern.dimension + 1:
            raise InvalidRange(
                f"need {self.pattern.dimension + 1} bounds for a {self.pattern.dimension}-dimensional "
                f"pattern, got {len(parsed)}"
            )
        if self.exponent_base is not None and self.exponent_base < 1:
            raise InvalidRange(f"exponent base must be >= 1, got {self.exponent_base}")
        if self.exponent_base is None and any(b <= 0 for b in parsed):
            raise InvalidRange(f"bounds must be positive, got {parsed}")
        object.__setattr__(self, "bounds", parsed)

    @property
    def dimension(self) -> int:
        return self.pattern.dimension

    @property
    def exact(self) -> bool:
        return all(isinstance(b, Fraction) for b in self.bounds)

    def log_bound(self, i: int) -> Scalar:
        """ln m_i, exact when the bound is rational."""
        b = self.bounds[i]
        if self.exponent_base is not None:
            if isinstance(b, Fraction):
                return LogValue.power(self.exponent_base, b)
            return float(b) * math.log(self.exponent_base)
        return LogValue.log(b) if isinstance(b, Fraction) else math.log(b)

    def log_bounds(self) -> Tuple[Scalar, ...]:
        return tuple(self.log_bound(i) for i in range(len(self.bounds)))

    def bound_value(self, i: int) -> Real:
        """m_i itself; exact only when it is rational."""
        b = self.bounds[i]
        if self.exponent_base is None:
            return b
        if isinstance(b, Fraction) and b.denominator == 1:
            return Fraction(self.exponent_base) ** b.numerator
        return float(self.exponent_base) ** float(b)

    def admits_pattern(self) -> bool:
        """s_i(G) <= m_i for every i, decided exactly where possible."""
        counts = self.pattern.simplex_counts()
        for i in range(len(self.bounds)):
            cap = self.log_bound(i)
            need = LogValue.log(counts[i]) if isinstance(cap, LogValue) else math.log(counts[i])
            if need > cap:
                return False
        return True

    def instance(self) -> LPInstance:
        return LPInstance.build(self.pattern, self.log_bounds())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pattern": self.pattern.to_dict(),
            "bounds": [str(b) for b in self.bounds],
            "exponent_base": self.exponent_base,
        }


def solve_gamma(query: ExtremalQuery, backend: Optional[LPBackend] = None) -> LPSolution:
    """Optimal value gamma of the vertex-weight program with its dual certificate.

    Raises:
        InvalidRange: Some m_i < 1.
        NonconvergentFloat: The solver hit its iteration cap.
    """
    if any(b < 0 for b in query.log_bounds()):
        raise InvalidRange(f"every bound must be >= 1, got {query.bounds}")
    backend = backend or create_lp_backend()
    solution = backend.solve(query.instance())
    logger.debug(f"gamma={solution.gamma} for bounds {query.bounds} ({solution.mode.value})")
    return solution


# Duality --------------------------------------------------------------------


@dataclass(frozen=True)
class DualityReport:
    primal_feasible: bool
    dual_feasible: bool
    primal_value: Scalar
    dual_value: Scalar
    gap: float
    exact: bool

    @property
    def tight(self) -> bool:
        if self.exact:
            return isinstance(self.gap_exact, LogValue) and self.gap_exact.is_zero()
        tolerance = get_settings().lp_float_tolerance
        return abs(self.gap) <= tolerance * (1.0 + abs(float(self.primal_value)))

    @property
    def gap_exact(self) -> Optional[LogValue]:
        if isinstance(self.primal_value, LogValue) and isinstance(self.dual_value, LogValue):
            return self.primal_value - self.dual_value
        return None

    @property
    def ok(self) -> bool:
        return self.primal_feasible and self.dual_feasible and self.tight

    def to_dict(self) -> Dict[str, Any]:
        return {
            "primal_feasible": self.primal_feasible,
            "dual_feasible": self.dual_feasible,
            "primal_value": scalar_to_json(self.primal_value),
            "dual_value": scalar_to_json(self.dual_value),
            "gap": self.gap,
            "exact": self.exact,
            "tight": self.tight,
        }


def _le(lhs: Scalar, rhs: Scalar, tolerance: float) -> bool:
    if isinstance(lhs, LogValue) and isinstance(rhs, LogValue):
        return lhs <= rhs
    return float(lhs) <= float(rhs) + tolerance * (1.0 + abs(float(rhs)))


def verify_certificate(solution: LPSolution) -> DualityReport:
    """Check primal feasibility, dual feasibility and the duality gap of a solution."""
    instance = solution.instance
    tolerance = get_settings().lp_float_tolerance
    exact = solution.mode == SolveMode.EXACT
    weights = solution.weights
    zero: Scalar = LogValue.zero() if exact else 0.0

    primal_ok = all(_le(zero, x, tolerance) for x in solution.primal)
    for face, cap in zip(instance.rows, instance.rhs):
        load = sum((weights[v] for v in face), zero)
        primal_ok = primal_ok and _le(load, cap, tolerance)

    cover: Dict[int, Union[Fraction, float]] = {v: 0 for v in instance.vertices}
    dual_ok = True
    for face, d in zip(instance.rows, solution.dual):
        dual_ok = dual_ok and d >= (0 if exact else -tolerance)
        for v in face:
            cover[v] += d
    dual_ok = dual_ok and all(
        c >= 1 if exact else c >= 1 - tolerance for c in cover.values()
    )

    primal_value = sum(solution.primal, zero)
    if exact:
        dual_value: Scalar = sum(
            (Fraction(d) * cap for d, cap in zip(solution.dual, instance.rhs)), LogValue.zero()
        )
    else:
        dual_value = math.fsum(float(d) * float(cap) for d, cap in zip(solution.dual, instance.rhs))
    return DualityReport(
        primal_feasible=primal_ok,
        dual_feasible=dual_ok,
        primal_value=primal_value,
        dual_value=dual_value,
        gap=float(primal_value) - float(dual_value),
        exact=exact,
    )


@dataclass(frozen=True)
class DualPoint:
    """A feasible dual point (y_v, z_sigma)."""

    y: Dict[int, Fraction] = field(default_factory=dict)
    z: Dict[Face, Fraction] = field(default_factory=dict)

    def objective(self, log_bounds: Tuple[Scalar, ...]) -> Scalar:
        """sum_v y_v ln m_0 + sum_sigma z_sigma ln m_{dim sigma}; an upper bound on gamma."""
        total: Scalar = sum(self.y.values(), Fraction(0)) * log_bounds[0]
        for face, z in self.z.items():
            total = total + z * log_bounds[len(face) - 1]
        return total

    def is_feasible(self) -> bool:
        if any(y < 0 for y in self.y.values()) or any(z < 0 for z in self.z.values()):
            return False
        cover = dict(self.y)
        for face, z in self.z.items():
            for v in face:
                cover[v] = cover.get(v, Fraction(0)) + z
        return all(c >= 1 for c in cover.values())


def skeleton_dual_certificate(H: SimplicialComplex, k0: int) -> DualPoint:
    """y_v = 1 - s_{k0,v}/s_{k0}(H), z = 1/s_{k0}(H) on the k0-faces.

    Every dual constraint holds with equality, since each k0-face covers
    exactly k0+1 vertices.
    """
    faces = H.faces(k0)
    if k0 < 1 or not faces:
        raise InvalidSubcomplex(f"H has no faces of dimension {k0}")
    total = len(faces)
    z = {face: Fraction(1, total) for face in faces}
    y = {v: 1 - Fraction(H.vertex_degrees(v)[k0 - 1], total) for v in H.vertices}
    return DualPoint(y=y, z=z)


# Sandwich and witness ---------------------------------------------------------


class SandwichBounds(NamedTuple):
    lower: Real
    upper: Real


def _exp(value: Scalar) -> Real:
    if isinstance(value, LogValue):
        exact = value.exp()
        if exact is not None:
            return exact
    try:
        return math.exp(float(value))
    except OverflowError:
        return math.inf


def witness_constant(query: ExtremalQuery) -> Real:
    """A rational c meeting every per-dimension budget condition of the blow-up.

    For dimension j with floor(m_j) >= s_j(G) + 1 the condition is
    (1+c)^{j+1} - 1 <= t with t = 1/(s_j(s_j+1)). Since (1+c)^{j+1} <= e^{(j+1)c}
    and ln(1+t) >= t/(1+t), c = 1/((j+1)(s_j(s_j+1)+1)) satisfies it exactly.
    Otherwise every block must stay a single point, which c <= 1/m_j guarantees.
    """
    counts = query.pattern.simplex_counts()
    candidates: List[Real] = []
    for j in range(len(query.bounds)):
        s = counts[j]
        m = query.bound_value(j)
        if math.floor(m) >= s + 1:
            if j == 0:
                candidates.append(Fraction(1, s * (s + 1)))
            else:
                candidates.append(Fraction(1, (j + 1) * (s * (s + 1) + 1)))
        else:
            candidates.append(Fraction(1) / m if isinstance(m, (int, Fraction)) else 1.0 / m)
    return min(candidates)


def n_hat_bounds(query: ExtremalQuery, solution: Optional[LPSolution] = None) -> SandwichBounds:
    """(c^{s_0}/#Aut(G)) e^gamma and s_0^{s_0} e^gamma; (0, 0) when some s_i(G) > m_i."""
    if not query.admits_pattern():
        return SandwichBounds(Fraction(0), Fraction(0))
    solution = solution or solve_gamma(query)
    stats = pattern_stats(query.pattern)
    s0 = stats.s[0]
    e_gamma = _exp(solution.gamma)
    c = witness_constant(query)
    upper = s0**s0 * e_gamma
    lower = c**s0 / stats.aut * e_gamma
    return SandwichBounds(lower=lower, upper=upper)


def _block_size(c: Real, x: Scalar) -> int:
    if isinstance(c, Fraction) and isinstance(x, LogValue):
        e_x = x.exp()
        if e_x is not None:
            return max(1, math.ceil(c * e_x))
    y = float(c) * math.exp(float(x))
    return max(1, math.ceil(y - 1e-9 * max(1.0, y)))


def blowup_witness(G: SimplicialComplex, solution: LPSolution, c: Real) -> SimplicialComplex:
    """Replace each vertex v of G by ceil(c e^{x_v}) points; faces are transversals of G's faces.

    Raises:
        WitnessBoundViolated: Some s_j(F) exceeds m_j; ``dimension`` names the first such j.
    """
    instance = solution.instance
    if instance.pattern != G:
        raise InvalidSubcomplex("solution was computed for a different pattern")
    sizes = {v: _block_size(c, x) for v, x in solution.weights.items()}

    caps: Dict[int, Scalar] = {}
    for face, cap in zip(instance.rows, instance.rhs):
        caps.setdefault(len(face) - 1, cap)
    for j in range(G.dimension + 1):
        count = sum(math.prod(sizes[v] for v in face) for face in G.faces(j))
        cap = caps[j]
        need = LogValue.log(count) if isinstance(cap, LogValue) else math.log(count)
        if not _le(need, cap, 1e-12):
            raise WitnessBoundViolated(
                f"blow-up with c={c} has s_{j}(F)={count} above the budget e^{float(cap):.6g}",
                dimension=j,
            )

    offset = 0
    blocks: Dict[int, range] = {}
    for v in G.vertices:
        blocks[v] = range(offset, offset + sizes[v])
        offset += sizes[v]
    facets = [
        tuple(choice) for facet in G.facets() for choice in product(*(blocks[v] for v in facet))
    ]
    F = from_facets(offset, facets)
    logger.debug(f"Blow-up witness {F!r} from block sizes {sizes}")
    return F


# Comparison of thresholds -----------------------------------------------------


def compare_lemma_gap(
    G: SimplicialComplex,
    H: SimplicialComplex,
    m0: Real,
    m1: Real,
    m2: Real,
    backend: Optional[LPBackend] = None,
) -> Scalar:
    """gamma_2 - gamma_1 - ln(m2/m1)/(k+1), where gamma_j uses budgets (m0, m_j s_1(G), ..., m_j s_k(G)).

    Rational inputs give an exact result.

    Raises:
        InvalidSubcomplex: H is not a subcomplex of G or has no k-face.
        InvalidRange: 0 < m1 <= m2 <= m0^{k+1}/s_k(G) fails, or a budget drops below 1.
    """
    k = G.dimension
    if not is_subcomplex(H, G) or len(H.faces(k)) == 0:
        raise InvalidSubcomplex("H must be a subcomplex of G containing a top-dimensional face")
    m0, m1, m2 = (v if isinstance(v, float) else parse_real(v) for v in (m0, m1, m2))
    counts = G.simplex_counts()
    if not 0 < m1 <= m2 or m2 > m0 ** (k + 1) / counts[k]:
        raise InvalidRange(f"need 0 < m1 <= m2 <= m0^{k + 1}/s_k(G); got m1={m1}, m2={m2}, m0={m0}")

    gammas: List[Scalar] = []
    for m in (m1, m2):
        bounds = (m0, *(m * counts[i] for i in range(1, k + 1)))
        if any(b < 1 for b in bounds):
            raise InvalidRange(f"budgets {bounds} fall below 1")
        gammas.append(solve_gamma(ExtremalQuery(H, bounds), backend).gamma)

    ratio = m2 / m1
    if all(isinstance(g, LogValue) for g in gammas) and isinstance(ratio, Fraction):
        return gammas[1] - gammas[0] - LogValue.log(ratio) / (k + 1)
    return float(gammas[1]) - float(gammas[0]) - math.log(float(ratio)) / (k + 1)
