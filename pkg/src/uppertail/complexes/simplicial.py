"""
Immutable abstract simplicial complexes.

Faces are ascending vertex tuples, stored per dimension in lexicographic
order, so two complexes with the same faces compare and hash equal no matter
how they were built.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..exceptions import InvalidVertex, MalformedComplex, MalformedFacet

Face = Tuple[int, ...]


@dataclass(frozen=True)
class SimplexCountVector:
    """Face counts (s_0, s_1, ..., s_dim)."""

    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts):
            raise MalformedComplex(f"negative face count in {self.counts}")
        if self.counts:
            s0 = self.counts[0]
            for i, c in enumerate(self.counts):
                if c > comb(s0, i + 1):
                    raise MalformedComplex(f"s_{i}={c} exceeds C({s0},{i + 1})")

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def get(self, i: int) -> int:
        """s_i, with 0 for dimensions the complex does not reach."""
        if 0 <= i < len(self.counts):
            return self.counts[i]
        return 0

    @property
    def dimension(self) -> int:
        return len(self.counts) - 1

    def truncated(self, i: int) -> "SimplexCountVector":
        return SimplexCountVector(self.counts[: i + 1])

    def to_list(self) -> List[int]:
        return list(self.counts)


class SimplicialComplex:
    """A downward-closed family of faces on the labels ``0..vertex_count-1``.

    Instances are immutable and safe to share between threads and processes.
    Use :func:`from_facets` to build one from maximal faces; the constructor
    itself expects the full face family and validates it.
    """

    __slots__ = ("_n", "_faces", "_lookup", "_degrees")

    def __init__(self, vertex_count: int, faces_by_dim: Sequence[Iterable[Face]]):
        if vertex_count < 0:
            raise MalformedComplex(f"vertex_count must be non-negative, got {vertex_count}")
        self._n = vertex_count

        levels: List[Tuple[Face, ...]] = []
        for i, level in enumerate(faces_by_dim):
            canon = sorted({self._canonical(face, i) for face in level})
            levels.append(tuple(canon))
        while levels and not levels[-1]:
            levels.pop()
        self._faces: Tuple[Tuple[Face, ...], ...] = tuple(levels)
        self._lookup = frozenset(f for level in self._faces for f in level)
        self._degrees: Optional[Dict[int, Tuple[int, ...]]] = None
        self._check_closure()

    def _canonical(self, face: Iterable[int], dim: int) -> Face:
        labels = tuple(face)
        if len(labels) != dim + 1:
            raise MalformedComplex(f"face {labels} stored at dimension {dim}")
        if len(set(labels)) != len(labels):
            raise MalformedFacet(f"face {labels} repeats a vertex")
        for v in labels:
            if not 0 <= v < self._n:
                raise InvalidVertex(f"vertex {v} outside 0..{self._n - 1}")
        return tuple(sorted(labels))

    def _check_closure(self) -> None:
        for level in self._faces[1:]:
            for face in level:
                for sub in combinations(face, len(face) - 1):
                    if sub not in self._lookup:
                        raise MalformedComplex(f"face {face} is missing boundary face {sub}")

    # Basic accessors -------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def dimension(self) -> int:
        """Largest i with F_i nonempty; -1 for the empty complex."""
        return len(self._faces) - 1

    @property
    def vertices(self) -> Tuple[int, ...]:
        if not self._faces:
            return ()
        return tuple(f[0] for f in self._faces[0])

    def faces(self, i: int) -> Tuple[Face, ...]:
        if 0 <= i < len(self._faces):
            return self._faces[i]
        return ()

    def all_faces(self) -> Iterator[Face]:
        for level in self._faces:
            yield from level

    def __contains__(self, face: object) -> bool:
        if not isinstance(face, tuple):
            return False
        return tuple(sorted(face)) in self._lookup

    def simplex_counts(self) -> SimplexCountVector:
        return SimplexCountVector(tuple(len(level) for level in self._faces))

    def facets(self) -> List[Face]:
        """Maximal faces, ordered by dimension then lexicographically."""
        covered = set()
        for level in self._faces[1:]:
            for face in level:
                covered.update(combinations(face, len(face) - 1))
        return [f for level in self._faces for f in level if f not in covered]

    def vertex_degrees(self, v: int) -> Tuple[int, ...]:
        """Number of i-faces containing v, for i = 1..dim."""
        if self._degrees is None:
            table: Dict[int, List[int]] = {u: [0] * max(self.dimension, 0) for u in self.vertices}
            for i, level in enumerate(self._faces[1:]):
                for face in level:
                    for u in face:
                        table[u][i] += 1
            self._degrees = {u: tuple(d) for u, d in table.items()}
        return self._degrees.get(v, (0,) * max(self.dimension, 0))

    # Derived complexes -----------------------------------------------------

    def skeleton(self, i: int) -> "SimplicialComplex":
        if i < 0:
            raise MalformedComplex(f"skeleton dimension must be >= 0, got {i}")
        return SimplicialComplex(self._n, self._faces[: i + 1])

    def with_face(self, face: Iterable[int]) -> "SimplicialComplex":
        """This complex plus ``face`` and its closure."""
        return from_facets(self._n, [*self.facets(), tuple(face)])

    def relabel(self, mapping: Mapping[int, int], vertex_count: int) -> "SimplicialComplex":
        """Image under an injective relabelling of the vertices."""
        return SimplicialComplex(
            vertex_count,
            [[tuple(mapping[v] for v in f) for f in level] for level in self._faces],
        )

    def compacted(self) -> "SimplicialComplex":
        """Relabel the present vertices to ``0..s_0-1`` preserving their order."""
        mapping = {v: idx for idx, v in enumerate(self.vertices)}
        return self.relabel(mapping, len(mapping))

    # Dunder / serialisation ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._n == other._n and self._faces == other._faces

    def __hash__(self) -> int:
        return hash((self._n, self._faces))

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self._n}, s={self.simplex_counts().to_list()})"

    def to_dict(self) -> Dict[str, object]:
        return {"n": self._n, "facets": [list(f) for f in self.facets()]}


# Constructors ---------------------------------------------------------------


def from_facets(n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Downward closure of ``facets`` together with all ``n`` vertices."""
    if n < 0:
        raise MalformedComplex(f"vertex count must be non-negative, got {n}")
    levels: List[set] = [set((v,) for v in range(n))]
    for raw in facets:
        facet = tuple(raw)
        for v in facet:
            if not isinstance(v, int) or not 0 <= v < n:
                raise InvalidVertex(f"vertex {v} outside 0..{n - 1}")
        if len(set(facet)) != len(facet):
            raise MalformedFacet(f"facet {facet} repeats a vertex")
        ordered = tuple(sorted(facet))
        for size in range(2, len(ordered) + 1):
            while len(levels) < size:
                levels.append(set())
            levels[size - 1].update(combinations(ordered, size))
    return SimplicialComplex(n, levels)


def full_simplex(k: int) -> SimplicialComplex:
    """The k-simplex on vertices 0..k with all its faces."""
    return from_facets(k + 1, [tuple(range(k + 1))])


def boundary_of_simplex(k: int) -> SimplicialComplex:
    """Boundary of the k-simplex: its (k-1)-skeleton."""
    return full_simplex(k).skeleton(k - 1)


def complete_complex(n: int, k: int) -> SimplicialComplex:
    """All faces of dimension <= k on n vertices."""
    return from_facets(n, combinations(range(n), min(k + 1, n)) if n else [])


def simplex_counts(K: SimplicialComplex) -> SimplexCountVector:
    return K.simplex_counts()


def skeleton(K: SimplicialComplex, i: int) -> SimplicialComplex:
    return K.skeleton(i)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** i * s for i, s in enumerate(K.simplex_counts()))


def is_full_simplex(K: SimplicialComplex) -> bool:
    counts = K.simplex_counts()
    s0 = counts.get(0)
    return s0 > 0 and len(counts) == s0 and all(
        c == comb(s0, i + 1) for i, c in enumerate(counts)
    )
