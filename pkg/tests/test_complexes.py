from itertools import product
from math import factorial

import numpy as np
import pytest

from uppertail.complexes import (
    SimplicialComplex,
    are_isomorphic,
    automorphism_count,
    boundary_of_simplex,
    complete_complex,
    count_embeddings,
    count_ordered_copies,
    euler_characteristic,
    from_facets,
    full_simplex,
    is_full_simplex,
    read_complex,
    write_complex,
)
from uppertail.exceptions import InvalidVertex, MalformedComplex, MalformedFacet


def test_from_facets_closes_downward(triangle):
    assert triangle.simplex_counts().to_list() == [3, 3, 1]
    assert (0, 2) in triangle
    assert (2, 0) in triangle
    assert triangle.facets() == [(0, 1, 2)]


def test_isolated_vertices_are_kept():
    K = from_facets(5, [(0, 1)])
    assert K.simplex_counts().to_list() == [5, 1]
    assert K.facets() == [(2,), (3,), (4,), (0, 1)]


def test_invalid_vertex_rejected():
    with pytest.raises(InvalidVertex):
        from_facets(3, [(0, 3)])


def test_repeated_vertex_rejected():
    with pytest.raises(MalformedFacet):
        from_facets(3, [(0, 0, 1)])


def test_missing_boundary_rejected():
    with pytest.raises(MalformedComplex):
        SimplicialComplex(3, [[(0,), (1,), (2,)], [(0, 1)], [(0, 1, 2)]])


def test_face_order_does_not_matter():
    a = from_facets(4, [(2, 1, 0), (3, 2)])
    b = from_facets(4, [(2, 3), (0, 1, 2)])
    assert a == b
    assert hash(a) == hash(b)


def test_skeleton_and_boundary(hollow_tetrahedron):
    assert hollow_tetrahedron.simplex_counts().to_list() == [4, 6, 4]
    assert full_simplex(3).skeleton(2) == hollow_tetrahedron
    assert not is_full_simplex(hollow_tetrahedron)
    assert is_full_simplex(full_simplex(3))


@pytest.mark.parametrize(
    "K, chi",
    [
        (full_simplex(2), 1),
        (boundary_of_simplex(2), 0),
        (boundary_of_simplex(3), 2),
        (from_facets(4, []), 4),
    ],
)
def test_euler_characteristic(K, chi):
    assert euler_characteristic(K) == chi


def test_with_face_adds_closure(path3):
    K = path3.with_face((0, 1, 2))
    assert K == full_simplex(2)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_simplex_automorphisms(k):
    assert automorphism_count(full_simplex(k)) == factorial(k + 1)


def test_path_automorphisms(path3):
    assert automorphism_count(path3) == 2


def test_ordered_copies_in_complete_complex():
    K4 = complete_complex(4, 2)
    assert count_ordered_copies(K4, full_simplex(1)) == 12
    assert count_ordered_copies(K4, full_simplex(2)) == 24
    # Paths with two edges: 4 * 3 * 2 ordered choices of (end, middle, end).
    assert count_ordered_copies(K4, from_facets(3, [(0, 1), (1, 2)])) == 24


def test_isomorphism_ignores_labels(path3):
    relabelled = from_facets(3, [(0, 2), (2, 1)])
    assert are_isomorphic(path3, relabelled)
    assert not are_isomorphic(path3, boundary_of_simplex(2))


def test_complex_file_roundtrip(tmp_path, hollow_tetrahedron):
    path = tmp_path / "nested" / "k.json"
    write_complex(hollow_tetrahedron, path)
    assert read_complex(path) == hollow_tetrahedron


def test_bad_complex_file(write_json):
    path = write_json("bad.json", {"facets": [[0, 1]]})
    with pytest.raises(MalformedComplex):
        read_complex(path)


def random_complex(rng: np.random.Generator, n: int) -> SimplicialComplex:
    facets = [tuple(int(v) for v in rng.choice(n, size=int(rng.integers(1, 4)), replace=False)) for _ in range(4)]
    return from_facets(n, facets)


def relabel(K: SimplicialComplex, rng: np.random.Generator) -> SimplicialComplex:
    perm = [int(v) for v in rng.permutation(K.vertex_count)]
    return K.relabel(dict(enumerate(perm)), K.vertex_count)


class TestIsomorphism:
    @pytest.fixture
    def corpus(self):
        rng = np.random.default_rng(31)
        bases = [random_complex(rng, int(rng.integers(3, 6))) for _ in range(6)]
        return [K for base in bases for K in (base, relabel(base, rng), relabel(base, rng))]

    def test_relabelling_preserves_class(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            K = random_complex(rng, 5)
            L = relabel(K, rng)
            assert are_isomorphic(K, L)
            assert automorphism_count(K) == automorphism_count(L)

    def test_equivalence_relation(self, corpus):
        related = {(i, j): are_isomorphic(a, b) for (i, a), (j, b) in product(enumerate(corpus), repeat=2)}
        indices = range(len(corpus))
        assert all(related[i, i] for i in indices)
        assert all(related[i, j] == related[j, i] for i, j in product(indices, repeat=2))
        for i, j, k in product(indices, repeat=3):
            if related[i, j] and related[j, k]:
                assert related[i, k]

    def test_automorphisms_divide_vertex_permutations(self, corpus):
        for K in corpus:
            assert factorial(K.vertex_count) % automorphism_count(K) == 0

    def test_hollow_triangle_automorphisms(self, hollow_triangle):
        assert automorphism_count(hollow_triangle) == 6

    def test_isolated_vertex_breaks_isomorphism(self):
        assert not are_isomorphic(from_facets(2, [(0, 1)]), from_facets(3, [(0, 1)]))


@pytest.mark.parametrize("K", [full_simplex(3), boundary_of_simplex(3), from_facets(5, [(0, 1, 2), (2, 3), (4,)])])
def test_skeleton_truncates_counts(K):
    counts = K.simplex_counts().to_list()
    for i in range(K.dimension + 1):
        assert K.skeleton(i).simplex_counts().to_list() == counts[: i + 1]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_embeddings_of_a_simplex_match_face_count(k):
    rng = np.random.default_rng(k)
    hosts = [complete_complex(6, 3)] + [random_complex(rng, 6).with_face((0, 1, 2, 3)) for _ in range(5)]
    for host in hosts:
        assert count_embeddings(full_simplex(k), host) == factorial(k + 1) * host.simplex_counts().get(k)
