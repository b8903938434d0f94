"""
Boundary matrices and their ranks over prime fields.

Over GF(2) each column of the boundary matrix is a Python int used as a bit
set over the (j-1)-faces, and columns are reduced against a table of pivots
keyed by their lowest set bit. Odd primes use dense numpy elimination with
signed boundaries, on int64 entries while (p-1)^2 fits and on Python ints
above that.
"""

from typing import Any, Dict, List

import numpy as np

from ..complexes import SimplicialComplex
from ..exceptions import InvalidField

_INT64_MAX = int(np.iinfo(np.int64).max)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidField(f"coefficient characteristic {p} is not prime")


def _entry_type(p: int) -> Any:
    """int64 while products of residues fit, Python ints beyond."""
    return np.int64 if (p - 1) ** 2 <= _INT64_MAX else object


def boundary_bitsets(K: SimplicialComplex, j: int) -> List[int]:
    """Columns of the GF(2) boundary map from j-faces to (j-1)-faces."""
    if j <= 0:
        return []
    index = {face: i for i, face in enumerate(K.faces(j - 1))}
    columns = []
    for face in K.faces(j):
        bits = 0
        for drop in range(len(face)):
            bits |= 1 << index[face[:drop] + face[drop + 1 :]]
        columns.append(bits)
    return columns


def gf2_rank(columns: List[int]) -> int:
    """Rank of a set of GF(2) vectors given as int bit sets."""
    pivots: Dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            low = col & -col
            if low in pivots:
                col ^= pivots[low]
            else:
                pivots[low] = col
                rank += 1
                break
    return rank


def boundary_matrix(K: SimplicialComplex, j: int, p: int) -> np.ndarray:
    """Signed boundary matrix from j-faces to (j-1)-faces, reduced mod p."""
    rows = K.faces(j - 1) if j > 0 else ()
    cols = K.faces(j) if j > 0 else ()
    index = {face: i for i, face in enumerate(rows)}
    D = np.zeros((len(rows), len(cols)), dtype=_entry_type(p))
    for c, face in enumerate(cols):
        for drop in range(len(face)):
            D[index[face[:drop] + face[drop + 1 :]], c] = (-1) ** drop % p
    return D


def rank_mod_p(M: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p) by Gaussian elimination."""
    A = np.array(M, dtype=_entry_type(p)) % p
    n_rows, n_cols = A.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = np.nonzero(A[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            A[[rank, pivot]] = A[[pivot, rank]]
        inverse = pow(int(A[rank, col]), -1, p)
        A[rank] = (A[rank] * inverse) % p
        below = np.nonzero(A[:, col])[0]
        for r in below:
            if r != rank:
                A[r] = (A[r] - A[r, col] * A[rank]) % p
        rank += 1
    return rank


def boundary_rank(K: SimplicialComplex, j: int, p: int = 2) -> int:
    """rank of the boundary map out of dimension j (0 for j <= 0 or j > dim K)."""
    if j <= 0 or j > K.dimension:
        return 0
    if p == 2:
        return gf2_rank(boundary_bitsets(K, j))
    return rank_mod_p(boundary_matrix(K, j, p), p)
