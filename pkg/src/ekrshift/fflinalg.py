"""Exact linear algebra over GF(p) on int64 numpy arrays.

Residues live in ``[0, p)`` with ``p < 2**31`` so a single product fits in a
signed 64-bit integer; every product is reduced before the next addition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

DEFAULT_PRIME = 2_147_483_647  # 2**31 - 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldConfig:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not 2 <= self.p <= DEFAULT_PRIME:
            raise ValueError(f"prime must lie in [2, 2**31 - 1], got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


def as_matrix(rows, p: int) -> np.ndarray:
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return np.mod(a, p)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` without int64 overflow.

    The left factor is split into 16-bit halves so each partial dot product
    stays below ``K * 2**47``.
    """
    if a.shape[-1] >= 1 << 16:
        raise ValueError("inner dimension too large for split multiplication")
    lo = a & 0xFFFF
    hi = a >> 16
    low_part = (lo @ b) % p
    high_part = (hi @ b) % p
    return (high_part * 65536 + low_part) % p


def rank_mod_p(matrix, p: int) -> int:
    """Rank by full Gaussian elimination (destroys nothing; works on a copy)."""
    a = as_matrix(matrix, p).copy()
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return 0
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, c].copy()
        if below.any():
            a[rank + 1:] = (a[rank + 1:] - (below[:, None] * a[rank]) % p) % p
        rank += 1
    return rank


def det_mod_p(matrix, p: int) -> int:
    a = as_matrix(matrix, p).copy()
    n, m = a.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        piv = c + nz[0]
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det
        pivot = int(a[c, c])
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        factors = (a[c + 1:, c] * inv) % p
        a[c + 1:] = (a[c + 1:] - (factors[:, None] * a[c]) % p) % p
    return det % p


@dataclass
class RankOracle:
    """Incremental independence test against a reduced row-echelon basis."""

    dim: int
    p: int = DEFAULT_PRIME
    pivots: list = field(default_factory=list)
    _basis: np.ndarray = None

    def __post_init__(self):
        if self._basis is None:
            self._basis = np.zeros((0, self.dim), dtype=np.int64)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> np.ndarray:
        return self._basis.copy()

    def reduce(self, row) -> np.ndarray:
        v = np.mod(np.asarray(row, dtype=np.int64), self.p)
        if v.shape != (self.dim,):
            raise ValueError(f"row of length {v.shape} for oracle of dimension {self.dim}")
        if self.pivots:
            coeffs = v[self.pivots]
            if coeffs.any():
                v = (v - matmul_mod(coeffs[None, :], self._basis, self.p)[0]) % self.p
        return v

    def insert(self, row) -> bool:
        v = self.reduce(row)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = int(nz[0])
        v = (v * pow(int(v[c]), -1, self.p)) % self.p
        if self.pivots:
            col = self._basis[:, c]
            if col.any():
                self._basis = (self._basis - (col[:, None] * v[None, :]) % self.p) % self.p
        self._basis = np.vstack([self._basis, v])
        self.pivots.append(c)
        return True


def oracle_insert(oracle: RankOracle, row) -> bool:
    return oracle.insert(row)


def random_invertible(n: int, cfg: FieldConfig, seed) -> np.ndarray:
    """Uniform random invertible ``n x n`` matrix mod p, deterministic in ``seed``."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    while True:
        g = rng.integers(0, cfg.p, size=(n, n), dtype=np.int64)
        if rank_mod_p(g, cfg.p) == n:
            return g


def compound_minor(g: np.ndarray, S, T, p: int) -> int:
    """Determinant of ``g[T, S]``: the ``e_T`` coordinate of the wedge of columns ``S``.

    ``S`` and ``T`` are sorted index sequences (0-based).
    """
    S, T = sorted(S), sorted(T)
    if len(S) != len(T):
        raise ValueError("row and column sets differ in size")
    if g.shape[0] != g.shape[1] or (S and max(S + T) >= g.shape[0]):
        raise ValueError("index out of range for the matrix")
    if not S:
        return 1
    return det_mod_p(g[np.ix_(T, S)], p)


def compound_matrix(g: np.ndarray, k: int, p: int) -> np.ndarray:
    """All ``k x k`` minors: rows indexed by column sets ``S``, columns by row sets ``T``, lex order."""

    n = g.shape[0]
    subsets = list(combinations(range(n), k))
    out = np.zeros((len(subsets), len(subsets)), dtype=np.int64)
    for a, S in enumerate(subsets):
        for b, T in enumerate(subsets):
            out[a, b] = compound_minor(g, S, T, p)
    return out
