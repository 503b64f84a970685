"""Independent brute-force oracles.

These deliberately avoid the production code paths so they can anchor the
randomized test suites: a permutation-expansion determinant, an exhaustive
path enumerator, and a dense numeric eigensolver for constant-weight
graphs.  Size guards keep the factorial/exponential costs honest.
"""

from __future__ import annotations

from itertools import permutations
from typing import List, Sequence, Tuple

import numpy as np

from .ratfun import RatFun
from .spectrum import SpectralList, SpectralPoint
from .wgraph import WeightedDigraph


def det_leibniz(matrix: Sequence[Sequence[RatFun]]) -> RatFun:
    """Determinant by signed permutation expansion; n <= 6."""
    n = len(matrix)
    if n > 6:
        raise ValueError("permutation-expansion determinant is limited to n <= 6")
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    if n == 0:
        return RatFun.one()
    total = RatFun.zero()
    for perm in permutations(range(n)):
        term = RatFun.one()
        for i in range(n):
            term = term * matrix[i][perm[i]]
            if term.is_zero():
                break
        if term.is_zero():
            continue
        inversions = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if perm[i] > perm[j]
        )
        total = total + (term if inversions % 2 == 0 else -term)
    return total


def all_paths(
    g: WeightedDigraph,
    source: str,
    target: str,
    forbidden_interiors: Sequence[str],
) -> List[Tuple[str, ...]]:
    """Every path or cycle from source to target whose interior vertices
    avoid the forbidden set, by plain recursive search; n <= 10."""
    if g.n > 10:
        raise ValueError("exhaustive path search is limited to 10 vertices")
    banned = set(forbidden_interiors)
    out: List[Tuple[str, ...]] = []

    def step(path: List[str]) -> None:
        here = path[-1]
        for nxt in sorted(g.successors(here), key=g.index):
            if nxt == target:
                out.append(tuple(path + [nxt]))
            if nxt != target and nxt not in banned and nxt not in path:
                path.append(nxt)
                step(path)
                path.pop()

    step([source])
    # a cycle back to the source counts only when source == target, and
    # the search above never walks through the target, so cycles through
    # it are already excluded
    return out


def _eig_high_precision(mat: np.ndarray) -> List[complex]:
    import mpmath

    with mpmath.workdps(50):
        m = mpmath.matrix(
            [[mpmath.mpc(mat[i, j]) for j in range(mat.shape[1])] for i in range(mat.shape[0])]
        )
        return [complex(z) for z in mpmath.eig(m, left=False, right=False)]


def eig_dense(g: WeightedDigraph, cluster_tol: float = 1e-6) -> SpectralList:
    """Numeric spectrum of a constant-weight graph via a dense
    eigensolver, with multiplicities recovered by clustering.

    Defective eigenvalues come out of a double-precision solve with error
    about eps**(1/k) for a k-fold Jordan block, so whenever the computed
    values show a cluster too wide to be honest roundoff yet too narrow to
    be separate eigenvalues, the solve is redone in 50-digit arithmetic.
    """
    mat = np.zeros((g.n, g.n), dtype=complex)
    for u, v, w in g.edges():
        if not w.is_constant():
            raise ValueError(f"weight of {u!r}->{v!r} is not constant")
        mat[g.index(u), g.index(v)] = w.constant_value().to_complex()
    if g.n == 0:
        return SpectralList([])
    values = sorted(np.linalg.eigvals(mat), key=lambda z: (z.real, z.imag))
    scale = max(1.0, max(abs(z) for z in values))
    suspicious = any(
        1e-9 * scale < abs(a - b) < 1e-3 * scale
        for i, a in enumerate(values)
        for b in values[i + 1 :]
    )
    if suspicious:
        values = sorted(_eig_high_precision(mat), key=lambda z: (z.real, z.imag))
    clusters: List[List[complex]] = []
    for z in values:
        if clusters and abs(z - clusters[-1][-1]) <= cluster_tol:
            clusters[-1].append(z)
        else:
            clusters.append([z])
    points = [
        SpectralPoint(sum(c) / len(c), len(c), None) for c in clusters
    ]
    return SpectralList(points)
