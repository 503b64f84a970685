"""Numeric roots of exact polynomials.

Multiplicities are never inferred numerically: the polynomial is first
split into squarefree factors exactly, then each factor's simple roots are
located by companion-matrix eigenvalues and polished with Newton steps
against the exact coefficients.

Double precision locates a cluster of nearly coincident simple roots only
to about the square root of machine epsilon, so when companion roots come
out closer than a cluster threshold the factor is re-solved with mpmath at
50 digits; elsewhere plain float arithmetic is plenty.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .ratfun import Poly, squarefree_decompose

_CLUSTER_TOL = 1e-5


def _newton_polish(f: Poly, roots: List[complex]) -> List[complex]:
    df = f.derivative()
    polished = []
    for r in roots:
        z = complex(r)
        for _ in range(12):
            fz = f.eval_complex(z)
            dz = df.eval_complex(z)
            if dz == 0:
                break
            step = fz / dz
            z -= step
            if abs(step) < 1e-14 * max(1.0, abs(z)):
                break
        polished.append(z)
    return polished


def _has_cluster(roots: List[complex]) -> bool:
    scale = max(1.0, max(abs(z) for z in roots))
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) < _CLUSTER_TOL * scale:
                return True
    return False


def _roots_high_precision(f: Poly) -> List[complex]:
    import mpmath

    with mpmath.workdps(50):
        coeffs = []
        for c in reversed(f.coeffs):
            re = mpmath.mpf(c.re.numerator) / mpmath.mpf(c.re.denominator)
            im = mpmath.mpf(c.im.numerator) / mpmath.mpf(c.im.denominator)
            coeffs.append(mpmath.mpc(re, im))
        found = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        return [complex(z) for z in found]


def _squarefree_roots(f: Poly) -> List[complex]:
    deg = f.degree
    coeffs = [c.to_complex() for c in f.coeffs]
    if deg == 1:
        return [-coeffs[0] / coeffs[1]]
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs[:-1]]
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = [-c for c in monic]
    roots = list(np.linalg.eigvals(comp))
    if _has_cluster(roots):
        return _roots_high_precision(f)
    return _newton_polish(f, roots)


def poly_roots(p: Poly) -> List[Tuple[complex, int, Poly]]:
    """All complex roots of ``p`` as (value, multiplicity, squarefree witness).

    The witness is the monic squarefree factor the root annihilates.
    Results are sorted by (real, imag).
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has every value as a root")
    out: List[Tuple[complex, int, Poly]] = []
    for factor, mult in squarefree_decompose(p):
        for z in _squarefree_roots(factor):
            out.append((z, mult, factor))
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out
