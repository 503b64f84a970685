"""Laplacian-derived graphs, as inputs to the common reduce/spectrum
pipeline.

``combinatorial_laplacian_graph`` takes a simple graph (undirected,
unweighted, loop-free, represented as a symmetric unit-weight digraph) to
the digraph whose adjacency matrix has vertex degrees on the diagonal and
-1 at adjacent off-diagonal positions.

``normalized_laplacian_graph`` has two modes.  The symmetric form has
entries -1/sqrt(d_i d_j), which are irrational in general, so the default
``exact-similar`` mode returns the diagonally similar random-walk form
I - D^(-1) A (entries -1/d_i, exactly rational, identical spectrum).  The
``numeric`` mode emits the symmetric entries as rational approximations
for users who need them verbatim; the approximants are far tighter than
the nominal 1e-12 accuracy (about 1e-30) because an entry perturbation
epsilon can split an eigenvalue of multiplicity k by epsilon**(1/k), and
the two modes are expected to agree to 1e-8 on desk-scale graphs.

``generalized_laplacian_graph`` extends the combinatorial form to any
loop-free weighted digraph: off-diagonal entries are negated weights and
each diagonal entry is the row sum, so all row sums vanish.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .ratfun import GaussianRational, RatFun
from .wgraph import GraphError, WeightedDigraph

_SQRT_SCALE = 10**30


def _inv_sqrt_approx(m: int) -> Fraction:
    """Rational approximation of 1/sqrt(m) with error around 1e-30."""
    return Fraction(_SQRT_SCALE, isqrt(m * _SQRT_SCALE * _SQRT_SCALE))


class NotSimpleError(GraphError):
    """Input must be a simple graph: symmetric, unit weights, no loops."""


def _require_simple(g: WeightedDigraph) -> None:
    one = RatFun.one()
    for u, v, w in g.edges():
        if u == v:
            raise NotSimpleError(f"loop on {u!r}")
        if w != one:
            raise NotSimpleError(f"edge {u!r}->{v!r} is not unit weight")
        if not g.has_edge(v, u):
            raise NotSimpleError(f"edge {u!r}->{v!r} has no reverse")


def _degrees(g: WeightedDigraph) -> dict:
    return {v: g.out_degree(v) for v in g.vertices}


def combinatorial_laplacian_graph(g: WeightedDigraph) -> WeightedDigraph:
    """Digraph of the degree-diagonal Laplacian matrix of a simple graph."""
    _require_simple(g)
    deg = _degrees(g)
    minus_one = RatFun.from_int(-1)
    edges = []
    for v in g.vertices:
        if deg[v]:
            edges.append((v, v, RatFun.from_int(deg[v])))
    for u, v, _ in g.edges():
        edges.append((u, v, minus_one))
    return WeightedDigraph(g.vertices, edges)


def normalized_laplacian_graph(
    g: WeightedDigraph, mode: str = "exact-similar"
) -> WeightedDigraph:
    """Digraph of the normalized Laplacian of a simple graph.

    ``exact-similar`` gives the isospectral random-walk form with exact
    rational entries; ``numeric`` gives -1/sqrt(d_i d_j) off-diagonal
    entries as rational approximants (accurate well past 1e-12).
    """
    if mode not in ("exact-similar", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    _require_simple(g)
    deg = _degrees(g)
    one = RatFun.one()
    edges = []
    for v in g.vertices:
        if deg[v]:
            edges.append((v, v, one))
    for u, v, _ in g.edges():
        if mode == "exact-similar":
            w = RatFun.const(GaussianRational(Fraction(-1, deg[u])))
        else:
            w = RatFun.const(GaussianRational(-_inv_sqrt_approx(deg[u] * deg[v])))
        edges.append((u, v, w))
    return WeightedDigraph(g.vertices, edges)


def generalized_laplacian_graph(g: WeightedDigraph) -> WeightedDigraph:
    """Row-sum-diagonal Laplacian graph of a loop-free weighted digraph."""
    for v in g.vertices:
        if g.has_edge(v, v):
            raise GraphError(f"graph has a loop on {v!r}")
    edges = []
    for v in g.vertices:
        total = RatFun.zero()
        for u in g.successors(v):
            total = total + g.weight(v, u)
        if not total.is_zero():
            edges.append((v, v, total))
    for u, v, w in g.edges():
        edges.append((u, v, RatFun.zero() - w))
    return WeightedDigraph(g.vertices, edges)
