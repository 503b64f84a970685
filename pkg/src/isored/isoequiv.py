"""Weighted-digraph isomorphism and the reduction-induced equivalences.

Isomorphism demands a vertex bijection preserving edges and exact
canonical weights.  The search is backtracking over candidate assignments,
pruned by per-vertex invariants (degrees, loop weight, sorted in/out
weight multisets); that is exponential in the worst case but the inputs
here are reduced graphs of desk scale.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, List, Optional

from .reduction import reduce, unique_reduce_to
from .structural import basic_structural_set, require_g_pi, require_structural_set
from .wgraph import WeightedDigraph


def _vertex_signature(g: WeightedDigraph, v: str):
    out_w = sorted(hash(g.weight(v, u)) for u in g.successors(v) if u != v)
    in_w = sorted(hash(g.weight(u, v)) for u in g.predecessors(v) if u != v)
    return (
        g.out_degree(v),
        g.in_degree(v),
        hash(g.loop(v)),
        tuple(out_w),
        tuple(in_w),
    )


def isomorphic(g: WeightedDigraph, h: WeightedDigraph) -> Optional[Dict[str, str]]:
    """A weight-preserving vertex bijection g -> h, or ``None``."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    sig_g = {v: _vertex_signature(g, v) for v in g.vertices}
    sig_h = {v: _vertex_signature(h, v) for v in h.vertices}
    if sorted(sig_g.values()) != sorted(sig_h.values()):
        return None
    candidates = {
        v: [u for u in h.vertices if sig_h[u] == sig_g[v]] for v in g.vertices
    }
    order = sorted(g.vertices, key=lambda v: len(candidates[v]))
    assignment: Dict[str, str] = {}
    used = set()

    def consistent(v: str, u: str) -> bool:
        for w, x in assignment.items():
            if g.weight(v, w) != h.weight(u, x):
                return False
            if g.weight(w, v) != h.weight(x, u):
                return False
        return g.loop(v) == h.loop(u)

    def search(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for u in candidates[v]:
            if u in used or not consistent(v, u):
                continue
            assignment[v] = u
            used.add(u)
            if search(k + 1):
                return True
            del assignment[v]
            used.discard(u)
        return False

    if search(0):
        return dict(assignment)
    return None


def common_reduction(
    g: WeightedDigraph, s: Iterable[str], h: WeightedDigraph, t: Iterable[str]
) -> bool:
    """True when the reductions of g over s and h over t are isomorphic."""
    s_ordered = require_structural_set(g, s)
    t_ordered = require_structural_set(h, t)
    return isomorphic(reduce(g, s_ordered), reduce(h, t_ordered)) is not None


def bas_equivalent(g: WeightedDigraph, h: WeightedDigraph) -> bool:
    """Membership of h in g's equivalence class: both reduced over their
    basic structural sets give isomorphic graphs."""
    rg = reduce(g, basic_structural_set(g))
    rh = reduce(h, basic_structural_set(h))
    return isomorphic(rg, rh) is not None


def tau_reduce(
    g: WeightedDigraph, rule: Callable[[WeightedDigraph], Iterable[str]]
) -> WeightedDigraph:
    """Unique reduction onto the vertex subset picked by a deterministic
    rule; the graph must have all weight degree gaps nonpositive."""
    target = list(rule(g))
    reduced, _ = unique_reduce_to(g, target)
    return reduced


def min_out_degree_rule(g: WeightedDigraph) -> List[str]:
    """Vertices that survive one step of the minimum-out-degree rule: the
    complement of the minimal-out-degree set."""
    degs = {v: g.out_degree(v) for v in g.vertices}
    low = min(degs.values())
    return [v for v in g.vertices if degs[v] > low]


def tau_min_outdegree_reduce(g: WeightedDigraph) -> WeightedDigraph:
    """Iterate removal of the minimal-out-degree vertices until every
    vertex has the same out-degree; a deterministic fixed point."""
    require_g_pi(g)
    current = g
    while True:
        degs = [current.out_degree(v) for v in current.vertices]
        if min(degs) == max(degs):
            return current
        current = tau_reduce(current, min_out_degree_rule)


def tau_equivalent(
    g: WeightedDigraph,
    h: WeightedDigraph,
    reducer: Callable[[WeightedDigraph], WeightedDigraph] = tau_min_outdegree_reduce,
) -> bool:
    return isomorphic(reducer(g), reducer(h)) is not None
