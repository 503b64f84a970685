"""The reduction engine: branches, branch products, reductions over a
structural set, vertex elimination, sequential and unique reductions,
branch decompositions, expansions, loop bisection, and off-branch pruning.

A *branch* between vertices of S is a path or cycle whose interior
vertices all lie off S; the two-vertex case covers both a plain edge and a
loop (a loop is a length-one cycle from its vertex to itself).  The
reduced graph on S carries, for each ordered pair, the sum of branch
products; pairs whose products cancel to zero get no edge.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .ratfun import RatFun, format_weight
from .structural import (
    ForbiddenSet,
    StructuralSetError,
    check_structural_set,
    forbidden_set,
    require_g_pi,
    require_structural_set,
)
from .wgraph import UnknownVertexError, WeightedDigraph


class Branch:
    """A path or cycle v1..vm (m >= 2) with endpoints in S and interiors
    off S; vertices are distinct except possibly v1 = vm."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[str]):
        if len(vertices) < 2:
            raise ValueError("a branch has at least two vertices")
        self.vertices = tuple(vertices)

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        """Edge count."""
        return len(self.vertices) - 1

    def interiors(self) -> Tuple[str, ...]:
        return self.vertices[1:-1]

    def __eq__(self, other):
        if not isinstance(other, Branch):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "Branch(" + " -> ".join(self.vertices) + ")"


def weight_sequence(g: WeightedDigraph, branch: Branch) -> Tuple[RatFun, ...]:
    """Alternating loop/edge weights along the branch, 2m-1 entries for m
    vertices; absent loops contribute the zero function."""
    vs = branch.vertices
    out: List[RatFun] = [g.loop(vs[0])]
    for a, b in zip(vs, vs[1:]):
        out.append(g.weight(a, b))
        out.append(g.loop(b))
    return tuple(out)


def branch_product(g: WeightedDigraph, branch: Branch) -> RatFun:
    """First edge weight times edge/(l - loop) over the interior vertices;
    a two-vertex branch is just its edge weight."""
    vs = branch.vertices
    product = g.weight(vs[0], vs[1])
    lam = RatFun.var()
    for k in range(1, len(vs) - 1):
        product = product * g.weight(vs[k], vs[k + 1]) / (lam - g.loop(vs[k]))
    return product


def _branches_from(g: WeightedDigraph, s_set: set, start: str) -> Dict[str, List[Branch]]:
    """All branches leaving ``start``, grouped by target, each group in
    lexicographic order of the vertex-index sequence."""
    idx = g.index
    found: Dict[str, List[Branch]] = {}

    def record(path: List[str]) -> None:
        found.setdefault(path[-1], []).append(Branch(path))

    def walk(path: List[str], on_path: set) -> None:
        here = path[-1]
        for nxt in sorted(g.successors(here), key=idx):
            if nxt in s_set:
                record(path + [nxt])
            elif nxt not in on_path:
                on_path.add(nxt)
                path.append(nxt)
                walk(path, on_path)
                path.pop()
                on_path.discard(nxt)

    walk([start], set())
    return found


def enumerate_branches(
    g: WeightedDigraph, s: Iterable[str], source: str, target: str
) -> List[Branch]:
    """The branch set from ``source`` to ``target`` over S, in
    deterministic lexicographic order."""
    s_ordered = require_structural_set(g, s)
    s_set = set(s_ordered)
    if source not in s_set or target not in s_set:
        raise StructuralSetError(
            f"branch endpoints {source!r}, {target!r} must lie in the structural set"
        )
    return _branches_from(g, s_set, source).get(target, [])


def all_branches(g: WeightedDigraph, s: Iterable[str]) -> List[Branch]:
    """Every branch of g over S, grouped by source then target."""
    s_ordered = require_structural_set(g, s)
    s_set = set(s_ordered)
    out: List[Branch] = []
    for src in s_ordered:
        groups = _branches_from(g, s_set, src)
        for dst in s_ordered:
            out.extend(groups.get(dst, []))
    return out


def reduce(g: WeightedDigraph, s: Iterable[str]) -> WeightedDigraph:
    """The isospectral reduction of g over the structural set S: the graph
    on S whose (i, j) weight is the sum of branch products from i to j."""
    s_ordered = require_structural_set(g, s)
    s_set = set(s_ordered)
    edges = []
    for src in s_ordered:
        groups = _branches_from(g, s_set, src)
        for dst in s_ordered:
            branches = groups.get(dst)
            if not branches:
                continue
            total = RatFun.zero()
            for b in branches:
                total = total + branch_product(g, b)
            if not total.is_zero():
                edges.append((src, dst, total))
    return WeightedDigraph(s_ordered, edges)


def remove_vertex(g: WeightedDigraph, v: str) -> WeightedDigraph:
    """Eliminate one vertex: the reduction over V minus {v}, computed by
    the closed form  new(i,j) = w(i,j) + w(i,v) w(v,j) / (l - w(v,v))."""
    if not g.has_vertex(v):
        raise UnknownVertexError(f"unknown vertex {v!r}")
    if g.n < 2:
        raise StructuralSetError("cannot remove the only vertex")
    lam = RatFun.var()
    loop = g.loop(v)
    if loop == lam:
        raise StructuralSetError(
            f"loop on {v!r} equals the variable l; the complement is not structural"
        )
    keep = [u for u in g.vertices if u != v]
    denom = lam - loop
    into = [(u, g.weight(u, v)) for u in g.predecessors(v) if u != v]
    outof = [(w, g.weight(v, w)) for w in g.successors(v) if w != v]
    extra: Dict[Tuple[str, str], RatFun] = {}
    for u, wu in into:
        through = wu / denom
        for w, wv in outof:
            extra[(u, w)] = through * wv
    edges = []
    for i in keep:
        for j in keep:
            w = g.weight(i, j)
            add = extra.get((i, j))
            if add is not None:
                w = w + add
            if not w.is_zero():
                edges.append((i, j, w))
    return WeightedDigraph(keep, edges)


def sequential_reduce(
    g: WeightedDigraph, sets: Sequence[Iterable[str]]
) -> Tuple[WeightedDigraph, ForbiddenSet]:
    """Apply a sequence of reductions, accumulating the exception sets of
    every step by union."""
    current = g
    acc = ForbiddenSet.empty()
    for k, s in enumerate(sets):
        check = check_structural_set(current, s)
        if not check.ok:
            raise StructuralSetError(f"step {k + 1}: {check.reason}")
        acc = acc.union(forbidden_set(current, s))
        current = reduce(current, s)
    return current, acc


def unique_reduce_to(
    g: WeightedDigraph, target: Iterable[str]
) -> Tuple[WeightedDigraph, ForbiddenSet]:
    """Reduce to an arbitrary nonempty target vertex set by removing the
    complement one vertex at a time; requires every weight to have
    nonpositive degree gap, which makes the result order independent."""
    require_g_pi(g)
    target_set = set(target)
    if not target_set:
        raise ValueError("target vertex set must be nonempty")
    for v in target_set:
        if not g.has_vertex(v):
            raise UnknownVertexError(f"unknown vertex {v!r}")
    current = g
    acc = ForbiddenSet.empty()
    for v in [u for u in g.vertices if u not in target_set]:
        acc = acc.union(forbidden_set(current, [u for u in current.vertices if u != v]))
        current = remove_vertex(current, v)
    return current, acc


# ----------------------------------------------------------------------
# Branch decompositions and expansions
# ----------------------------------------------------------------------

DecompositionItem = Tuple[str, str, Tuple[RatFun, ...]]


def branch_decomposition(g: WeightedDigraph, s: Iterable[str]) -> List[DecompositionItem]:
    """Multiset of (source, target, weight sequence) over all branches, in
    deterministic order; repeated items are meaningful."""
    return [
        (b.source, b.target, weight_sequence(g, b)) for b in all_branches(g, s)
    ]


def common_decomposition(
    g: WeightedDigraph,
    s: Iterable[str],
    h: WeightedDigraph,
    t: Iterable[str],
    rho: Dict[str, str],
) -> bool:
    """True when the branch decompositions agree as multisets after
    relabeling g's sources and targets through the bijection rho: s -> t."""
    s_ordered = require_structural_set(g, s)
    t_ordered = require_structural_set(h, t)
    if set(rho.keys()) != set(s_ordered) or set(rho.values()) != set(t_ordered):
        raise ValueError("rho must be a bijection from s onto t")
    left = Counter(
        (rho[src], rho[dst], seq) for src, dst, seq in branch_decomposition(g, s_ordered)
    )
    right = Counter(branch_decomposition(h, t_ordered))
    return left == right


def expand(g: WeightedDigraph, s: Iterable[str]) -> WeightedDigraph:
    """Branch expansion: same decomposition over S, but every branch gets
    its own fresh interior vertices, so branches are pairwise independent
    and every vertex lies on a branch.

    Interior names are ``<src>~<dst>~<k>~<pos>`` with k the branch index
    within its ordered pair and pos the interior position.
    """
    s_ordered = require_structural_set(g, s)
    s_set = set(s_ordered)
    vertices: List[str] = list(s_ordered)
    edges: List[Tuple[str, str, RatFun]] = []
    for src in s_ordered:
        groups = _branches_from(g, s_set, src)
        for dst in s_ordered:
            for k, b in enumerate(groups.get(dst, [])):
                seq = weight_sequence(g, b)
                m = len(b.vertices)
                if m == 2:
                    edges.append((src, dst, seq[1]))
                    continue
                names = [src]
                for pos in range(1, m - 1):
                    name = f"{src}~{dst}~{k}~{pos}"
                    names.append(name)
                    vertices.append(name)
                names.append(dst)
                for step in range(m - 1):
                    edges.append((names[step], names[step + 1], seq[2 * step + 1]))
                for pos in range(1, m - 1):
                    loop = seq[2 * pos]
                    if not loop.is_zero():
                        edges.append((names[pos], names[pos], loop))
    return WeightedDigraph(vertices, edges)


class FactorizationError(ValueError):
    """The supplied loop-bisection factors do not multiply back to the
    edge weight."""


def loop_bisect(
    g: WeightedDigraph,
    edge: Tuple[str, str],
    w_in: RatFun,
    w_loop: RatFun,
    w_out: RatFun,
    new_vertex: Optional[str] = None,
) -> WeightedDigraph:
    """Replace edge (i, k) of weight w_in * w_out / (l - w_loop) by a path
    through a fresh looped vertex carrying exactly those three weights."""
    i, k = edge
    if not g.has_edge(i, k):
        raise UnknownVertexError(f"no edge {i!r}->{k!r} to bisect")
    lam = RatFun.var()
    if w_loop == lam:
        raise FactorizationError("bisection loop weight may not equal the variable l")
    expected = w_in * w_out / (lam - w_loop)
    actual = g.weight(i, k)
    if expected != actual:
        raise FactorizationError(
            f"factors give {format_weight(expected)} but the edge weighs "
            f"{format_weight(actual)}"
        )
    if new_vertex is None:
        base = f"{i}~{k}~bis"
        new_vertex = base
        n = 0
        while g.has_vertex(new_vertex):
            n += 1
            new_vertex = f"{base}{n}"
    elif g.has_vertex(new_vertex):
        raise ValueError(f"vertex {new_vertex!r} already exists")
    edges = [(u, v, w) for u, v, w in g.edges() if (u, v) != (i, k)]
    edges.append((i, new_vertex, w_in))
    if not w_loop.is_zero():
        edges.append((new_vertex, new_vertex, w_loop))
    edges.append((new_vertex, k, w_out))
    return WeightedDigraph(tuple(g.vertices) + (new_vertex,), edges)


def prune_off_branch(g: WeightedDigraph, s: Iterable[str]) -> WeightedDigraph:
    """Drop every vertex and edge lying on no branch over S.  S vertices
    are always retained; loops survive exactly when their vertex is on
    some branch."""
    s_ordered = require_structural_set(g, s)
    s_set = set(s_ordered)
    traversed = set()
    on_branch = set()
    for b in all_branches(g, s_ordered):
        vs = b.vertices
        on_branch.update(vs)
        traversed.update(zip(vs, vs[1:]))
    keep_vertices = [v for v in g.vertices if v in on_branch or v in s_set]
    edges = []
    for u, v, w in g.edges():
        if (u, v) in traversed or (u == v and u in on_branch):
            edges.append((u, v, w))
    return WeightedDigraph(keep_vertices, edges)
