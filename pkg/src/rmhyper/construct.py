"""Recursive builders for part-rainbow-forced and rm-unavoidable hypergraphs.

The building blocks: attaching a private marker vertex to every edge (raising
uniformity by one), amalgamation of a partite hypergraph along one part using
a base hypergraph, complete partite factors, and a supplier of uniform
hypergraphs with prescribed minimum degree and girth.  Builders are
estimate-first: the recursions explode combinatorially, so predicted sizes
are checked against hard limits before anything is materialised, and every
step re-verifies its structural postconditions so corrupted inputs fail fast.

All construction operations relabel their output onto integer vertex ids
0..n-1 with a deterministic layout and return the relabelling maps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from .core import (
    Hypergraph,
    HypergraphError,
    PartiteHypergraph,
    VertexId,
    complete_hypergraph,
    validate_uniformity,
)
from .girth import girth

SIZE_CAP = 10**15  # beyond this, predicted counts are reported as astronomical


@dataclass(frozen=True)
class BuildLimits:
    max_vertices: int = 100_000
    max_edges: int = 500_000

    def __post_init__(self) -> None:
        if self.max_vertices <= 0 or self.max_edges <= 0:
            raise ValueError("limits must be positive")


@dataclass(frozen=True)
class ConstructionParams:
    """Knobs shared by the builders: RNG seed, size limits, supplier policy."""

    seed: int = 0
    limits: BuildLimits = BuildLimits()
    supplier_tries: int = 10
    verify: bool = True
    verify_vertex_limit: int = 20_000


@dataclass(frozen=True)
class SizeEstimate:
    """Predicted cardinalities of a construction, or an astronomical marker."""

    vertices: int | None
    edges: int | None
    astronomical: bool
    exact: bool  # True when supplier sizes are exact, False for lower bounds
    note: str = ""

    def within(self, limits: BuildLimits) -> bool:
        if self.astronomical or self.vertices is None or self.edges is None:
            return False
        return self.vertices <= limits.max_vertices and self.edges <= limits.max_edges


class SizeLimitError(RuntimeError):
    """A construction was refused because its predicted size exceeds limits."""

    def __init__(self, message: str, estimate: SizeEstimate):
        super().__init__(message)
        self.estimate = estimate


class SupplierError(RuntimeError):
    """The min-degree/high-girth supplier ran out of retries."""


@dataclass
class TraceNode:
    """One construction step with its recorded cardinalities."""

    op: str
    info: dict
    children: list["TraceNode"] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "op": self.op,
            "info": self.info,
            "children": [c.to_dict() for c in self.children],
        }


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------


def attach_edge_markers(
    p: PartiteHypergraph,
) -> tuple[PartiteHypergraph, dict[VertexId, int], tuple[int, ...]]:
    """Extend every edge by a private fresh vertex placed in one new part.

    The input must be r-uniform r-partite; the output is (r+1)-uniform
    (r+1)-partite with the new part's size equal to the edge count.  Returns
    the extended hypergraph, the relabelling of the original vertices onto
    0..n-1, and the marker ids in canonical edge order.
    """
    r = p.num_parts
    if p.num_edges and p.base.uniformity() != r:
        raise HypergraphError(f"input must be {r}-uniform to match its {r} parts")
    n = p.num_vertices
    vmap = {v: i for i, v in enumerate(p.vertices)}
    markers = tuple(range(n, n + p.num_edges))
    edges = [
        sorted(vmap[v] for v in e) + [markers[pos]] for pos, e in enumerate(p.edges)
    ]
    parts = [tuple(vmap[v] for v in part) for part in p.parts]
    parts.append(markers)
    result = PartiteHypergraph(Hypergraph(range(n + p.num_edges), edges), parts)
    return result, vmap, markers


def amalgamate(
    h: PartiteHypergraph, part_index: int, f: Hypergraph
) -> tuple[PartiteHypergraph, tuple[dict[VertexId, int], ...]]:
    """Amalgamation of ``h`` along ``part_index`` using ``f``.

    Takes one vertex-disjoint copy of ``h`` per edge of ``f`` and identifies
    the chosen part of each copy with that edge (both in canonical order).
    The result's chosen part is the vertex set of ``f``; every other part is
    the disjoint union of the copies' parts.  Returns the amalgam and one
    embedding per copy, in ``f``'s canonical edge order.
    """
    if not 0 <= part_index < h.num_parts:
        raise HypergraphError(f"part index {part_index} out of range")
    anchor = h.part(part_index)
    size = len(anchor)
    if size < 2:
        raise HypergraphError(f"part {part_index} has {size} vertices; need >= 2 to amalgamate")
    if not f.is_uniform(size):
        raise HypergraphError(
            f"base hypergraph must be {size}-uniform to match part {part_index}"
        )
    nf = f.num_vertices
    copy_maps: list[dict[VertexId, int]] = []
    edges: list[list[int]] = []
    other_parts: list[list[int]] = [[] for _ in range(h.num_parts)]
    fresh = nf
    for fe in f.edge_index_tuples():
        cmap: dict[VertexId, int] = {}
        for v, target in zip(anchor, fe):
            cmap[v] = target
        for v in h.vertices:
            if v not in cmap:
                cmap[v] = fresh
                fresh += 1
        copy_maps.append(cmap)
        edges.extend([sorted(cmap[v] for v in e) for e in h.edges])
        for j in range(h.num_parts):
            if j != part_index:
                other_parts[j].extend(cmap[v] for v in h.part(j))

    parts: list[Sequence[int]] = [
        tuple(range(nf)) if j == part_index else tuple(other_parts[j])
        for j in range(h.num_parts)
    ]
    result = PartiteHypergraph(Hypergraph(range(fresh), edges), parts)

    # cardinality identities (fail fast on corrupted inputs)
    if result.num_edges != f.num_edges * h.num_edges:
        raise AssertionError("amalgamation lost or duplicated edges")
    for j in range(h.num_parts):
        expected = nf if j == part_index else f.num_edges * len(h.part(j))
        if len(result.part(j)) != expected:
            raise AssertionError(f"amalgamation part {j} has the wrong size")
    return result, tuple(copy_maps)


def complete_partite_factor(
    f: PartiteHypergraph, num_parts: int
) -> tuple[PartiteHypergraph, tuple[dict[VertexId, int], ...]]:
    """Union of C(a, r) disjoint copies of ``f``, one inside each r-subset of
    ``a`` parts, with copy part k mapped into the k-th smallest chosen part.

    Guarantees that the union of any r parts of the result contains the full
    vertex set of some copy.  Returns the factor plus one embedding per copy,
    in sorted r-subset order.
    """
    r = f.num_parts
    if num_parts < r:
        raise HypergraphError(f"need at least r={r} parts, got {num_parts}")
    if f.num_edges and f.base.uniformity() != r:
        raise HypergraphError(f"input must be {r}-uniform to match its {r} parts")
    nf = f.num_vertices
    copy_maps: list[dict[VertexId, int]] = []
    edges: list[list[int]] = []
    parts: list[list[int]] = [[] for _ in range(num_parts)]
    offset = 0
    for subset in combinations(range(num_parts), r):
        cmap = {v: offset + i for i, v in enumerate(f.vertices)}
        copy_maps.append(cmap)
        edges.extend([sorted(cmap[v] for v in e) for e in f.edges])
        for k, target in enumerate(subset):
            parts[target].extend(cmap[v] for v in f.part(k))
        offset += nf
    result = PartiteHypergraph(Hypergraph(range(offset), edges), parts)
    if result.num_edges != comb(num_parts, r) * f.num_edges:
        raise AssertionError("partite factor lost or duplicated edges")
    return result, tuple(copy_maps)


def supply_min_degree_girth(
    ell: int, g: int, q: int, params: ConstructionParams | None = None
) -> Hypergraph:
    """An ell-uniform hypergraph with girth >= g and minimum degree >= q.

    Deterministic shortcut for ell = 2, g <= 3: the complete graph on q+1
    vertices.  Otherwise generates a random high-girth hypergraph, peels
    vertices of degree below q to a fixpoint, and retries at larger n if the
    peeling empties the hypergraph.  The output is re-verified before return.
    """
    validate_uniformity(ell)
    if g < 2:
        raise ValueError(f"girth target must be >= 2, got {g}")
    if q < 1:
        raise ValueError(f"minimum degree must be >= 1, got {q}")
    params = params or ConstructionParams()

    if ell == 2 and g <= 3:
        return complete_hypergraph(q + 1, 2)

    from .randgen import derive_seed, random_high_girth

    if g == 2:
        n0 = max(2 * ell, q + ell)
    else:
        # girth >= 3 means any two edges share at most one vertex, which
        # forces n >= q*(ell-1) + 1 around a max-degree vertex
        n0 = max(2 * ell, q * (ell - 1) + 1)
    n = n0
    for attempt in range(params.supplier_tries):
        if n > params.limits.max_vertices:
            raise SupplierError(
                f"supplier needs more than {params.limits.max_vertices} vertices "
                f"for ell={ell}, g={g}, q={q}"
            )
        sample = random_high_girth(
            n, ell, g, derive_seed(params.seed, f"supplier:{attempt}"), min_edges=1
        )
        h = sample.hypergraph
        while h.num_vertices:
            low = [v for v in h.vertices if h.degree(v) < q]
            if not low:
                break
            keep = set(h.vertices) - set(low)
            h = h.induced(keep)
        if h.num_edges and min(h.degree(v) for v in h.vertices) >= q:
            if not h.is_uniform(ell):
                raise AssertionError("peeled hypergraph lost uniformity")
            if not girth(h, cap=max(2, g - 1)).girth.guarantees_at_least(g):
                raise AssertionError("peeled hypergraph lost the girth guarantee")
            return h
        n = math.ceil(n * 1.5)
    raise SupplierError(
        f"no ell={ell} hypergraph with girth >= {g} and min degree >= {q} found "
        f"within {params.supplier_tries} tries (last n={n})"
    )


# ---------------------------------------------------------------------------
# Size estimation (pure arithmetic over the recursions)
# ---------------------------------------------------------------------------


def _supplier_numbers(ell: int, g: int, q: int) -> tuple[int, int, bool]:
    """(vertices, edges, exact) for the supplier's output.

    Exact for the deterministic shortcut; otherwise a lower bound from the
    degree sum plus, for girth >= 3, the linearity packing bound.
    """
    if ell == 2 and g <= 3:
        n = q + 1
        return n, comb(n, 2), True
    n = max(2 * ell, q + ell) if g == 2 else max(2 * ell, q * (ell - 1) + 1)
    e = -(-q * n // ell)
    return n, e, False


def _pr_numbers(r: int, g: int) -> tuple[int | None, int | None, list[int], bool, str]:
    """(vertices, edges, part sizes, exact, note) for the rainbow-forcing
    recursion; vertices None marks an astronomical blow-up."""
    verts, nedges = 3, 2
    parts = [2, 1]
    exact = True
    note = ""
    for k in range(2, r):
        ell = nedges
        q = ell * (k + 1)
        sn, se, s_exact = _supplier_numbers(ell, g, q)
        exact = exact and s_exact
        if not s_exact:
            note = "supplier sizes are lower bounds; actual sizes may be far larger"
        tilde_verts = verts + ell
        verts = se * (tilde_verts - ell) + sn
        nedges = se * ell
        parts = [se * s for s in parts] + [sn]
        if verts > SIZE_CAP or nedges > SIZE_CAP:
            return None, None, [], exact, f"exceeds {SIZE_CAP:.0e} at uniformity {k + 1}"
    return verts, nedges, parts, exact, note


def estimate_pr_size(r: int, g: int) -> SizeEstimate:
    """Predicted size of the part-rainbow-forced construction."""
    validate_uniformity(r)
    if g < 2:
        raise ValueError(f"girth target must be >= 2, got {g}")
    verts, nedges, _, exact, note = _pr_numbers(r, g)
    if verts is None:
        return SizeEstimate(None, None, True, exact, note)
    return SizeEstimate(verts, nedges, False, exact, note)


def _log10_comb(n: int, k: int) -> float:
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / math.log(10)


def _h_numbers(r: int, g: int) -> tuple[int | None, int | None, bool, str]:
    base_verts = (r - 1) ** 2 + 1
    if g == 2:
        if _log10_comb(base_verts, r) > 15:
            return None, None, True, f"complete base alone has ~10^{_log10_comb(base_verts, r):.0f} edges"
        return base_verts, comb(base_verts, r), True, ""
    if r == 2:
        # base case K_2 is acyclic, so it already meets any girth target
        return 2, 1, True, "base case already meets the girth target"
    pr_v, pr_e, pr_parts, exact, note = _pr_numbers(r, g)
    if pr_v is None:
        return None, None, exact, note
    a = (r - 1) ** 2 + r
    copies = comb(a, r)
    verts = copies * pr_v
    nedges = copies * pr_e
    # part p collects the copy part matching p's rank within each r-subset
    parts = [0] * a
    for subset in combinations(range(a), r):
        for k, p in enumerate(subset):
            parts[p] += pr_parts[k]
    for j in range(a):
        pj = parts[j]
        hv, he, h_exact, h_note = _h_numbers(pj, g - 1)
        exact = exact and h_exact
        if hv is None:
            return None, None, exact, h_note or note
        if he > SIZE_CAP or he * nedges > SIZE_CAP:
            hint = ""
            if g - 1 == 2:
                hint = f" (sweep step {j + 1} amalgamates with ~10^{_log10_comb((pj - 1) ** 2 + 1, pj):.0f} copies)"
            return None, None, exact, f"exceeds {SIZE_CAP:.0e} at sweep step {j + 1}{hint}"
        verts = he * (verts - pj) + hv
        nedges = he * nedges
        parts = [he * s for s in parts]
        parts[j] = hv
        if verts > SIZE_CAP or nedges > SIZE_CAP:
            return None, None, exact, f"exceeds {SIZE_CAP:.0e} at sweep step {j + 1}"
    return verts, nedges, exact, note


def estimate_h_size(r: int, g: int) -> SizeEstimate:
    """Predicted size of the rm-unavoidable construction."""
    validate_uniformity(r)
    if g < 2:
        raise ValueError(f"girth target must be >= 2, got {g}")
    verts, nedges, exact, note = _h_numbers(r, g)
    if verts is None:
        return SizeEstimate(None, None, True, exact, note)
    return SizeEstimate(verts, nedges, False, exact, note)


# ---------------------------------------------------------------------------
# Top-level builders
# ---------------------------------------------------------------------------


def base_rainbow_path() -> PartiteHypergraph:
    """The 2-uniform base: a path on three vertices, parts {ends}, {middle}."""
    return PartiteHypergraph(Hypergraph([0, 1, 2], [[0, 1], [1, 2]]), [(0, 2), (1,)])


def build_part_rainbow_forced(
    r: int, g: int, params: ConstructionParams | None = None
) -> PartiteHypergraph:
    """The r-uniform r-partite part-rainbow-forced hypergraph of girth >= g.

    Base: the path on three vertices.  Step k -> k+1: attach edge markers,
    then amalgamate along the new part using a supplier hypergraph whose
    uniformity is the edge count and whose minimum degree is edge count times
    (k+1).  Estimate-first: refuses with a SizeLimitError when predicted
    sizes exceed the limits.
    """
    validate_uniformity(r)
    if g < 2:
        raise ValueError(f"girth target must be >= 2, got {g}")
    params = params or ConstructionParams()
    pr = base_rainbow_path()
    for k in range(2, r):
        ell = pr.num_edges
        q = ell * (k + 1)
        sn, se, s_exact = _supplier_numbers(ell, g, q)
        tilde, _, _ = attach_edge_markers(pr)
        predicted = SizeEstimate(
            se * (tilde.num_vertices - ell) + sn, se * ell, False, s_exact
        )
        if not predicted.within(params.limits):
            raise SizeLimitError(
                f"uniformity step {k + 1} predicts >= {predicted.vertices} vertices / "
                f"{predicted.edges} edges, above limits "
                f"({params.limits.max_vertices} / {params.limits.max_edges})",
                predicted,
            )
        base = supply_min_degree_girth(ell, g, q, params)
        actual = SizeEstimate(
            base.num_edges * (tilde.num_vertices - ell) + base.num_vertices,
            base.num_edges * ell,
            False,
            True,
        )
        if not actual.within(params.limits):
            raise SizeLimitError(
                f"supplier output would give {actual.vertices} vertices, above limits",
                actual,
            )
        pr, _ = amalgamate(tilde, k, base)
        if not pr.base.is_uniform(k + 1) or pr.num_parts != k + 1:
            raise AssertionError("amalgamation step broke uniformity or partiteness")
    if params.verify and pr.num_vertices <= params.verify_vertex_limit:
        if not girth(pr.base, cap=g).girth.guarantees_at_least(g):
            raise AssertionError(f"construction failed its girth >= {g} postcondition")
    return pr


def amalgamation_sweep(
    start: PartiteHypergraph,
    base_for_part: Callable[[int, int], Hypergraph],
    trace: TraceNode | None = None,
) -> PartiteHypergraph:
    """Amalgamate ``start`` along parts 0..a-1 in turn.

    ``base_for_part(j, size)`` supplies the hypergraph used at step j, which
    must be ``size``-uniform.  This is the inner loop of the rm-unavoidable
    recursion, factored out so it can be exercised with stand-in bases.
    """
    current = start
    for j in range(start.num_parts):
        size = len(current.part(j))
        base = base_for_part(j, size)
        current, _ = amalgamate(current, j, base)
        if trace is not None:
            trace.children.append(
                TraceNode(
                    "amalgamate",
                    {
                        "part": j,
                        "part_size": size,
                        "copies": base.num_edges,
                        "vertices": current.num_vertices,
                        "edges": current.num_edges,
                        "part_sizes": list(current.part_sizes()),
                    },
                )
            )
    return current


def build_rm_unavoidable(
    r: int, g: int, params: ConstructionParams | None = None
) -> tuple[Hypergraph, TraceNode]:
    """An r-uniform hypergraph of girth >= g in which every vertex coloring
    has a monochromatic or rainbow edge.

    Base (g = 2): the complete r-uniform hypergraph on (r-1)^2 + 1 vertices.
    When that base already has girth >= g (exactly the r = 2 case, where it
    is a single acyclic edge) it is returned directly: the recursion exists
    only to amplify girth.  Otherwise the recursion takes a complete partite
    factor of the rainbow-forcing construction and amalgamates along each
    part with a recursively built hypergraph whose uniformity is that part's
    size; its sizes are astronomical, so it is refused estimate-first.
    """
    validate_uniformity(r)
    if g < 2:
        raise ValueError(f"girth target must be >= 2, got {g}")
    params = params or ConstructionParams()

    base_n = (r - 1) ** 2 + 1
    base = complete_hypergraph(base_n, r)
    trace = TraceNode(
        "build_rm_unavoidable",
        {"r": r, "g": g, "vertices": base.num_vertices, "edges": base.num_edges},
    )
    if g == 2:
        trace.children.append(
            TraceNode("complete_base", {"vertices": base.num_vertices, "edges": base.num_edges})
        )
        return base, trace
    if girth(base, cap=g).girth.guarantees_at_least(g):
        trace.children.append(
            TraceNode(
                "complete_base",
                {
                    "vertices": base.num_vertices,
                    "edges": base.num_edges,
                    "note": "base case already meets the girth target",
                },
            )
        )
        return base, trace

    estimate = estimate_h_size(r, g)
    if not estimate.within(params.limits):
        size = "astronomical" if estimate.astronomical else f"{estimate.vertices} vertices"
        raise SizeLimitError(
            f"rm-unavoidable recursion for r={r}, g={g} predicts {size} "
            f"({estimate.note or 'above limits'})",
            estimate,
        )

    pr = build_part_rainbow_forced(r, g, params)
    a = (r - 1) ** 2 + r
    factor, _ = complete_partite_factor(pr, a)
    trace.children.append(
        TraceNode(
            "complete_partite_factor",
            {
                "parts": a,
                "copies": comb(a, r),
                "vertices": factor.num_vertices,
                "edges": factor.num_edges,
                "part_sizes": list(factor.part_sizes()),
            },
        )
    )
    result = amalgamation_sweep(
        factor, lambda j, size: build_rm_unavoidable(size, g - 1, params)[0], trace
    )
    final = result.base
    if not final.is_uniform(r):
        raise AssertionError("recursion produced a non-uniform hypergraph")
    if params.verify and final.num_vertices <= params.verify_vertex_limit:
        if not girth(final, cap=g).girth.guarantees_at_least(g):
            raise AssertionError(f"construction failed its girth >= {g} postcondition")
    trace.info["vertices"] = final.num_vertices
    trace.info["edges"] = final.num_edges
    return final, trace
