"""Probabilistic generation: high-girth carriers, sub-edge sampling, and the
counting bound behind the randomized existence argument.

The carrier model samples a fixed number of distinct R-subsets uniformly and
deletes one edge from each short cycle until the girth target holds.  From an
R-uniform carrier, one r-subset is drawn per edge; the resulting r-uniform
hypergraph inherits the carrier's girth.  The counting bound is evaluated as
exact high-precision arithmetic instead of re-proving the existence result,
whose n is far beyond desk scale.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from math import comb

from .coloring import Verdict, VerdictStatus, find_good_coloring
from .core import Hypergraph, HypergraphError, validate_uniformity
from .girth import girth

DEFAULT_SAMPLES = 8
DEFAULT_TRIES = 64
DEFAULT_SEARCH_BUDGET = 2_000_000


class RetryLimitError(RuntimeError):
    """The generator could not reach its edge target; carries what it got."""

    def __init__(self, message: str, best: "CarrierSample"):
        super().__init__(message)
        self.best = best


def derive_seed(master: int, label: object) -> int:
    """Stable 64-bit child seed for independent substreams."""
    digest = hashlib.sha256(f"{master}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def ceil_power(n: int, num: int, den: int) -> int:
    """Exact ceil(n**(num/den)) for positive integers, by integer root."""
    target = n**num
    lo, hi = 1, max(2, n ** -(-num // den))
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**den >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class CarrierSample:
    """Outcome of one high-girth generation run."""

    hypergraph: Hypergraph
    edge_target: int
    edges_kept: int
    target_met: bool
    samples_used: int
    edges_deleted: int


def random_high_girth(
    n: int,
    uniformity: int,
    g: int,
    seed: int,
    *,
    samples: int = DEFAULT_SAMPLES,
    min_edges: int | None = None,
    require_target: bool = False,
) -> CarrierSample:
    """Random uniform hypergraph on n vertices with verified girth >= g.

    Samples twice ceil(n^(1+1/g)) distinct edges without replacement (capped
    at the number of available edges), then repeatedly deletes the first edge
    of a currently shortest cycle until no cycle shorter than g remains.  If
    the surviving edge count misses the target ceil(n^(1+1/g)), fresh samples
    are drawn up to ``samples`` times and the best attempt is returned; with
    ``require_target`` the miss raises RetryLimitError instead.  At desk
    scale the guarantee behind the target does not yet bind, so misses are
    expected for small n.  ``min_edges`` overrides the acceptance threshold
    (the reported target is unchanged).
    """
    validate_uniformity(uniformity)
    if n < uniformity:
        raise HypergraphError(f"need n >= {uniformity} vertices, got {n}")
    if g < 2:
        raise ValueError(f"girth target must be >= 2, got {g}")
    if samples < 1:
        raise ValueError("samples must be >= 1")

    target = ceil_power(n, g + 1, g)
    available = comb(n, uniformity)
    m = min(2 * target, available)
    threshold = target if min_edges is None else min_edges

    best: CarrierSample | None = None
    population = range(n)
    for attempt in range(samples):
        rng = random.Random(derive_seed(seed, f"sample:{attempt}"))
        chosen: set[frozenset[int]] = set()
        while len(chosen) < m:
            chosen.add(frozenset(rng.sample(population, uniformity)))
        h = Hypergraph(population, sorted(tuple(sorted(e)) for e in chosen))
        deleted = 0
        if g > 2:
            while True:
                res = girth(h, cap=g - 1)
                if not res.girth.is_finite:
                    break
                assert res.witness is not None
                h = h.without_edges([res.witness.edges[0]])
                deleted += 1
        if not girth(h, cap=max(2, g - 1)).girth.guarantees_at_least(g):
            raise AssertionError("deletion loop failed to reach the girth target")
        sample = CarrierSample(
            hypergraph=h,
            edge_target=target,
            edges_kept=h.num_edges,
            target_met=h.num_edges >= target,
            samples_used=attempt + 1,
            edges_deleted=deleted,
        )
        if h.num_edges >= threshold:
            return sample
        if best is None or sample.edges_kept > best.edges_kept:
            best = sample
    assert best is not None
    if require_target:
        raise RetryLimitError(
            f"kept {best.edges_kept} edges after {samples} samples; target {target}",
            best,
        )
    return best


@dataclass(frozen=True)
class SubedgeSequence:
    """One chosen r-subset per carrier edge, in canonical carrier edge order."""

    choices: tuple[frozenset, ...]
    subset_size: int

    def __len__(self) -> int:
        return len(self.choices)


def sample_subedges(
    h: Hypergraph, r: int, seed: int
) -> tuple[SubedgeSequence, Hypergraph]:
    """Choose a uniform random r-subset of every edge of an R-uniform carrier.

    Returns the sequence of choices plus the r-uniform hypergraph they span
    (on the carrier's full vertex set).  Distinct carrier edges can yield the
    same subset; the sequence records every choice while the hypergraph
    deduplicates, so it may have fewer edges than the carrier.  Its girth is
    at least the carrier's girth.
    """
    validate_uniformity(r)
    big = h.uniformity()
    if h.num_edges and (big is None or big < r):
        raise HypergraphError(f"carrier must be uniform with edges of size >= {r}")
    rng = random.Random(derive_seed(seed, "subedges"))
    index_order = {v: i for i, v in enumerate(h.vertices)}
    choices = []
    for edge in h.edges:
        members = sorted(edge, key=index_order.__getitem__)
        choices.append(frozenset(rng.sample(members, r)))
    dedup = {tuple(sorted(c, key=index_order.__getitem__)) for c in choices}
    sub = Hypergraph(h.vertices, sorted(dedup))
    return SubedgeSequence(tuple(choices), r), sub


@dataclass(frozen=True)
class ThresholdResult:
    """Smallest n where the counting inequality holds, with both sides."""

    n: int
    lhs: float  # n ln n + ln(a-1)
    rhs: float  # n^(1+1/g) ln(a/(a-1))
    a: int

    def holds(self) -> bool:
        return self.lhs < self.rhs


def _counting_sides(n: int, a: int, g: int, dps: int = 50):
    from mpmath import mp

    with mp.workdps(dps):
        nn = mp.mpf(n)
        lhs = nn * mp.log(nn) + mp.log(a - 1)
        rhs = nn ** (1 + mp.mpf(1) / g) * mp.log(mp.mpf(a) / (a - 1))
        return lhs, rhs


def counting_inequality_holds(n: int, r: int, g: int) -> bool:
    """Exact check of n ln n + ln(a-1) < n^(1+1/g) ln(a/(a-1)).

    ``a`` is the number of r-subsets of an edge of the (r-1)^2+1-uniform
    carrier.  Evaluated at two precisions; disagreement would raise.
    """
    a = _subset_count(r)
    lo_lhs, lo_rhs = _counting_sides(n, a, g, dps=30)
    hi_lhs, hi_rhs = _counting_sides(n, a, g, dps=60)
    if (lo_lhs < lo_rhs) != (hi_lhs < hi_rhs):
        raise ArithmeticError(f"precision-dependent comparison at n={n}")
    return bool(hi_lhs < hi_rhs)


def _subset_count(r: int) -> int:
    if r < 3:
        raise ValueError(
            "the counting argument needs r >= 3: for r = 2 there is a single "
            "2-subset per carrier edge and the bound is vacuous"
        )
    return comb((r - 1) ** 2 + 1, r)


def counting_threshold(r: int, g: int, *, n_max: int = 10**12) -> ThresholdResult:
    """Smallest n satisfying the counting inequality, by monotone search.

    Exponential search finds a satisfying n, binary search plus a downward
    walk isolates the boundary; the result is re-verified to hold at n and
    fail at n-1.
    """
    a = _subset_count(r)
    if g < 2:
        raise ValueError(f"girth target must be >= 2, got {g}")

    hi = 2
    while not counting_inequality_holds(hi, r, g):
        hi *= 2
        if hi > n_max:
            raise ArithmeticError(f"no satisfying n found below {n_max}")
    lo = max(2, hi // 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if counting_inequality_holds(mid, r, g):
            hi = mid
        else:
            lo = mid + 1
    n = hi
    while n > 2 and counting_inequality_holds(n - 1, r, g):
        n -= 1
    if not counting_inequality_holds(n, r, g) or (
        n > 2 and counting_inequality_holds(n - 1, r, g)
    ):
        raise ArithmeticError("threshold boundary verification failed")
    lhs, rhs = _counting_sides(n, a, g)
    return ThresholdResult(n=n, lhs=float(lhs), rhs=float(rhs), a=a)


@dataclass(frozen=True)
class ProbParams:
    """Parameters of the randomized search for small unavoidable instances."""

    n: int
    r: int
    g: int
    seed: int = 0
    tries: int = DEFAULT_TRIES
    budget: int = DEFAULT_SEARCH_BUDGET

    def __post_init__(self) -> None:
        _subset_count(self.r)  # rejects r < 3
        if self.g < 2:
            raise ValueError(f"girth target must be >= 2, got {self.g}")
        if self.n < self.carrier_uniformity:
            raise ValueError(
                f"need n >= {self.carrier_uniformity} vertices, got {self.n}"
            )
        if self.tries < 1 or self.budget < 1:
            raise ValueError("tries and budget must be positive")

    @property
    def carrier_uniformity(self) -> int:
        return (self.r - 1) ** 2 + 1

    @property
    def subset_count(self) -> int:
        return _subset_count(self.r)


@dataclass(frozen=True)
class SearchOutcome:
    """Result of the randomized search: first certified instance, or the
    hardest (most search nodes) attempt seen."""

    found: bool
    hypergraph: Hypergraph | None
    verdict: Verdict | None
    subedges: SubedgeSequence | None
    try_index: int | None
    tries_used: int


def random_search_unavoidable(params: ProbParams) -> SearchOutcome:
    """Sample sub-edge hypergraphs over random high-girth carriers until the
    coloring solver certifies one as unavoidable.

    Every certified instance is re-verified: girth at least g and an
    exhausted good-coloring search.
    """
    best: tuple[int, SearchOutcome] | None = None
    for t in range(params.tries):
        seed_t = derive_seed(params.seed, f"try:{t}")
        carrier = random_high_girth(
            params.n, params.carrier_uniformity, params.g, seed_t
        )
        subedges, candidate = sample_subedges(carrier.hypergraph, params.r, seed_t)
        verdict = find_good_coloring(candidate, budget=params.budget)
        if verdict.status is VerdictStatus.PROPERTY_HOLDS:
            if not girth(candidate, cap=max(2, params.g - 1)).girth.guarantees_at_least(
                params.g
            ):
                raise AssertionError("certified instance fails its girth recheck")
            return SearchOutcome(
                found=True,
                hypergraph=candidate,
                verdict=verdict,
                subedges=subedges,
                try_index=t,
                tries_used=t + 1,
            )
        outcome = SearchOutcome(
            found=False,
            hypergraph=candidate,
            verdict=verdict,
            subedges=subedges,
            try_index=t,
            tries_used=t + 1,
        )
        if best is None or verdict.nodes > best[0]:
            best = (verdict.nodes, outcome)
    assert best is not None
    _, outcome = best
    return SearchOutcome(
        found=False,
        hypergraph=outcome.hypergraph,
        verdict=outcome.verdict,
        subedges=outcome.subedges,
        try_index=outcome.try_index,
        tries_used=params.tries,
    )
