"""Constructive panchromatic colorers.

All three return a :class:`ColorerOutcome`; a coloring is only ever returned
after :func:`~panchroma.hypercore.is_panchromatic` has accepted it.  Budget
exhaustion means "unknown", never "not colorable".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ._rng import derive_seed
from .hypercore import Coloring, Hypergraph, exact_panchromatic_decision, is_panchromatic

DEFAULT_MAX_ATTEMPTS = 10**4


@dataclass
class ColorerOutcome:
    method: str
    coloring: Coloring | None
    attempts: int
    stats: list[dict] = field(default_factory=list)
    reason: str = ""

    @property
    def success(self) -> bool:
        return self.coloring is not None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "success": self.success,
            "attempts": self.attempts,
            "reason": self.reason,
            "stats": self.stats,
        }


def _verified(H: Hypergraph, coloring: Coloring) -> Coloring:
    ok, bad = is_panchromatic(H, coloring)
    if not ok:
        raise AssertionError(f"colorer produced a non-panchromatic coloring: {bad}")
    return coloring


# -- greedy -----------------------------------------------------------------

def greedy(H: Hypergraph, r: int) -> ColorerOutcome:
    """Give r fresh vertices of each edge the colors 0..r-1, edge by edge.

    Never recolors; leftover vertices get color 0.  Succeeds whenever
    |E| <= floor(n/r), since each edge loses at most r vertices per earlier edge.
    """
    if r > H.uniformity:
        raise ValueError(f"r={r} exceeds uniformity {H.uniformity}")
    color = [-1] * H.num_vertices
    for i, e in enumerate(H.edges):
        fresh = [v for v in e if color[v] < 0][:r]
        if len(fresh) < r:
            return ColorerOutcome("greedy", None, 1, [{"failed_edge": i}],
                                  reason=f"edge {i} has {len(fresh)} uncolored vertices < r")
        for q, v in enumerate(fresh):
            color[v] = q
    coloring = Coloring(r, tuple(max(c, 0) for c in color))
    return ColorerOutcome("greedy", _verified(H, coloring), 1)


# -- alteration ---------------------------------------------------------------

def alteration_palette(n: int, r: int) -> int:
    """max(r + 1, ceil((n-1) r / (n-r))), the integer palette for the alteration colorer."""
    if not 2 <= r < n:
        raise ValueError(f"need 2 <= r < n, got n={n}, r={r}")
    return max(r + 1, -(-(n - 1) * r // (n - r)))


_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def _bad_colors(H: Hypergraph, colors: np.ndarray, a: int) -> tuple[np.ndarray, int]:
    """Colors missing from some edge, and the number of missing (edge, color) pairs."""
    if not H.num_edges:
        return np.zeros(a, dtype=bool), 0
    if a > 64:
        pres = np.zeros((H.num_edges, a), dtype=bool)
        rows = np.repeat(np.arange(H.num_edges), H.uniformity)
        pres[rows, colors[H.edge_array].ravel()] = True
        missing = ~pres
        return missing.any(axis=0), int(missing.sum())
    # OR together one-hot color bits over each edge
    dt = np.uint8 if a <= 8 else np.uint16 if a <= 16 else np.uint32 if a <= 32 else np.uint64
    bits = (np.ones(1, dtype=np.uint64) << colors.astype(np.uint64)).astype(dt)
    seen = np.bitwise_or.reduce(bits[H.edge_array], axis=1)
    miss = np.bitwise_xor(seen, dt((1 << a) - 1))
    any_miss = int(np.bitwise_or.reduce(miss))
    bad = np.array([(any_miss >> q) & 1 for q in range(a)], dtype=bool)
    as_bytes = miss.view(np.uint8)
    return bad, int(_POPCOUNT8[as_bytes].sum())


def _relabel(colors: np.ndarray, keep: list[int], a: int) -> tuple[int, ...]:
    """Map kept color keep[i] to i; callers guarantee only kept colors remain."""
    lut = np.zeros(a, dtype=np.int64)
    lut[keep] = np.arange(len(keep))
    return tuple(int(x) for x in lut[colors])


def alteration(H: Hypergraph, r: int, seed: int = 0,
               max_attempts: int = DEFAULT_MAX_ATTEMPTS, palette: int | None = None) -> ColorerOutcome:
    """Las Vegas alteration colorer.

    Each attempt colors vertices uniformly from a palette of ``a > r`` colors.
    A color is bad if some edge misses it.  With at least r good colors, the
    r smallest good ones are kept and every other vertex joins the first kept
    color; every edge then still sees all kept colors.
    """
    a = palette if palette is not None else alteration_palette(H.uniformity, r)
    if a <= r:
        raise ValueError("palette must exceed r")
    stats = []
    for attempt in range(max_attempts):
        rng = np.random.default_rng(derive_seed(seed, attempt))
        colors = rng.integers(0, a, size=H.num_vertices)
        bad, pairs = _bad_colors(H, colors, a)
        nbad = int(bad.sum())
        stats.append({"bad_pairs": pairs, "bad_colors": nbad})
        if a - nbad >= r:
            keep = [q for q in range(a) if not bad[q]][:r]
            colors = np.where(np.isin(colors, keep), colors, keep[0])
            coloring = Coloring(r, _relabel(colors, keep, a))
            return ColorerOutcome("alteration", _verified(H, coloring), attempt + 1, stats)
    return ColorerOutcome("alteration", None, max_attempts, stats, reason="attempt budget exhausted")


# -- simplex skeleton ---------------------------------------------------------

@dataclass(frozen=True)
class SkeletonPoint:
    """Point at distance ``param`` from simplex vertex ``u`` on the unit edge (u, w)."""

    u: int
    w: int
    param: float

    def __post_init__(self):
        if not self.u < self.w:
            raise ValueError("need u < w")
        if not 0.0 <= self.param <= 1.0:
            raise ValueError("param must lie in [0, 1]")


def skeleton_dist(p: SkeletonPoint, v: int) -> float:
    """Path distance on the 1-skeleton (all edges of length 1) from ``p`` to vertex ``v``."""
    if v == p.u:
        return p.param
    if v == p.w:
        return 1.0 - p.param
    return 1.0 + min(p.param, 1.0 - p.param)


def sample_skeleton(num: int, palette: int, rng: np.random.Generator):
    """Uniform points on the skeleton as arrays (u, w, param)."""
    pairs = np.array(list(combinations(range(palette), 2)), dtype=np.int64)
    idx = rng.integers(0, len(pairs), size=num)
    return pairs[idx, 0], pairs[idx, 1], rng.random(num)


def skeleton_distances(u: np.ndarray, w: np.ndarray, param: np.ndarray, palette: int) -> np.ndarray:
    """(num_points, palette) matrix of :func:`skeleton_dist` values."""
    d = np.repeat((1.0 + np.minimum(param, 1.0 - param))[:, None], palette, axis=1)
    rows = np.arange(len(u))
    d[rows, u] = param
    d[rows, w] = 1.0 - param
    return d


@dataclass
class DemandMap:
    """demands[e, i] is the vertex of edge e nearest to simplex vertex i.

    ``conflicts`` lists (vertex, i, j), i < j, for every vertex demanded to
    take two distinct colors (possibly by different edges).
    """

    demands: np.ndarray
    conflicts: list[tuple[int, int, int]]

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(e, i): int(v) for (e, i), v in np.ndenumerate(self.demands)}


def compute_demands(H: Hypergraph, dist: np.ndarray) -> DemandMap:
    palette = dist.shape[1]
    if not H.num_edges:
        return DemandMap(np.zeros((0, palette), dtype=np.int64), [])
    E = H.edge_array
    # edges are sorted, so argmin's first-hit rule breaks ties to the smallest vertex
    nearest = dist[E].argmin(axis=1)
    demands = np.take_along_axis(E, nearest, axis=1)
    wanted = np.zeros((H.num_vertices, palette), dtype=bool)
    wanted[demands.ravel(), np.tile(np.arange(palette), H.num_edges)] = True
    conflicts = []
    for x in np.flatnonzero(wanted.sum(axis=1) > 1):
        cols = np.flatnonzero(wanted[x])
        conflicts.extend((int(x), int(i), int(j)) for i, j in combinations(cols, 2))
    return DemandMap(demands, conflicts)


def discard_conflicting_colors(conflicts: list[tuple[int, int, int]], palette: int) -> np.ndarray:
    """Boolean mask of colors to drop so no two kept colors share a demanded vertex.

    Repeatedly drops the color meeting the most unresolved conflicting pairs
    (smallest index on ties).  Each drop resolves at least one pair, so at
    least ``palette - #distinct pairs`` colors survive.
    """
    pairs = {(i, j) for _, i, j in conflicts}
    bad = np.zeros(palette, dtype=bool)
    while pairs:
        deg = np.zeros(palette, dtype=np.int64)
        for i, j in pairs:
            deg[i] += 1
            deg[j] += 1
        q = int(np.argmax(deg))
        bad[q] = True
        pairs = {(i, j) for i, j in pairs if q not in (i, j)}
    return bad


def simplex_palette(n: int, r: int) -> int:
    """ceil(r + r^2/n), the enlarged palette."""
    return r + -(-r * r // n)


def simplex(H: Hypergraph, r: int, palette: int | None = None, seed: int = 0,
            max_attempts: int = DEFAULT_MAX_ATTEMPTS, conflict_rule: str = "greedy") -> ColorerOutcome:
    """Randomized colorer driven by a random embedding into a simplex skeleton.

    Every hypergraph vertex is placed uniformly on the 1-skeleton of a
    simplex with ``palette`` corners.  Each edge demands that its vertex
    nearest corner i take color i.  Conflicting demands are resolved by
    dropping colors: ``conflict_rule="greedy"`` drops at most one color per
    conflicting pair (:func:`discard_conflicting_colors`), ``"both"`` drops
    every color involved in any conflict.  With at least r colors left,
    demanded vertices get their color and the rest get the first kept color.
    ``palette == r`` tolerates no conflict under either rule.
    """
    a = r if palette is None else palette
    if r < 2 or a < r:
        raise ValueError("need palette >= r >= 2")
    if conflict_rule not in ("greedy", "both"):
        raise ValueError(f"unknown conflict_rule {conflict_rule!r}")
    stats = []
    for attempt in range(max_attempts):
        rng = np.random.default_rng(derive_seed(seed, attempt))
        u, w, param = sample_skeleton(H.num_vertices, a, rng)
        dm = compute_demands(H, skeleton_distances(u, w, param, a))
        if conflict_rule == "greedy":
            bad = discard_conflicting_colors(dm.conflicts, a)
        else:
            bad = np.zeros(a, dtype=bool)
            for _, i, j in dm.conflicts:
                bad[i] = bad[j] = True
        nbad = int(bad.sum())
        stats.append({"conflicts": len(dm.conflicts), "bad_colors": nbad})
        if a - nbad < r:
            continue
        keep = [q for q in range(a) if not bad[q]][:r]
        assign = np.full(H.num_vertices, keep[0], dtype=np.int64)
        for q in keep:
            assign[dm.demands[:, q]] = q
        coloring = Coloring(r, _relabel(assign, keep, a))
        return ColorerOutcome("simplex", _verified(H, coloring), attempt + 1, stats)
    return ColorerOutcome("simplex", None, max_attempts, stats, reason="attempt budget exhausted")


# -- exact --------------------------------------------------------------------

def exact(H: Hypergraph, r: int, node_budget: int | None = None) -> ColorerOutcome:
    """Wrap the exact oracle; ``reason`` is "impossible" when no coloring exists."""
    c = exact_panchromatic_decision(H, r, node_budget)
    if c is None:
        return ColorerOutcome("exact", None, 1, reason="impossible")
    return ColorerOutcome("exact", _verified(H, c), 1)


METHODS = ("greedy", "alteration", "simplex", "exact")
