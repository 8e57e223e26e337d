"""Witness hypergraphs with no panchromatic coloring, and transforms preserving that.

* :func:`shift_construction` -- explicit shift construction on a k x rt grid.
* :func:`blowup` -- replace every vertex by a block of m clones.
* :func:`random_turan` / :func:`las_vegas_turan` -- random Turan systems.
* :func:`shrink_edges` -- truncate every edge to its smallest vertices.
* :func:`corollary_pipeline` -- chain the above to certify p(n, r) <= |E|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, log

import numpy as np

from ._rng import derive_seed
from .hypercore import Hypergraph, k3, turan_property, turan_threshold

DEFAULT_RAW_EDGE_BUDGET = 10**6
DEFAULT_LAS_VEGAS_ATTEMPTS = 1000


class TooLargeError(ValueError):
    """Requested construction exceeds the raw-edge budget."""


class LasVegasFailure(RuntimeError):
    def __init__(self, attempts: int, edge_counts: list[int]):
        super().__init__(f"no Turan system found in {attempts} attempts")
        self.attempts = attempts
        self.edge_counts = edge_counts


@dataclass(frozen=True)
class ShiftParams:
    n: int
    r: int
    t: int = 1

    def __post_init__(self):
        if self.t < 1 or self.n % self.t:
            raise ValueError(f"t={self.t} must be a positive divisor of n={self.n}")
        if self.r < 2:
            raise ValueError("r must be >= 2")

    @property
    def k(self) -> int:
        """ceil((r/(r-1))^t) * n/t, in exact integer arithmetic."""
        r, t = self.r, self.t
        return -(-(r**t) // (r - 1) ** t) * (self.n // self.t)

    @property
    def num_lines(self) -> int:
        return self.r * self.t

    @property
    def raw_edge_count(self) -> int:
        k, t = self.k, self.t
        return comb(self.num_lines, t) * k**t * comb(k, self.n // t)


def shift_construction(p: ShiftParams, raw_edge_budget: int = DEFAULT_RAW_EDGE_BUDGET) -> Hypergraph:
    """Explicit n-uniform hypergraph with no panchromatic r-coloring.

    Vertices are grid cells (i, j), i in [k], j in [rt], flattened row-major
    to ``i * rt + j``.  For every t-set A of lines, every shift vector
    (i_a)_{a in A} in [k]^t and every (n/t)-subset B of [k], the edge is
    {((b + i_a) mod k, a) : a in A, b in B}.
    """
    if p.raw_edge_count > raw_edge_budget:
        raise TooLargeError(
            f"{p.raw_edge_count} raw edges exceed budget {raw_edge_budget}"
        )
    k, rt, t = p.k, p.num_lines, p.t
    edges = set()
    for A in combinations(range(rt), t):
        for B in combinations(range(k), p.n // t):
            for shifts in product(range(k), repeat=t):
                edges.add(
                    tuple(sorted(((b + s) % k) * rt + a for a, s in zip(A, shifts) for b in B))
                )
    return Hypergraph(k * rt, p.n, tuple(edges))


def blowup(H: Hypergraph, m: int) -> Hypergraph:
    """Replace each vertex v by the block {v*m, ..., v*m + m - 1}.

    The result is (m*n)-uniform with exactly as many edges as ``H``; a
    Turan system for r becomes a hypergraph with no panchromatic (m*r)-coloring.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    edges = tuple(tuple(v * m + i for v in e for i in range(m)) for e in H.edges)
    return Hypergraph(H.num_vertices * m, H.uniformity * m, edges)


def shrink_edges(H: Hypergraph, n_target: int) -> Hypergraph:
    """Keep the ``n_target`` smallest vertices of every edge, then deduplicate."""
    if not 1 <= n_target <= H.uniformity:
        raise ValueError(f"n_target={n_target} not in [1, {H.uniformity}]")
    return Hypergraph(H.num_vertices, n_target, tuple(e[:n_target] for e in H.edges))


def random_turan_draws(n: int, r: int, c: float = 1.0) -> int:
    """ceil(c * n^2 ln r / r * (r/(r-1))^n), the default number of random draws."""
    return int(np.ceil(c * n * n * log(r) / r * (r / (r - 1)) ** n))


def union_bound_edge_count(n: int, r: int, num_vertices: int, margin: float = 0.5) -> int:
    """Smallest m with C(|V|, s) * (1 - P)^m < margin.

    Here s is the Turan threshold and P = C(s, n)/C(|V|, n) is the probability
    that one uniform n-subset lands inside a fixed s-subset.  At that m the
    random construction succeeds with probability > 1 - margin.
    """
    s = turan_threshold(num_vertices, r)
    if s < n:
        raise ValueError(f"threshold {s} < n={n}: no Turan system on {num_vertices} vertices")
    p_hit = comb(s, n) / comb(num_vertices, n)
    if p_hit >= 1.0:
        return 1
    need = log(comb(num_vertices, s) / margin) / -np.log1p(-p_hit)
    return max(1, int(np.floor(need)) + 1)


def min_turan_vertices(n: int, r: int) -> int:
    """Smallest |V| whose Turan threshold is at least n."""
    v = n
    while turan_threshold(v, r) < n:
        v += 1
    return v


def random_turan(n: int, r: int, num_vertices: int | None = None, m: int | None = None,
                 seed: int = 0) -> Hypergraph:
    """Draw ``m`` uniform n-subsets of [num_vertices] with replacement.

    ``r`` only enters through the default ``m`` (draw-count formula with c = 1);
    ``num_vertices`` defaults to n^2.
    """
    if num_vertices is None:
        num_vertices = n * n
    if m is None:
        m = random_turan_draws(n, r)
    if num_vertices < n:
        raise ValueError("num_vertices must be >= n")
    rng = np.random.default_rng(seed)
    edges = [tuple(rng.choice(num_vertices, size=n, replace=False)) for _ in range(m)]
    return Hypergraph(num_vertices, n, tuple(edges))


@dataclass
class TuranResult:
    hypergraph: Hypergraph
    attempts: int
    seed: int
    attempt_seeds: list[int] = field(default_factory=list)


def las_vegas_turan(n: int, r: int, num_vertices: int | None = None, m: int | None = None,
                    seed: int = 0, max_attempts: int = DEFAULT_LAS_VEGAS_ATTEMPTS) -> TuranResult:
    """Resample :func:`random_turan` until the Turan property holds for ``r``.

    Attempt ``i`` uses seed ``derive_seed(seed, i)``, so the result does not
    depend on how attempts are scheduled.
    """
    counts = []
    for i in range(max_attempts):
        s = derive_seed(seed, i)
        H = random_turan(n, r, num_vertices, m, seed=s)
        counts.append(H.num_edges)
        if turan_property(H, r):
            return TuranResult(H, i + 1, s, [derive_seed(seed, j) for j in range(i + 1)])
    raise LasVegasFailure(max_attempts, counts)


@dataclass
class CorollaryResult:
    hypergraph: Hypergraph
    provenance: list[dict]

    @property
    def certified_bound(self) -> str:
        return self.provenance[-1]["certifies"]


def corollary_pipeline(n: int, r: int, k: int, seed: int = 0, num_vertices: int | None = None,
                       max_attempts: int = DEFAULT_LAS_VEGAS_ATTEMPTS) -> CorollaryResult:
    """Build an n-uniform hypergraph with no panchromatic r-coloring.

    With m = floor(r/k) and n1 = ceil(n/(m k)) * k: take a Turan system for
    (n1, k), blow it up by m, then shrink to uniformity n.  Since m*k <= r,
    having no panchromatic (m k)-coloring implies none for r colors.

    The Turan system is K3 when (n1, k) = (2, 2); otherwise it is sampled on
    ``num_vertices`` vertices (default: the fewest that admit one) with the
    union-bound edge count.
    """
    if not 2 <= k <= r:
        raise ValueError(f"need 2 <= k <= r, got k={k}, r={r}")
    m = r // k
    n1 = -(-n // (m * k)) * k
    steps: list[dict] = [{"step": "parameters", "n": n, "r": r, "k": k, "m": m, "n1": n1}]
    if (n1, k) == (2, 2):
        base = k3()
        steps.append({"step": "turan_witness", "source": "K3", "n": 2, "r": 2,
                      "num_vertices": 3, "edges": 3})
    else:
        nv = num_vertices if num_vertices is not None else min_turan_vertices(n1, k)
        draws = union_bound_edge_count(n1, k, nv)
        res = las_vegas_turan(n1, k, nv, draws, seed=seed, max_attempts=max_attempts)
        base = res.hypergraph
        steps.append({"step": "turan_witness", "source": "las_vegas", "n": n1, "r": k,
                      "num_vertices": nv, "draws": draws, "seed": seed,
                      "attempts": res.attempts, "attempt_seed": res.seed,
                      "edges": base.num_edges})
    H = blowup(base, m)
    steps.append({"step": "blowup", "m": m, "uniformity": H.uniformity,
                  "uncolorable_with": m * k, "edges": H.num_edges})
    assert H.uniformity >= n, "blow-up uniformity below target"
    if H.uniformity > n:
        H = shrink_edges(H, n)
        steps.append({"step": "shrink", "n_target": n, "edges": H.num_edges})
    steps.append({"step": "result", "num_vertices": H.num_vertices, "edges": H.num_edges,
                  "certifies": f"p({n},{r}) <= {H.num_edges}"})
    return CorollaryResult(H, steps)


def random_uniform_hypergraph(n: int, num_vertices: int, num_edges: int, seed: int = 0) -> Hypergraph:
    """``num_edges`` distinct n-subsets of [num_vertices], uniformly at random."""
    total = comb(num_vertices, n)
    if num_edges > total:
        raise ValueError(f"only {total} distinct {n}-subsets of {num_vertices} vertices")
    rng = np.random.default_rng(seed)
    if num_edges * 2 > total:
        allc = list(combinations(range(num_vertices), n))
        pick = rng.choice(total, size=num_edges, replace=False)
        return Hypergraph(num_vertices, n, tuple(allc[i] for i in sorted(pick)))
    edges: set[tuple[int, ...]] = set()
    while len(edges) < num_edges:
        batch = np.sort(rng.random((num_edges - len(edges), num_vertices)).argsort(axis=1)[:, :n], axis=1)
        for row in batch:
            if len(edges) == num_edges:
                break
            edges.add(tuple(int(v) for v in row))
    return Hypergraph(num_vertices, n, tuple(edges))
