"""Hypergraphs, colorings, panchromatic checks and the exact colorability oracle.

Vertices and colors are 0-based everywhere.  A coloring is *panchromatic* for
a hypergraph when every edge contains at least one vertex of every color.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

DEFAULT_NODE_BUDGET = 10**8
NODE_BUDGET_ENV = "PANCHROMA_NODE_BUDGET"


class OracleBudgetExceeded(RuntimeError):
    """The exact oracle ran out of nodes before reaching a verdict."""

    def __init__(self, nodes: int, budget: int):
        super().__init__(f"undecided: expanded {nodes} nodes (budget {budget})")
        self.nodes = nodes
        self.budget = budget


@dataclass(frozen=True)
class Hypergraph:
    """An n-uniform hypergraph in canonical form.

    Edges are sorted tuples; the edge list is deduplicated and sorted, so two
    hypergraphs built from permuted or repeated edge lists compare equal.
    """

    num_vertices: int
    uniformity: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        n, nv = self.uniformity, self.num_vertices
        if n < 1:
            raise ValueError(f"uniformity must be >= 1, got {n}")
        if nv < n:
            raise ValueError(f"num_vertices ({nv}) < uniformity ({n})")
        canon = set()
        for e in self.edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != n or len(set(t)) != n:
                raise ValueError(f"edge {list(e)} is not a set of {n} vertices")
            if t[0] < 0 or t[-1] >= nv:
                raise ValueError(f"edge {list(e)} has a vertex outside [0, {nv})")
            canon.add(t)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        # bitset shadow: bit v set iff v in edge
        return tuple(sum(1 << v for v in e) for e in self.edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        if not self.edges:
            return np.zeros((0, self.uniformity), dtype=np.int64)
        return np.asarray(self.edges, dtype=np.int64)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex."""
        inc: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def to_dict(self) -> dict:
        return {
            "n": self.uniformity,
            "num_vertices": self.num_vertices,
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Hypergraph":
        return cls(int(d["num_vertices"]), int(d["n"]), tuple(tuple(e) for e in d["edges"]))


def complete_hypergraph(num_vertices: int, n: int) -> Hypergraph:
    return Hypergraph(num_vertices, n, tuple(combinations(range(num_vertices), n)))


def k3() -> Hypergraph:
    """The triangle, the smallest 2-uniform hypergraph with no panchromatic 2-coloring."""
    return complete_hypergraph(3, 2)


@dataclass(frozen=True)
class Coloring:
    num_colors: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.num_colors < 1:
            raise ValueError("num_colors must be >= 1")
        a = tuple(int(c) for c in self.assignment)
        for c in a:
            if not 0 <= c < self.num_colors:
                raise ValueError(f"color {c} outside [0, {self.num_colors})")
        object.__setattr__(self, "assignment", a)

    def to_dict(self) -> dict:
        return {"r": self.num_colors, "assignment": list(self.assignment)}

    @classmethod
    def from_dict(cls, d: dict) -> "Coloring":
        return cls(int(d["r"]), tuple(d["assignment"]))


@dataclass(frozen=True, order=True)
class Violation:
    """Edge ``edge_index`` contains no vertex of color ``missing_color``."""

    edge_index: int
    missing_color: int


def _check_dims(H: Hypergraph, c: Coloring) -> None:
    if len(c.assignment) != H.num_vertices:
        raise ValueError(
            f"coloring has {len(c.assignment)} entries, hypergraph has {H.num_vertices} vertices"
        )


def _presence(H: Hypergraph, c: Coloring) -> np.ndarray:
    """Boolean (|E|, r) matrix: edge i contains color q."""
    pres = np.zeros((H.num_edges, c.num_colors), dtype=bool)
    if H.num_edges:
        colors = np.asarray(c.assignment, dtype=np.int64)[H.edge_array]
        rows = np.repeat(np.arange(H.num_edges), H.uniformity)
        pres[rows, colors.ravel()] = True
    return pres


def is_panchromatic(H: Hypergraph, c: Coloring) -> tuple[bool, Violation | None]:
    """Return ``(ok, first_violation)``; the violation is lexicographically first."""
    _check_dims(H, c)
    missing = np.argwhere(~_presence(H, c))
    if len(missing) == 0:
        return True, None
    e, q = missing[0]
    return False, Violation(int(e), int(q))


def find_missing_pairs(H: Hypergraph, c: Coloring) -> list[Violation]:
    """All (edge, color) pairs where the edge lacks the color, in lexicographic order."""
    _check_dims(H, c)
    return [Violation(int(e), int(q)) for e, q in np.argwhere(~_presence(H, c))]


def turan_threshold(num_vertices: int, r: int) -> int:
    """Size ceil((r-1)|V|/r) of the subsets that must each contain an edge."""
    return -(-(r - 1) * num_vertices // r)


def turan_property(H: Hypergraph, r: int) -> bool:
    """True iff every vertex subset of size ceil((r-1)|V|/r) contains an edge.

    Only subsets of exactly the threshold size are enumerated; containing an
    edge is monotone under taking supersets.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    s = turan_threshold(H.num_vertices, r)
    if s < H.uniformity or not H.edges:
        return False
    masks = H.edge_masks
    for subset in combinations(range(H.num_vertices), s):
        smask = sum(1 << v for v in subset)
        if not any(m & smask == m for m in masks):
            return False
    return True


def node_budget_from_env(default: int = DEFAULT_NODE_BUDGET) -> int:
    raw = os.environ.get(NODE_BUDGET_ENV)
    return int(raw) if raw else default


def _components(H: Hypergraph) -> list[tuple[list[int], list[int]]]:
    """Connected components as (vertices, edge indices); isolated vertices dropped."""
    parent = list(range(H.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in H.edges:
        root = find(e[0])
        for v in e[1:]:
            rv = find(v)
            if rv != root:
                parent[rv] = root
    groups: dict[int, tuple[set, list]] = {}
    for i, e in enumerate(H.edges):
        root = find(e[0])
        verts, eds = groups.setdefault(root, (set(), []))
        verts.update(e)
        eds.append(i)
    return [(sorted(v), eds) for v, eds in groups.values()]


class _Counter:
    def __init__(self, budget: int):
        self.nodes = 0
        self.budget = budget


def _search_component(
    H: Hypergraph, verts: list[int], eidx: list[int], r: int, counter: _Counter
) -> dict[int, int] | None:
    local_edges = [H.edges[i] for i in eidx]
    inc: dict[int, list[int]] = {v: [] for v in verts}
    for j, e in enumerate(local_edges):
        for v in e:
            inc[v].append(j)
    # most-constrained-first: descending degree, ties by index
    order = sorted(verts, key=lambda v: (-len(inc[v]), v))
    num = len(order)
    ne = len(local_edges)
    cnt = [[0] * r for _ in range(ne)]
    distinct = [0] * ne
    uncol = [len(e) for e in local_edges]
    choice = [-1] * num
    # maxused[p] = largest color used among positions < p (colors are
    # interchangeable, so position p may open at most one new color)
    maxused = [-1] * (num + 1)

    def assign(v, c):
        ok = True
        for j in inc[v]:
            uncol[j] -= 1
            row = cnt[j]
            if row[c] == 0:
                distinct[j] += 1
            row[c] += 1
            if uncol[j] + distinct[j] < r:
                ok = False
        return ok

    def undo(v, c):
        for j in inc[v]:
            uncol[j] += 1
            row = cnt[j]
            row[c] -= 1
            if row[c] == 0:
                distinct[j] -= 1

    pos = 0
    while True:
        if pos == num:
            return {order[p]: choice[p] for p in range(num)}
        if pos < 0:
            return None
        v = order[pos]
        c = choice[pos]
        if c >= 0:
            undo(v, c)
        limit = min(r, maxused[pos] + 2)
        c += 1
        while c < limit:
            counter.nodes += 1
            if counter.nodes > counter.budget:
                raise OracleBudgetExceeded(counter.nodes, counter.budget)
            if assign(v, c):
                break
            undo(v, c)
            c += 1
        if c < limit:
            choice[pos] = c
            maxused[pos + 1] = max(maxused[pos], c)
            pos += 1
        else:
            choice[pos] = -1
            pos -= 1


def exact_panchromatic_decision(
    H: Hypergraph, r: int, node_budget: int | None = None
) -> Coloring | None:
    """Find a panchromatic r-coloring of ``H`` or prove none exists.

    Backtracking over vertices with a per-edge feasibility test (uncolored
    vertices plus distinct colors present must stay >= r), color-symmetry
    breaking, and independent search per connected component.

    Returns ``None`` when no panchromatic r-coloring exists.  Raises
    :class:`OracleBudgetExceeded` when more than ``node_budget`` nodes are
    expanded; the default budget is read from ``PANCHROMA_NODE_BUDGET``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    budget = node_budget_from_env() if node_budget is None else node_budget
    assignment = [0] * H.num_vertices
    if r == 1 or not H.edges:
        return Coloring(r, tuple(assignment))
    if H.uniformity < r:
        return None
    counter = _Counter(budget)
    for verts, eidx in _components(H):
        sol = _search_component(H, verts, eidx, r, counter)
        if sol is None:
            return None
        for v, c in sol.items():
            assignment[v] = c
    return Coloring(r, tuple(assignment))


# -- JSON interchange -------------------------------------------------------

def load_hypergraph(path: str | os.PathLike) -> Hypergraph:
    with open(path) as fh:
        return Hypergraph.from_dict(json.load(fh))


def save_hypergraph(H: Hypergraph, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        json.dump(H.to_dict(), fh)
        fh.write("\n")


def load_coloring(path: str | os.PathLike) -> Coloring:
    with open(path) as fh:
        return Coloring.from_dict(json.load(fh))


def save_coloring(c: Coloring, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        json.dump(c.to_dict(), fh)
        fh.write("\n")
