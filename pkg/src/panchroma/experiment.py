"""Seeded batch runs of the colorers over generated instance families."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import colorers
from ._rng import derive_seed
from .constructions import ShiftParams, random_uniform_hypergraph, shift_construction
from .hypercore import Hypergraph, OracleBudgetExceeded

FAMILIES = ("random", "thm5", "empty")
ROW_COLUMNS = ("trial", "seed", "num_vertices", "num_edges", "outcome", "attempts",
               "mean_bad", "mean_bad_colors")


@dataclass
class ExperimentSpec:
    method: str
    r: int
    family: str = "random"
    family_params: dict = field(default_factory=dict)
    trials: int = 100
    seed: int = 0
    max_attempts: int = colorers.DEFAULT_MAX_ATTEMPTS
    node_budget: int | None = None
    palette: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.method not in colorers.METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def make_instance(family: str, params: dict, seed: int) -> Hypergraph:
    if family == "random":
        return random_uniform_hypergraph(params["n"], params["num_vertices"], params["num_edges"], seed)
    if family == "thm5":
        return shift_construction(ShiftParams(params["n"], params["r"], params.get("t", 1)))
    if family == "empty":
        return Hypergraph(params["num_vertices"], params["n"], ())
    raise ValueError(f"unknown family {family!r}")


def run_method(H: Hypergraph, spec: ExperimentSpec, seed: int) -> colorers.ColorerOutcome:
    if spec.method == "greedy":
        return colorers.greedy(H, spec.r)
    if spec.method == "alteration":
        return colorers.alteration(H, spec.r, seed=seed, max_attempts=spec.max_attempts,
                                   palette=spec.palette)
    if spec.method == "simplex":
        return colorers.simplex(H, spec.r, palette=spec.palette, seed=seed,
                                max_attempts=spec.max_attempts)
    return colorers.exact(H, spec.r, spec.node_budget)


def run_trial(spec: ExperimentSpec, index: int) -> tuple[dict, float]:
    """One trial; returns (deterministic row, wall seconds)."""
    seed = derive_seed(spec.seed, index)
    t0 = time.perf_counter()
    H = make_instance(spec.family, spec.family_params, seed)
    row = {"trial": index, "seed": seed, "num_vertices": H.num_vertices, "num_edges": H.num_edges}
    try:
        out = run_method(H, spec, derive_seed(seed, 1))
    except OracleBudgetExceeded as exc:
        row.update(outcome="undecided", attempts=exc.nodes, mean_bad="", mean_bad_colors="")
        return row, time.perf_counter() - t0
    if out.success:
        outcome = "success"
    elif out.reason == "impossible":
        outcome = "impossible"
    else:
        outcome = "undecided"
    bad = [s.get("conflicts", s.get("bad_pairs")) for s in out.stats if "bad_colors" in s]
    badc = [s["bad_colors"] for s in out.stats if "bad_colors" in s]
    row.update(
        outcome=outcome,
        attempts=out.attempts,
        mean_bad=repr(float(np.mean(bad))) if bad else "",
        mean_bad_colors=repr(float(np.mean(badc))) if badc else "",
    )
    return row, time.perf_counter() - t0


def _trial(args):
    return run_trial(*args)


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    rows: list[dict]
    wall_times: list[float]

    @property
    def success_rate(self) -> float:
        return sum(r["outcome"] == "success" for r in self.rows) / len(self.rows)

    def aggregate(self) -> dict:
        ok = [r["attempts"] for r in self.rows if r["outcome"] == "success"]
        counts = {k: sum(r["outcome"] == k for r in self.rows)
                  for k in ("success", "impossible", "undecided")}
        quant = ({f"p{q}": float(np.percentile(ok, q)) for q in (50, 90, 100)} if ok else {})
        return {
            "spec": asdict(self.spec),
            "trials": len(self.rows),
            "outcomes": counts,
            "success_rate": self.success_rate,
            "attempt_quantiles": quant,
            "wall_time_total": float(sum(self.wall_times)),
            "wall_times": self.wall_times,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=ROW_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows)
        return buf.getvalue()


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentReport:
    """Run all trials; rows come back in trial order regardless of ``workers``."""
    jobs = [(spec, i) for i in range(spec.trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial, jobs))
    else:
        results = [_trial(j) for j in jobs]
    return ExperimentReport(spec, [r for r, _ in results], [t for _, t in results])
