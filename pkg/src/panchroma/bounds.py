"""Lower and upper bounds on p(n, r), the fewest edges of an n-uniform
hypergraph with no panchromatic r-coloring.

Each bound is evaluated twice: directly in floating point (may overflow to
``inf``) and in log space (always finite for positive values).  Unspecified
constants default to 1.0 and are user-supplied; bounds depending on them are
flagged ``constant_free=False`` and are evaluated, not verified.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

DEFAULT_CONSTANTS = {"c": 1.0, "c_prime": 1.0, "c1": 1.0, "c2": 1.0, "alpha": 1.0, "n0": 1.0}

_ALIASES = {"c'": "c_prime", "cprime": "c_prime", "c′": "c_prime", "α": "alpha"}

CSV_COLUMNS = ("n", "r", "name", "kind", "value", "log_value", "constant_free", "applicable")


def normalize_constants(constants: dict[str, float] | None) -> dict[str, float]:
    out = dict(DEFAULT_CONSTANTS)
    for key, val in (constants or {}).items():
        key = _ALIASES.get(key, key)
        if key not in DEFAULT_CONSTANTS:
            raise ValueError(f"unknown constant {key!r}; expected one of {sorted(DEFAULT_CONSTANTS)}")
        if not val > 0:
            raise ValueError(f"constant {key} must be positive")
        out[key] = float(val)
    return out


@dataclass(frozen=True)
class BoundsParams:
    n: int
    r: int
    constants: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 2 or self.r < 2:
            raise ValueError("need n >= 2 and r >= 2")
        object.__setattr__(self, "constants", normalize_constants(self.constants))


@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str
    value: float
    log_value: float | None
    constant_free: bool
    applicable: bool


@dataclass
class BoundsReport:
    n: int
    r: int
    constants: dict[str, float]
    entries: list[BoundEntry]

    def __getitem__(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def rows(self) -> list[dict]:
        return [{"n": self.n, "r": self.r, **asdict(e)} for e in self.entries]


# -- formulas -----------------------------------------------------------------

def _pow(base: float, exp: float) -> float:
    try:
        return base**exp
    except OverflowError:
        return math.inf


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _ratio_pow(n, r):
    return _pow(r / (r - 1), n)


def _log_ratio_pow(n, r):
    return n * math.log(r / (r - 1))


@dataclass(frozen=True)
class _Formula:
    name: str
    kind: str
    constant_free: bool
    direct: Callable[[int, int, dict], float]
    log: Callable[[int, int, dict], float | None]
    regime: Callable[[int, int, dict], bool]


def _always(n, r, C):
    return True


def _log_or_none(x: float) -> float | None:
    return math.log(x) if x > 0 else None


FORMULAS: tuple[_Formula, ...] = (
    _Formula(
        "lower_evident", "lower", True,
        lambda n, r, C: _ratio_pow(n, r) / r,
        lambda n, r, C: _log_ratio_pow(n, r) - math.log(r),
        _always,
    ),
    _Formula(
        "lower_thm2", "lower", True,
        lambda n, r, C: math.exp(-1) * (r - 1) / (n - 1) * _exp((n - 1) / (r - 1)),
        lambda n, r, C: -1.0 + math.log((r - 1) / (n - 1)) + (n - 1) / (r - 1),
        lambda n, r, C: n >= r,
    ),
    _Formula(
        "lower_thm2_sharp", "lower", True,
        lambda n, r, C: (r - 1) / (n - 1) * _pow((n * r - r) / (n * r - n), n),
        lambda n, r, C: math.log((r - 1) / (n - 1)) + n * math.log((n * r - r) / (n * r - n)),
        lambda n, r, C: n >= r,
    ),
    _Formula(
        "lower_prop4", "lower", True,
        lambda n, r, C: float(n // r),
        lambda n, r, C: _log_or_none(n // r),
        lambda n, r, C: n >= r,
    ),
    _Formula(
        "lower_thm2prime", "lower", False,
        lambda n, r, C: C["c"] * max(n**0.25 / (r * math.sqrt(r)), 1 / math.sqrt(n)) * _ratio_pow(n, r),
        lambda n, r, C: (math.log(C["c"]) + max(0.25 * math.log(n) - 1.5 * math.log(r), -0.5 * math.log(n))
                         + _log_ratio_pow(n, r)),
        lambda n, r, C: n >= r and r <= C["c_prime"] * n / math.log(n),
    ),
    _Formula(
        "lower_thm2doubleprime", "lower", False,
        lambda n, r, C: C["c"] * r / n * _exp(n / r),
        lambda n, r, C: math.log(C["c"] * r / n) + n / r,
        lambda n, r, C: n >= r and math.sqrt(n) <= r <= C["c_prime"] * n / math.log(n),
    ),
    _Formula(
        "lower_shabanov", "lower", False,
        lambda n, r, C: C["c"] / r**2 * (n / math.log(n)) ** (1 / 3) * _ratio_pow(n, r),
        lambda n, r, C: (math.log(C["c"]) - 2 * math.log(r) + math.log(n / math.log(n)) / 3
                         + _log_ratio_pow(n, r)),
        lambda n, r, C: r < n,
    ),
    _Formula(
        "lower_rozovskaya", "lower", False,
        lambda n, r, C: C["c"] / r**2 * math.sqrt(n / math.log(n)) * _ratio_pow(n, r),
        lambda n, r, C: (math.log(C["c"]) - 2 * math.log(r) + 0.5 * math.log(n / math.log(n))
                         + _log_ratio_pow(n, r)),
        lambda n, r, C: r <= n / (2 * math.log(n)),
    ),
    _Formula(
        "kostochka_lower", "lower", False,
        lambda n, r, C: _exp(C["c1"] * n / r) / r,
        lambda n, r, C: C["c1"] * n / r - math.log(r),
        _always,
    ),
    _Formula(
        "kostochka_upper", "upper", False,
        lambda n, r, C: r * _exp(C["c2"] * n / r),
        lambda n, r, C: math.log(r) + C["c2"] * n / r,
        _always,
    ),
    _Formula(
        "shabanov_upper_1", "upper", False,
        lambda n, r, C: C["c"] * n**2 * math.log(r) / r**2 * _ratio_pow(n, r),
        lambda n, r, C: (math.log(C["c"] * math.log(r)) + 2 * math.log(n) - 2 * math.log(r)
                         + _log_ratio_pow(n, r)),
        lambda n, r, C: 3 <= r <= C["c_prime"] * math.sqrt(n) and n > C["n0"],
    ),
    _Formula(
        "shabanov_upper_2", "upper", False,
        lambda n, r, C: C["c"] * n**1.5 * math.log(r) / r * _ratio_pow(n, r),
        lambda n, r, C: (math.log(C["c"] * math.log(r)) + 1.5 * math.log(n) - math.log(r)
                         + _log_ratio_pow(n, r)),
        lambda n, r, C: (r <= C["c_prime"] * n ** (2 / 3) and C["n0"] < n <= C["c_prime"] * r**2),
    ),
    _Formula(
        "shabanov_upper_3", "upper", False,
        lambda n, r, C: C["c"] * max(n**2 / r, n**1.5) * math.log(r) * _ratio_pow(n, r),
        lambda n, r, C: (math.log(C["c"] * math.log(r)) + max(2 * math.log(n) - math.log(r), 1.5 * math.log(n))
                         + _log_ratio_pow(n, r)),
        _always,
    ),
    _Formula(
        "upper_thm1", "upper", False,
        lambda n, r, C: C["c"] * n**2 * math.log(r) / r * _ratio_pow(n, r),
        lambda n, r, C: (math.log(C["c"] * math.log(r)) + 2 * math.log(n) - math.log(r)
                         + _log_ratio_pow(n, r)),
        _always,
    ),
    _Formula(
        "upper_corollary", "upper", False,
        lambda n, r, C: C["c"] * (n / r) ** 2 * math.log(n / r) * _exp(n / r),
        # ln(n/r) <= 0 for n <= r: the formula is non-positive there and has no logarithm
        lambda n, r, C: (math.log(C["c"]) + 2 * math.log(n / r) + math.log(math.log(n / r)) + n / r
                         if n > r else None),
        lambda n, r, C: n < r * r and 2 <= C["alpha"] * n / r <= r,
    ),
)

FORMULA_NAMES = tuple(f.name for f in FORMULAS)


def direct_value(name: str, n: int, r: int, constants: dict | None = None) -> float:
    """Straight floating-point evaluation of one bound (may be ``inf``)."""
    C = normalize_constants(constants)
    return next(f for f in FORMULAS if f.name == name).direct(n, r, C)


def evaluate_bounds(p: BoundsParams) -> BoundsReport:
    """Every bound at (n, r), with regime flags; nothing is omitted."""
    n, r, C = p.n, p.r, p.constants
    entries = []
    for f in FORMULAS:
        log_value = f.log(n, r, C)
        value = f.direct(n, r, C)
        if math.isinf(value) and log_value is not None:
            value = _exp(log_value)
        entries.append(BoundEntry(f.name, f.kind, value, log_value, f.constant_free,
                                  bool(f.regime(n, r, C))))
    return BoundsReport(n, r, C, entries)


def grid(n_range: Iterable[int], r_range: Iterable[int]) -> list[tuple[int, int]]:
    """All (n, r) with r <= n drawn from the two ranges, sorted."""
    rs = list(r_range)
    return sorted((n, r) for n in n_range for r in rs if 2 <= r <= n)


def bounds_table(cells: Iterable[tuple[int, int]], constants: dict | None = None) -> list[BoundsReport]:
    cells = sorted(set(cells))
    if not cells:
        raise ValueError("empty grid")
    return [evaluate_bounds(BoundsParams(n, r, dict(constants or {}))) for n, r in cells]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return repr(x)
    return str(x)


def table_to_csv(reports: list[BoundsReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        for row in rep.rows():
            w.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def table_to_json(reports: list[BoundsReport]) -> str:
    def clean(x):
        return None if isinstance(x, float) and not math.isfinite(x) else x

    payload = [
        {"n": rep.n, "r": rep.r, "constants": rep.constants,
         "entries": [{k: clean(v) for k, v in asdict(e).items()} for e in rep.entries]}
        for rep in reports
    ]
    return json.dumps(payload, indent=1)
