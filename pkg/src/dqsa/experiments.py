"""Reproduction harness: summary-table comparison, phase and dissipation
sweeps, peak location, and comparison against the bundled reference tables.

Sweep evaluation is embarrassingly parallel; the env var ``DQSA_THREADS``
caps the worker count (default 1).  Results are emitted in grid order
regardless of completion order, and all output is deterministic: the same
inputs produce bitwise-identical CSV/JSON.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import UnknownTable, UnsupportedSize
from .gates import CONVENTIONS
from .search import RunConfig, report

# Reference summary row per size: the peak phase coefficient phi_p, the peak
# ("present") success probability, and the phi=1 ("grover") probability.
SUMMARY_PHI_P = {2: 0.9425, 3: 0.6723, 4: 0.6933, 5: 0.8661,
                 6: 0.9899, 7: 0.9906, 8: 0.9906, 9: 0.995}
SUMMARY_PRESENT = {2: 1.0, 3: 1.0, 4: 1.0, 5: 1.0,
                   6: 0.9635, 7: 0.8335, 8: 0.6503, 9: 0.4662}
SUMMARY_GROVER = {2: 1.0, 3: 0.9453, 4: 0.9613, 5: 0.9992,
                  6: 0.9635, 7: 0.8335, 8: 0.6503, 9: 0.4662}

GROVER_TOLERANCE = 5e-4
PRESENT_TOLERANCE = 1e-3
TABLE_TOLERANCE = 2e-3

AVAILABLE_TABLES = tuple(range(2, 12))

# Tables whose strong-dissipation cells are reproduced only by the
# "tabulated" gate convention; under the default composite convention they
# carry a known systematic offset (worst marked deviation < 9e-3).  See
# README "Known systematic offset".
OFFSET_TABLES = (3, 11)


@dataclass(frozen=True)
class ComparisonRow:
    label: str
    paper: float
    computed: float
    absdiff: float
    passed: bool
    tolerance: float


@dataclass(frozen=True)
class ComparisonReport:
    """Per-cell comparison rows; a row passes iff absdiff <= its tolerance."""

    rows: tuple
    tolerance: float

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def worst(self) -> float:
        return max((r.absdiff for r in self.rows), default=0.0)


def _row(label: str, ref: float, computed: float, tolerance: float) -> ComparisonRow:
    diff = abs(computed - ref)
    return ComparisonRow(label, ref, computed, diff, diff <= tolerance, tolerance)


def table1(n: int) -> tuple:
    """(phi_p, probability at phi_p, probability at phi=1) for size n."""
    if n not in SUMMARY_PHI_P:
        raise UnsupportedSize(f"summary table covers n=2..9, got {n}")
    phi_p = SUMMARY_PHI_P[n]
    present = report(RunConfig(n, "e" * n, phi_p)).marked_prob
    grover = report(RunConfig(n, "e" * n, 1.0)).marked_prob
    return (phi_p, present, grover)


def table1_comparison(ns=None, present_tolerance: float = PRESENT_TOLERANCE,
                      grover_tolerance: float = GROVER_TOLERANCE) -> ComparisonReport:
    """Compare computed peak/phi=1 probabilities against the reference row."""
    rows = []
    for n in ns or sorted(SUMMARY_PHI_P):
        _, present, grover = table1(n)
        rows.append(_row(f"n={n} present", SUMMARY_PRESENT[n], present, present_tolerance))
        rows.append(_row(f"n={n} grover", SUMMARY_GROVER[n], grover, grover_tolerance))
    return ComparisonReport(tuple(rows), present_tolerance)


def grover_closed_form(n: int) -> float:
    """sin^2((2k+1) asin(2^(-n/2))) with k = n-1 iterations."""
    return math.sin((2 * (n - 1) + 1) * math.asin(2 ** (-n / 2))) ** 2


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("DQSA_THREADS", "1")))
    except ValueError:
        return 1


def _evaluate(configs):
    """Evaluate reports for many configs, in order, optionally threaded."""
    w = _workers()
    if w == 1:
        return [report(c) for c in configs]
    with ThreadPoolExecutor(max_workers=w) as pool:
        return list(pool.map(report, configs))


def peak_search(n: int, marked: str, rates=(), convention: str = "composite") -> tuple:
    """(phi, rho) maximizing the marked probability over phi in (0, 1].

    Scans a step-1e-3 grid (first-maximum wins, so plateaus resolve toward
    smaller phi), then refines with one three-point parabolic fit.
    """
    grid = [k * 1e-3 for k in range(1, 1001)]
    configs = [RunConfig(n, marked, phi, rates, convention=convention) for phi in grid]
    rhos = [r.marked_prob for r in _evaluate(configs)]
    best = max(range(len(grid)), key=lambda i: (rhos[i], -i))
    phi0, rho0 = grid[best], rhos[best]
    if 0 < best < len(grid) - 1:
        ym, y0, yp = rhos[best - 1], rhos[best], rhos[best + 1]
        denom = ym - 2 * y0 + yp
        if denom < 0:
            phi_c = phi0 + 0.5e-3 * (ym - yp) / denom
            phi_c = min(max(phi_c, 1e-3), 1.0)
            rho_c = report(RunConfig(n, marked, phi_c, rates, convention=convention)).marked_prob
            if rho_c > rho0:
                return (phi_c, rho_c)
    return (phi0, rho0)


@dataclass(frozen=True)
class SweepSpec:
    """A 1-D sweep: over phi (axis="phase", fixed rates) or over a uniform
    rate scale g (axis="dissipation", fixed phi, rates = g * weights)."""

    n: int
    marked: str
    axis: str = "phase"
    start: float = 0.0
    stop: float = 1.0
    steps: int = 2
    rates: tuple = ()
    phi: float = 1.0
    weights: tuple = ()
    convention: str = "composite"

    def __post_init__(self):
        if self.axis not in ("phase", "dissipation"):
            raise ValueError(f"axis must be 'phase' or 'dissipation', got {self.axis!r}")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if self.axis == "phase" and not 0 <= self.start <= self.stop <= 2:
            raise ValueError(f"phase grid must lie in [0, 2], got [{self.start}, {self.stop}]")
        if self.axis == "dissipation" and not 0 <= self.start <= self.stop < 4:
            raise ValueError(f"rate grid must lie in [0, 4), got [{self.start}, {self.stop}]")
        object.__setattr__(self, "rates", tuple(float(g) for g in self.rates or (0.0,) * self.n))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights or (1.0,) * self.n))

    def grid(self) -> list:
        step = (self.stop - self.start) / (self.steps - 1)
        return [self.start + k * step for k in range(self.steps)]


def phase_sweep(spec: SweepSpec) -> list:
    """Samples (phi, tau, marked_prob, sum_unmarked, survival) over the grid."""
    if spec.axis != "phase":
        raise ValueError("phase_sweep requires axis='phase'")
    grid = spec.grid()
    configs = [RunConfig(spec.n, spec.marked, phi, spec.rates, convention=spec.convention)
               for phi in grid]
    out = []
    for phi, rep in zip(grid, _evaluate(configs)):
        tau = phi * math.pi / 2**spec.n
        out.append((phi, tau, rep.marked_prob, rep.sum_unmarked, rep.survival))
    return out


def dissipation_sweep(n: int, marked: str, phi: float, which="uniform",
                      grid=(0.0, 1.0, 11), convention: str = "composite") -> list:
    """Samples (gbar, phi, tau, marked_prob, sum_unmarked, survival) over a
    rate grid at fixed phi.

    ``which`` is "uniform" (every qubit gets gbar) or a length-n weight
    sequence (qubit v gets weight_v * gbar).
    """
    weights = (1.0,) * n if which == "uniform" else tuple(float(w) for w in which)
    if len(weights) != n:
        raise ValueError(f"expected {n} weights, got {len(weights)}")
    if isinstance(grid, tuple) and len(grid) == 3 and isinstance(grid[2], int):
        start, stop, steps = grid
        step = (stop - start) / (steps - 1)
        gvals = [start + k * step for k in range(steps)]
    else:
        gvals = [float(g) for g in grid]
    configs = [RunConfig(n, marked, phi, tuple(g * w for w in weights), convention=convention)
               for g in gvals]
    tau = phi * math.pi / 2**n
    out = []
    for g, rep in zip(gvals, _evaluate(configs)):
        out.append((g, phi, tau, rep.marked_prob, rep.sum_unmarked, rep.survival))
    return out


# Preset sweep configurations used by the shipped analyses: the two
# peak-phase dissipation anchors, the mixed-pattern family compared under
# equal rates, and the all-ground vs all-excited ordering pair.
PEAK_DISSIPATION_PRESETS = (
    dict(n=4, marked="egee", phi=0.45008, which="uniform", grid=(0.0, 1.0, 101)),
    dict(n=5, marked="geege", phi=0.86608, which="uniform", grid=(0.0, 1.0, 101)),
)
PATTERN_FAMILY_PRESET = ("eg", "geg", "gegg", "gegege")
EXTREME_PATTERN_PRESET = ("ggggg", "eeeee")


def _load_table(table_id: int):
    """Parse a bundled reference table: (n, rates, phis, marked, unmarked)."""
    if table_id not in AVAILABLE_TABLES:
        raise UnknownTable(f"no reference table {table_id}; available: {AVAILABLE_TABLES}")
    text = resources.files("dqsa").joinpath(f"data/table{table_id:02d}.csv").read_text()
    meta = {}
    marked = {}
    unmarked = {}
    for line in text.splitlines():
        if line.startswith("#"):
            stripped = line[1:].strip()
            if ":" in stripped:
                k, v = stripped.split(":", 1)
                if k.strip() in ("n", "rates", "phis"):
                    meta[k.strip()] = v.strip()
        elif line and not line.startswith("pattern,"):
            pat, phi, kind, value = line.split(",")
            key = (pat, float(phi))
            if kind == "marked":
                marked[key] = float(value)
            else:
                unmarked.setdefault(key, []).append(float(value))
    n = int(meta["n"])
    rates = tuple(float(Fraction(r.strip())) for r in meta["rates"].split(","))
    phis = tuple(float(p) for p in meta["phis"].split(","))
    return n, rates, phis, marked, unmarked


def appendix_reproduce(table_id: int, tolerance: float = TABLE_TOLERANCE,
                       convention: str = "composite") -> ComparisonReport:
    """Recompute every cell of a bundled reference table and compare.

    Marked cells are compared directly.  Remaining-state cells are compared
    as multisets (both sides sorted descending, then paired), because the
    source tables do not attribute those values to specific states.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    n, rates, phis, marked, unmarked = _load_table(table_id)
    rows = []
    for (pat, phi), ref in sorted(marked.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        rep = report(RunConfig(n, pat, phi, rates, convention=convention))
        prefix = f"table{table_id:02d} {pat} phi={phi:g}"
        rows.append(_row(f"{prefix} marked", ref, rep.marked_prob, tolerance))
        group = unmarked.get((pat, phi))
        if group:
            ref_sorted = sorted(group, reverse=True)
            comp_sorted = sorted(rep.unmarked.values(), reverse=True)
            for k, (rv, cv) in enumerate(zip(ref_sorted, comp_sorted)):
                rows.append(_row(f"{prefix} unmarked[{k}]", rv, cv, tolerance))
    return ComparisonReport(tuple(rows), tolerance)


def comparison_to_csv(rep: ComparisonReport) -> str:
    lines = ["label,paper,computed,absdiff,pass"]
    for r in rep.rows:
        lines.append(f"{r.label},{r.paper!r},{r.computed!r},{r.absdiff!r},{str(r.passed).lower()}")
    return "\n".join(lines) + "\n"


def comparison_to_json(rep: ComparisonReport) -> str:
    doc = {
        "tolerance": rep.tolerance,
        "all_pass": rep.all_pass,
        "rows": [
            {"label": r.label, "paper": r.paper, "computed": r.computed,
             "absdiff": r.absdiff, "pass": r.passed}
            for r in rep.rows
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def sweep_to_csv(samples: list, axis: str = "phase") -> str:
    """CSV emission; dissipation sweeps carry a leading gbar column."""
    if axis == "dissipation":
        lines = ["gbar,phi,tau,marked_prob,sum_unmarked,survival"]
    else:
        lines = ["phi,tau,marked_prob,sum_unmarked,survival"]
    for sample in samples:
        lines.append(",".join(repr(float(v)) for v in sample))
    return "\n".join(lines) + "\n"


def sweep_to_json(samples: list, axis: str = "phase") -> str:
    cols = (["gbar"] if axis == "dissipation" else []) + [
        "phi", "tau", "marked_prob", "sum_unmarked", "survival"]
    doc = [dict(zip(cols, (float(v) for v in sample))) for sample in samples]
    return json.dumps(doc, indent=2) + "\n"
