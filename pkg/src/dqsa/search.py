"""The search iteration: oracle + diffusion applied matrix-free.

One run prepares |g...g>, applies the W layer once, then `iterations` rounds
of (oracle, diffusion).  Everything is expressed as diagonal multiplies and
single-qubit sweeps, so a run costs O(iterations * n * 2^n).  Gate caches are
keyed by the full construction parameters and are safe for concurrent reads.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .basis import StateVector, index_of, pattern_of, validate_pattern
from .errors import DimensionMismatch
from .gates import PhasePoint, oracle_gate, validate_rates, walsh_layer
from .kernels import apply_diagonal_inplace, apply_single_qubit_inplace


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one search run.

    ``iterations`` defaults to n - 1, the count that recovers the standard
    Grover success probabilities at phi=1 with no dissipation.
    """

    n: int
    marked: str
    phi: float
    rates: tuple = ()
    iterations: int | None = None
    convention: str = "composite"

    def __post_init__(self):
        validate_pattern(self.marked)
        if len(self.marked) != self.n:
            raise DimensionMismatch(
                f"marked pattern length {len(self.marked)} vs n={self.n}"
            )
        object.__setattr__(self, "rates", validate_rates(self.rates or (0.0,) * self.n, self.n))
        object.__setattr__(self, "phi", float(self.phi))
        if self.iterations is None:
            object.__setattr__(self, "iterations", max(1, self.n - 1))
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")

    @property
    def phase(self) -> PhasePoint:
        return PhasePoint(self.phi, self.n)


@dataclass(frozen=True)
class ProbabilityReport:
    """Marked probability, every remaining-state probability (in index
    order), and the total survival probability."""

    marked_pattern: str
    marked_prob: float
    unmarked: dict
    survival: float

    @property
    def sum_unmarked(self) -> float:
        return float(sum(self.unmarked.values()))


@lru_cache(maxsize=512)
def _layer(n: int, rates: tuple, convention: str):
    return walsh_layer(n, rates, convention)


@lru_cache(maxsize=4096)
def _oracle_entries(pattern: str, phi: float, rates: tuple) -> np.ndarray:
    n = len(pattern)
    return oracle_gate(pattern, PhasePoint(phi, n), rates).entries


def run(config: RunConfig) -> StateVector:
    """Final (unnormalized) state of the search run."""
    n = config.n
    mats = _layer(n, config.rates, config.convention).mats
    marked_entries = _oracle_entries(config.marked, config.phi, config.rates)
    ground_entries = _oracle_entries("g" * n, config.phi, config.rates)
    scale = np.exp(1j * config.phase.beta)

    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = 1.0
    for v in range(1, n + 1):
        apply_single_qubit_inplace(amps, n, v, mats[v - 1])
    for _ in range(config.iterations):
        apply_diagonal_inplace(amps, marked_entries)
        for v in range(1, n + 1):
            apply_single_qubit_inplace(amps, n, v, mats[v - 1])
        apply_diagonal_inplace(amps, ground_entries)
        for v in range(1, n + 1):
            apply_single_qubit_inplace(amps, n, v, mats[v - 1])
        amps *= scale
    return StateVector(n, amps)


def report(config: RunConfig) -> ProbabilityReport:
    """Probabilities of the final state, split marked vs remaining."""
    state = run(config)
    probs = np.abs(state.amps) ** 2
    ix = index_of(config.marked)
    unmarked = {
        pattern_of(i, config.n): float(probs[i])
        for i in range(2**config.n)
        if i != ix
    }
    return ProbabilityReport(
        marked_pattern=config.marked,
        marked_prob=float(probs[ix]),
        unmarked=unmarked,
        survival=float(probs.sum()),
    )


def marked_amplitude_trace(config: RunConfig) -> list:
    """Marked-state amplitude after each iteration (length = iterations)."""
    n = config.n
    mats = _layer(n, config.rates, config.convention).mats
    marked_entries = _oracle_entries(config.marked, config.phi, config.rates)
    ground_entries = _oracle_entries("g" * n, config.phi, config.rates)
    scale = np.exp(1j * config.phase.beta)
    ix = index_of(config.marked)

    amps = np.zeros(2**n, dtype=np.complex128)
    amps[0] = 1.0
    for v in range(1, n + 1):
        apply_single_qubit_inplace(amps, n, v, mats[v - 1])
    trace = []
    for _ in range(config.iterations):
        apply_diagonal_inplace(amps, marked_entries)
        for v in range(1, n + 1):
            apply_single_qubit_inplace(amps, n, v, mats[v - 1])
        apply_diagonal_inplace(amps, ground_entries)
        for v in range(1, n + 1):
            apply_single_qubit_inplace(amps, n, v, mats[v - 1])
        amps *= scale
        trace.append(complex(amps[ix]))
    return trace
