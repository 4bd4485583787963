"""Gate constructors: damped Walsh gate, phase oracle, and diffusion.

All times enter through the dimensionless control phase ``phi`` = beta/pi;
the matching evolution time in natural units is ``tau`` = phi*pi/2^n.
Dissipation rates ``g_v`` are dimensionless and must stay below 4, where the
detuning factor xi = sqrt(16 - g^2)/4 becomes non-real.

Two conventions exist for how the rate enters the one-qubit W gate:

* ``"composite"`` (default): the closed form realized exactly by the
  three-pulse composition (see :func:`dqsa.synthesis.compose_w`); damping
  prefactor exp(-pi*g/(16*xi)) and diagonal asymmetry g/(4*xi).
* ``"tabulated"``: the variant consistent with the bundled strong-dissipation
  reference tables; prefactor exp(-pi*g*xi/16) and asymmetry g*xi/4, with
  the same off-diagonal 1/xi.

The two agree to O(g^2) at weak rates and differ at the percent level as g
approaches 1; see README "Known systematic offset" for measured numbers.
The composite gate is a contraction on the whole domain 0 <= g < 4; the
tabulated variant is one only up to g ~ 2.28 (well past every bundled
table's rates, which stay below 1), and amplifies beyond that.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .basis import DenseGate, DiagonalGate, StateVector, apply_single_qubit, index_of, validate_pattern
from .errors import DimensionMismatch, NegativePhase, OverdampedQubit

CONVENTIONS = ("composite", "tabulated")


@dataclass(frozen=True)
class PhasePoint:
    """Control phase phi (in units of pi) for an n-qubit register."""

    phi: float
    n: int

    def __post_init__(self):
        if self.phi < 0:
            raise NegativePhase(f"phi must be non-negative, got {self.phi}")

    @property
    def beta(self) -> float:
        """Oracle phase in radians: beta = phi*pi."""
        return self.phi * math.pi

    @property
    def tau(self) -> float:
        """Evolution time in natural units: tau = phi*pi/2^n."""
        return self.phi * math.pi / 2**self.n


def beta(phase: PhasePoint) -> float:
    """Oracle phase in radians."""
    return phase.beta


def validate_rates(rates, n: int | None = None) -> tuple[float, ...]:
    """Normalize rates to a tuple of non-negative floats, checking length."""
    out = tuple(float(g) for g in rates)
    if any(g < 0 for g in out):
        raise ValueError(f"dissipation rates must be non-negative, got {out}")
    if n is not None and len(out) != n:
        raise DimensionMismatch(f"expected {n} rates, got {len(out)}")
    return out


def _check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    return convention


def xi_factor(g: float) -> float:
    """Detuning factor xi = sqrt(16 - g^2)/4; requires 0 <= g < 4."""
    if g >= 4:
        raise OverdampedQubit(f"rate {g} >= 4: xi non-real, W gate undefined")
    if g < 0:
        raise ValueError(f"dissipation rate must be non-negative, got {g}")
    return math.sqrt(16.0 - g * g) / 4.0


def w_gate(g: float, convention: str = "composite") -> np.ndarray:
    """Damped Walsh gate as a 2x2 array in (g, e) ordering.

    At g=0 both conventions reduce to the Hadamard gate.
    """
    _check_convention(convention)
    xi = xi_factor(g)
    if convention == "composite":
        asym = g / (4.0 * xi)
        pre = math.exp(-math.pi * g / (16.0 * xi)) / math.sqrt(2.0)
    else:
        asym = g * xi / 4.0
        pre = math.exp(-math.pi * g * xi / 16.0) / math.sqrt(2.0)
    return pre * np.array(
        [[1.0 + asym, 1.0 / xi], [1.0 / xi, -(1.0 - asym)]], dtype=np.complex128
    )


@dataclass(frozen=True, eq=False)
class WalshLayer:
    """One W gate per qubit, applied as n single-qubit sweeps."""

    n: int
    mats: tuple
    convention: str

    def apply(self, state: StateVector) -> StateVector:
        if state.n != self.n:
            raise DimensionMismatch(f"state n={state.n} vs layer n={self.n}")
        for v in range(1, self.n + 1):
            state = apply_single_qubit(state, v, self.mats[v - 1])
        return state

    def dense(self) -> DenseGate:
        m = self.mats[0]
        for v in range(1, self.n):
            m = np.kron(m, self.mats[v])
        return DenseGate(self.n, m)


def walsh_layer(n: int, rates, convention: str = "composite") -> WalshLayer:
    """W(g_1) x ... x W(g_n) as a sweep-wise layer."""
    _check_convention(convention)
    rates = validate_rates(rates, n)
    mats = tuple(w_gate(g, convention) for g in rates)
    return WalshLayer(n, mats, convention)


@lru_cache(maxsize=256)
def _excited_rate_sums(n: int, rates: tuple) -> np.ndarray:
    """For each basis index y, the summed rates of y's excited qubits."""
    bits = (np.arange(2**n)[:, None] >> np.arange(n - 1, -1, -1)[None, :]) & 1
    out = bits @ np.asarray(rates, dtype=np.float64)
    out.setflags(write=False)
    return out


def damping_entries(n: int, phase: PhasePoint, rates) -> np.ndarray:
    """Per-basis-state damping factors exp(-(tau/2) * sum of excited rates)."""
    rates = validate_rates(rates, n)
    return np.exp(-0.5 * phase.tau * _excited_rate_sums(n, rates))


def oracle_gate(x: str, phase: PhasePoint, rates) -> DiagonalGate:
    """Diagonal phase oracle: damping on every state, extra e^{i*beta} on x."""
    validate_pattern(x)
    n = len(x)
    if phase.n != n:
        raise DimensionMismatch(f"pattern length {n} vs phase n={phase.n}")
    entries = damping_entries(n, phase, rates).astype(np.complex128)
    entries[index_of(x)] *= np.exp(1j * phase.beta)
    return DiagonalGate(n, entries)


def diffusion_gate(n: int, phase: PhasePoint, rates, convention: str = "composite") -> DenseGate:
    """Dense diffusion gate e^{i*beta} * W_layer * P_{g...g} * W_layer."""
    if phase.n != n:
        raise DimensionMismatch(f"n={n} vs phase n={phase.n}")
    w = walsh_layer(n, rates, convention).dense().matrix
    p = oracle_gate("g" * n, phase, rates).entries
    mat = np.exp(1j * phase.beta) * (w * p[None, :]) @ w
    return DenseGate(n, mat)


def apply_diffusion(state: StateVector, layer: WalshLayer, ground_oracle: DiagonalGate,
                    phase: PhasePoint) -> StateVector:
    """Matrix-free diffusion: W sweeps, ground-state oracle, W sweeps, phase."""
    from .basis import apply_diagonal

    state = layer.apply(state)
    state = apply_diagonal(state, ground_oracle)
    state = layer.apply(state)
    return StateVector(state.n, np.exp(1j * phase.beta) * state.amps)
