"""Dense reference implementations used to cross-check the matrix-free path.

Everything here builds full 2^n x 2^n operators with numpy.kron and applies
them by plain matrix multiplication — deliberately the slow, obviously
correct formulation.
"""

import numpy as np

from dqsa.gates import PhasePoint, oracle_gate, w_gate


def dense_single_qubit(n: int, qubit: int, gate2: np.ndarray) -> np.ndarray:
    """I x ... x gate2 x ... x I with gate2 in slot `qubit` (1-based)."""
    mat = np.eye(1, dtype=np.complex128)
    for v in range(1, n + 1):
        mat = np.kron(mat, gate2 if v == qubit else np.eye(2))
    return mat


def dense_walsh(n: int, rates, convention: str = "composite") -> np.ndarray:
    mat = np.eye(1, dtype=np.complex128)
    for g in rates:
        mat = np.kron(mat, w_gate(g, convention))
    return mat


def dense_run(n, marked, phi, rates=None, iterations=None, convention="composite"):
    """Final state amplitudes computed with dense operators only."""
    rates = tuple(rates) if rates else (0.0,) * n
    iterations = iterations if iterations is not None else max(1, n - 1)
    phase = PhasePoint(phi, n)
    w = dense_walsh(n, rates, convention)
    px = np.diag(oracle_gate(marked, phase, rates).entries)
    p0 = np.diag(oracle_gate("g" * n, phase, rates).entries)
    step = np.exp(1j * phase.beta) * (w @ p0 @ w @ px)
    state = w[:, 0].copy()
    for _ in range(iterations):
        state = step @ state
    return state


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return amps / np.linalg.norm(amps)
