"""Numpy reference implementations of the state-update kernels.

Both functions mutate ``amps`` in place and mirror the compiled extension's
arithmetic exactly (same operations, same order).
"""

import numpy as np


def apply_diagonal_inplace(amps: np.ndarray, entries: np.ndarray) -> None:
    """amps[i] *= entries[i]."""
    if amps.shape != entries.shape:
        raise ValueError(f"shape mismatch: {amps.shape} vs {entries.shape}")
    np.multiply(amps, entries, out=amps)


def apply_single_qubit_inplace(amps: np.ndarray, n: int, qubit: int, gate2: np.ndarray) -> None:
    """Contract a 2x2 gate over tensor slot ``qubit`` (1-based, qubit 1 first)."""
    view = amps.reshape(2 ** (qubit - 1), 2, 2 ** (n - qubit))
    x0 = view[:, 0, :].copy()
    x1 = view[:, 1, :].copy()
    view[:, 0, :] = gate2[0, 0] * x0 + gate2[0, 1] * x1
    view[:, 1, :] = gate2[1, 0] * x0 + gate2[1, 1] * x1
