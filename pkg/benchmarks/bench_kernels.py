"""Compare the compiled and numpy kernel backends.

Micro-benchmarks call both backend modules directly; the end-to-end sweep
re-runs this interpreter with DQSA_KERNELS forced, since the backend is
fixed at import time.

Usage: python3 benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from dqsa.kernels import _python

try:
    from dqsa.kernels import _cykernels
except ImportError:
    _cykernels = None

BACKENDS = {"python": _python}
if _cykernels is not None:
    BACKENDS["cython"] = _cykernels


def time_call(fn, *args, repeat=200):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def micro():
    rng = np.random.default_rng(7)
    print(f"{'kernel':<28} {'n':>3} " + " ".join(f"{k:>12}" for k in BACKENDS))
    for n in (6, 9, 12):
        amps = (rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n))
        amps /= np.linalg.norm(amps)
        # unitary 2x2 so repeated in-place application stays bounded
        gate2, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        gate2 = np.ascontiguousarray(gate2)
        entries = np.exp(1j * rng.standard_normal(2**n))
        rows = {}
        for name, mod in BACKENDS.items():
            buf = amps.copy()
            rows.setdefault("apply_single_qubit", {})[name] = time_call(
                mod.apply_single_qubit_inplace, buf, n, (n + 1) // 2, gate2)
            buf = amps.copy()
            rows.setdefault("apply_diagonal", {})[name] = time_call(
                mod.apply_diagonal_inplace, buf, entries)
        for kernel, res in rows.items():
            print(f"{kernel:<28} {n:>3} " + " ".join(f"{res[k]*1e6:>10.2f}us" for k in BACKENDS))


def end_to_end():
    code = (
        "import time\n"
        "from dqsa.experiments import SweepSpec, phase_sweep\n"
        "from dqsa.kernels import backend_name\n"
        "spec = SweepSpec(n=9, marked='g'*9, axis='phase', start=0.0, stop=2.0, steps=1000)\n"
        "t0 = time.perf_counter()\n"
        "phase_sweep(spec)\n"
        "print(f'{backend_name()}: {time.perf_counter()-t0:.2f}s')\n"
    )
    # flush before handing the fd to children, else their lines outrun ours
    print("\n1000-point 9-qubit phase sweep:", flush=True)
    for backend in BACKENDS:
        env = dict(os.environ, DQSA_KERNELS=backend)
        subprocess.run([sys.executable, "-c", code], env=env, check=True)


if __name__ == "__main__":
    micro()
    end_to_end()
