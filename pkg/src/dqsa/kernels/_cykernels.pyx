# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled state-update kernels (see _python.py for the reference semantics)."""


def apply_diagonal_inplace(double complex[::1] amps, double complex[::1] entries):
    """amps[i] *= entries[i]."""
    cdef Py_ssize_t i, m = amps.shape[0]
    if entries.shape[0] != m:
        raise ValueError("shape mismatch between amplitudes and diagonal entries")
    for i in range(m):
        amps[i] = amps[i] * entries[i]


def apply_single_qubit_inplace(double complex[::1] amps, int n, int qubit, double complex[:, ::1] gate2):
    """Contract a 2x2 gate over tensor slot ``qubit`` (1-based, qubit 1 first)."""
    cdef int m = n - qubit
    cdef Py_ssize_t stride = (<Py_ssize_t> 1) << m
    cdef Py_ssize_t half = (<Py_ssize_t> 1) << (n - 1)
    cdef Py_ssize_t g, i1, i2
    cdef double complex a00 = gate2[0, 0]
    cdef double complex a01 = gate2[0, 1]
    cdef double complex a10 = gate2[1, 0]
    cdef double complex a11 = gate2[1, 1]
    cdef double complex x0, x1
    if amps.shape[0] != (<Py_ssize_t> 1) << n:
        raise ValueError("amplitude length does not match qubit count")
    for g in range(half):
        i1 = ((g >> m) << (m + 1)) | (g & (stride - 1))
        i2 = i1 | stride
        x0 = amps[i1]
        x1 = amps[i2]
        amps[i1] = a00 * x0 + a01 * x1
        amps[i2] = a10 * x0 + a11 * x1
