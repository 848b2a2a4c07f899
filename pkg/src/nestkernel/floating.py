"""Floating-point rank decisions for large random experiments.

Nothing in the exact pipeline depends on this module; it exists so that big
random sweeps can be pre-screened cheaply.  Pivots below ``rtol`` times the
largest absolute entry are treated as zero.
"""

from __future__ import annotations

import numpy as np

RTOL = 1e-9


def to_array(M) -> np.ndarray:
    """Convert an exact :class:`~nestkernel.linalg.Matrix` to a complex array."""
    return np.array([[complex(float(a.real), float(a.imag)) for a in r] for r in M.rows],
                    dtype=complex).reshape(M.nrows, M.ncols)


def rref_float(a, rtol: float = RTOL) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan with partial pivoting."""
    A = np.array(a, dtype=complex, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    nrows, ncols = A.shape
    scale = np.abs(A).max() if A.size else 0.0
    tol = rtol * scale
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r + int(np.argmax(np.abs(A[r:, c])))
        if abs(A[p, c]) <= tol:
            A[r:, c] = 0
            continue
        A[[r, p]] = A[[p, r]]
        A[r] = A[r] / A[r, c]
        for i in range(nrows):
            if i != r:
                A[i] = A[i] - A[i, c] * A[r]
        pivots.append(c)
        r += 1
    return A, pivots


def rank_float(a, rtol: float = RTOL) -> int:
    return len(rref_float(a, rtol)[1])
