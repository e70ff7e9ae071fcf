"""Minimal complex linear algebra used by the simulator.

Complex vectors and matrices are plain numpy arrays of dtype complex128
(1-D for vectors, 2-D row-major for matrices). The helpers here are the
only linear-algebra entry points the rest of the package relies on.
"""

import numpy as np

from .errors import IllConditioned

# Condition-number cutoff for the Gram solve; beyond this the UE/IRS
# geometry is treated as degenerate.
COND_LIMIT = 1e12

# The Gram solve must hand back X with ||H^H X - rhs||_F below this
# fraction of ||rhs||_F, else it raises instead of returning garbage.
RESIDUAL_LIMIT = 1e-9


def as_cvector(x) -> np.ndarray:
    """Coerce to a finite 1-D complex128 array."""
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1:
        raise ValueError(f"expected 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def as_cmatrix(x) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    m = np.asarray(x, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def conj_transpose(m: np.ndarray) -> np.ndarray:
    """Hermitian transpose."""
    return np.conj(np.asarray(m)).T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product."""
    return np.kron(a, b)


def frobenius_norm(m: np.ndarray) -> float:
    """sqrt of the sum of squared entry magnitudes."""
    return float(np.linalg.norm(np.asarray(m)))


def gram_solve(h: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve via the Gram matrix: X = H (H^H H)^{-1} rhs, for tall H (M x K).

    This is the building block of the ZF precoder: H^H X == rhs up to
    solver accuracy. K is tiny here, so no SVD machinery is needed.

    Raises IllConditioned if cond(H^H H) exceeds COND_LIMIT or the
    residual check ||H^H X - rhs||_F <= RESIDUAL_LIMIT * ||rhs||_F fails.
    """
    h = as_cmatrix(h)
    rhs = np.asarray(rhs, dtype=np.complex128)
    m, k = h.shape
    if k > m:
        raise ValueError(f"gram_solve needs a tall matrix, got {m}x{k}")
    gram = conj_transpose(h) @ h
    cond = np.linalg.cond(gram)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise IllConditioned(f"Gram matrix condition estimate {cond:.3e} exceeds {COND_LIMIT:.0e}")
    x = h @ np.linalg.solve(gram, rhs)
    residual = frobenius_norm(conj_transpose(h) @ x - rhs)
    if residual > RESIDUAL_LIMIT * frobenius_norm(rhs):
        raise IllConditioned(f"Gram solve residual {residual:.3e} above tolerance")
    return x
