"""Small dense complex matrices (3x3 blocks and 6x6 images).

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The helpers
here add the conventions the rest of the package relies on: a scale-aware
singularity threshold, residuals measured as max-abs entry differences, and
a JSON encoding.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .exceptions import DimensionError, SingularMatrixError

#: |det| below SINGULAR_RTOL * (max |entry|)**n counts as singular.
SINGULAR_RTOL = 1e-12


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def max_entry(*ms) -> float:
    """Largest entry magnitude over all given matrices."""
    return max(float(np.max(np.abs(m))) if np.size(m) else 0.0 for m in ms)


def _check_same_shape(ms):
    shapes = {np.shape(m) for m in ms}
    if len(shapes) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(shapes)}")


def product(ms: Sequence[np.ndarray]) -> np.ndarray:
    """Left-to-right product of a nonempty sequence of square matrices."""
    if len(ms) == 0:
        raise ValueError("product of an empty sequence")
    _check_same_shape(ms)
    out = as_matrix(ms[0]).copy()
    for m in ms[1:]:
        out = out @ m
    return out


def determinant(m) -> complex:
    # LAPACK getrf: LU with partial (row) pivoting
    return complex(np.linalg.det(as_matrix(m)))


def singular_threshold(m) -> float:
    m = as_matrix(m)
    return SINGULAR_RTOL * max_entry(m) ** m.shape[0]


def check_invertible(m, what="matrix") -> complex:
    """Return det(m), raising SingularMatrixError below the scaled threshold."""
    det = determinant(m)
    threshold = singular_threshold(m)
    if abs(det) <= threshold:
        raise SingularMatrixError(abs(det), threshold, what)
    return det


def inverse(m, what="matrix") -> np.ndarray:
    m = as_matrix(m)
    check_invertible(m, what)
    return np.linalg.inv(m)


def trace(m) -> complex:
    return complex(np.trace(as_matrix(m)))


def power(m, k: int, inv=None) -> np.ndarray:
    """Integer power by repeated squaring.

    For ``k < 0`` the inverse is used; pass ``inv`` to reuse a cached one.
    """
    m = as_matrix(m)
    k = int(k)
    if k < 0:
        m = inverse(m) if inv is None else as_matrix(inv)
        k = -k
    result = identity(m.shape[0])
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def block_compose(A, B, C, D, sign: int = 1) -> np.ndarray:
    """Assemble ``[[A, sign*B], [sign*C, D]]``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    blocks = [as_matrix(x) for x in (A, B, C, D)]
    _check_same_shape(blocks)
    A, B, C, D = blocks
    return np.block([[A, sign * B], [sign * C, D]])


def split_blocks(m) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of :func:`block_compose` with ``sign=+1``."""
    m = as_matrix(m)
    n = m.shape[0]
    if n % 2:
        raise DimensionError(f"cannot split odd dimension {n} into blocks")
    h = n // 2
    return m[:h, :h].copy(), m[:h, h:].copy(), m[h:, :h].copy(), m[h:, h:].copy()


def max_abs_diff(m1, m2) -> float:
    m1, m2 = as_matrix(m1), as_matrix(m2)
    if m1.shape != m2.shape:
        raise DimensionError(f"dimension mismatch: {m1.shape} vs {m2.shape}")
    return float(np.max(np.abs(m1 - m2)))


def inverse_residual(m, m_inv) -> float:
    """``||m m^-1 - I||_max`` relative to ``||m||_max * ||m^-1||_max``."""
    m, m_inv = as_matrix(m), as_matrix(m_inv)
    res = max_abs_diff(m @ m_inv, identity(m.shape[0]))
    return res / max(1.0, max_entry(m) * max_entry(m_inv))


# -- JSON --------------------------------------------------------------------

def to_json(m) -> dict:
    m = as_matrix(m)
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if len(entries) != rows * cols:
        raise DimensionError(
            f"matrix JSON has {len(entries)} entries, expected {rows * cols}")
    vals = []
    for pair in entries:
        re_, im_ = (float(x) for x in pair)
        if not (math.isfinite(re_) and math.isfinite(im_)):
            raise ValueError("matrix entries must be finite")
        vals.append(complex(re_, im_))
    return as_matrix(np.array(vals, dtype=np.complex128).reshape(rows, cols))
