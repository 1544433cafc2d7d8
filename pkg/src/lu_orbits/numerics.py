"""Dense linear-algebra substrate.

Kronecker products, real coordinates for Hermitian and anti-Hermitian
matrices, and an SVD-based rank/kernel routine governed by a
:class:`TolerancePolicy`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

TOL_ENV_VAR = "LU_ORBIT_TOL"
HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class TolerancePolicy:
    """Relative SVD cutoff plus the gap below which a rank is called ambiguous."""

    relative_cutoff: float = 1e-9
    min_gap_warn: float = 1e4

    def __post_init__(self):
        if not 0.0 < self.relative_cutoff < 1.0:
            raise ValueError(f"relative_cutoff must lie in (0, 1), got {self.relative_cutoff}")
        if self.min_gap_warn <= 0:
            raise ValueError(f"min_gap_warn must be positive, got {self.min_gap_warn}")

    @classmethod
    def from_env(cls, **overrides) -> TolerancePolicy:
        """Default policy, with ``LU_ORBIT_TOL`` overriding the relative cutoff."""
        raw = os.environ.get(TOL_ENV_VAR)
        if raw is not None and "relative_cutoff" not in overrides:
            try:
                overrides["relative_cutoff"] = float(raw)
            except ValueError:
                raise ValueError(f"{TOL_ENV_VAR}={raw!r} is not a number") from None
        return cls(**overrides)


@dataclass
class RankReport:
    rank: int
    kernel_basis: np.ndarray  # shape (ncols - rank, ncols), one kernel vector per row
    singular_values: np.ndarray
    gap: float
    warning: bool = False
    residual_max: float = 0.0

    @property
    def nullity(self) -> int:
        return self.kernel_basis.shape[0]


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a finite 2-D complex array, rejecting NaN/Inf."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def hermiticity_residual(h: np.ndarray) -> float:
    return float(np.linalg.norm(h - h.conj().T))


def check_hermitian(h, name: str = "operator", tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate squareness and Hermiticity (relative to ``max(1, ||h||_F)``)."""
    m = as_matrix(h, name)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    res = hermiticity_residual(m)
    if res > tol * max(1.0, float(np.linalg.norm(m))):
        raise ValueError(f"{name} is not Hermitian: ||h - h^dag||_F = {res:.3e}")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def kron_all(mats) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def antihermitian_basis(d: int) -> list[np.ndarray]:
    """Orthonormal basis of u(d) under ``<A, B> = Re tr(A^dag B)``.

    Ordering: ``i E_jj`` for j = 0..d-1, then for each pair j < k in
    lexicographic order ``(E_jk - E_kj)/sqrt(2)`` followed by
    ``i (E_jk + E_kj)/sqrt(2)``.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    basis = []
    for j in range(d):
        b = np.zeros((d, d), dtype=complex)
        b[j, j] = 1j
        basis.append(b)
    s = 1 / math.sqrt(2)
    for j in range(d):
        for k in range(j + 1, d):
            re = np.zeros((d, d), dtype=complex)
            re[j, k], re[k, j] = s, -s
            im = np.zeros((d, d), dtype=complex)
            im[j, k] = im[k, j] = 1j * s
            basis.extend((re, im))
    return basis


def _coords_unchecked(h: np.ndarray) -> np.ndarray:
    n = h.shape[0]
    iu = np.triu_indices(n, k=1)
    upper = h[iu] * math.sqrt(2)
    off = np.empty(2 * upper.size)
    off[0::2] = upper.real
    off[1::2] = upper.imag
    return np.concatenate([np.diagonal(h).real, off])


def hermitian_to_real_coords(h) -> np.ndarray:
    """Isometric real coordinates of a Hermitian D x D matrix (length D^2).

    Diagonal entries first, then ``sqrt(2) Re h_jk, sqrt(2) Im h_jk`` for each
    strictly-upper entry in row-major order; this matches the ordering of
    :func:`antihermitian_basis`, up to the factor ``i``.
    """
    return _coords_unchecked(check_hermitian(h, "h"))


def real_coords_to_hermitian(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    n = math.isqrt(x.size)
    if n * n != x.size or x.ndim != 1:
        raise ValueError(f"coordinate vector length {x.size} is not a perfect square")
    h = np.zeros((n, n), dtype=complex)
    h[np.diag_indices(n)] = x[:n]
    iu = np.triu_indices(n, k=1)
    upper = (x[n::2] + 1j * x[n + 1 :: 2]) / math.sqrt(2)
    h[iu] = upper
    h[(iu[1], iu[0])] = upper.conj()
    return h


def kernel(m, tol: TolerancePolicy | None = None) -> RankReport:
    """Numerical rank and orthonormal kernel basis of ``m`` via the SVD.

    A singular value counts toward the rank when it exceeds
    ``tol.relative_cutoff * sigma_max``. ``gap`` is the ratio of the smallest
    retained to the largest discarded singular value (``inf`` when nothing
    nonzero is discarded, or when the matrix is exactly zero).
    """
    tol = tol or TolerancePolicy.from_env()
    a = np.asarray(m)
    if a.ndim != 2 or a.size == 0:
        raise ValueError(f"kernel needs a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if not np.iscomplexobj(a):
        a = a.astype(float)
    ncols = a.shape[1]
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s > tol.relative_cutoff * smax))
    basis = vh[rank:].conj()
    if rank == 0 or rank == ncols:
        gap = math.inf
    else:
        discarded = float(s[rank]) if rank < s.size else 0.0
        gap = math.inf if discarded == 0.0 else float(s[rank - 1]) / discarded
    residual = float(np.linalg.norm(a @ basis.T, axis=0).max()) if basis.shape[0] else 0.0
    bound = 10 * tol.relative_cutoff * smax
    if residual > bound and smax > 0:
        raise ArithmeticError(
            f"kernel residual {residual:.3e} exceeds bound {bound:.3e}; SVD failed to converge cleanly"
        )
    return RankReport(
        rank=rank,
        kernel_basis=basis,
        singular_values=s,
        gap=gap,
        warning=gap < tol.min_gap_warn,
        residual_max=residual,
    )
