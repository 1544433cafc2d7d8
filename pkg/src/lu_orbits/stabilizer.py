"""Infinitesimal local-unitary action, stabilizer algebras and orbit dimensions.

The local group U(d_1) x ... x U(d_k) acts on Hermitian operators by
conjugation. Its Lie algebra is coordinatised by concatenating
:func:`~lu_orbits.numerics.antihermitian_basis` for each party, so the
derivative of the action at a point ``w`` is a real
``D^2 x sum(d_i^2)`` matrix whose kernel is the stabilizer algebra and
whose rank is the orbit dimension.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .numerics import (
    TolerancePolicy,
    _coords_unchecked,
    antihermitian_basis,
    as_matrix,
    check_hermitian,
    kernel,
    kron_all,
)
from .states import DensityMatrix, PartyDims

KERNEL_CERT_TOL = 1e-8
CENTER_TOL = 1e-8
UNITARY_TOL = 1e-10


class Classification(str, Enum):
    MAX_DIMENSIONAL = "max_dimensional"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class LocalAlgebraElement:
    """Tuple (A_1, ..., A_k) of anti-Hermitian matrices, one per party."""

    parts: tuple[np.ndarray, ...]

    def __post_init__(self):
        parts = tuple(as_matrix(a, "part") for a in self.parts)
        for a in parts:
            if np.linalg.norm(a + a.conj().T) > 1e-12 * max(1.0, np.linalg.norm(a)):
                raise ValueError("local algebra element parts must be anti-Hermitian")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_coords(cls, x, dims) -> LocalAlgebraElement:
        dims = PartyDims.of(dims)
        x = np.asarray(x, dtype=float)
        parts, start = [], 0
        for d in dims:
            coeffs = x[start : start + d * d]
            parts.append(sum(c * b for c, b in zip(coeffs, antihermitian_basis(d))))
            start += d * d
        return cls(tuple(parts))

    def embed(self) -> np.ndarray:
        """Sum of I (x) ... (x) A_i (x) ... (x) I over parties."""
        dims = [a.shape[0] for a in self.parts]
        return sum(embed_local(a, i, dims) for i, a in enumerate(self.parts))


@dataclass
class StabilizerReport:
    dims: PartyDims
    orbit_dim: int
    stabilizer_dim: int
    kernel_basis: list[LocalAlgebraElement]
    sv_gap: float
    center_only: bool
    classification: Classification
    residual_max: float = 0.0
    center_residual: float = 0.0
    ambiguous: bool = False
    certified: bool = True
    kernel_coords: np.ndarray = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims.dims),
            "orbit_dim": self.orbit_dim,
            "stabilizer_dim": self.stabilizer_dim,
            "sv_gap": _json_float(self.sv_gap),
            "center_only": self.center_only,
            "classification": self.classification.value,
            "residual_max": _json_float(self.residual_max),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _json_float(x: float):
    # JSON has no infinity literal
    return "inf" if math.isinf(x) else float(x)


def embed_local(a: np.ndarray, slot: int, dims) -> np.ndarray:
    mats = [np.eye(d) for d in dims]
    mats[slot] = a
    return kron_all(mats)


def _operator(w, dims: PartyDims) -> np.ndarray:
    if isinstance(w, DensityMatrix):
        w = w.matrix
    w = check_hermitian(w, "w")
    if w.shape[0] != dims.total:
        raise ValueError(f"operator of size {w.shape[0]} does not match dims {dims.dims} (D={dims.total})")
    return w


def action_matrix(w, dims) -> np.ndarray:
    """Real matrix of ``B -> [B_embedded, w]`` in the local-algebra basis.

    Column order: party 1's basis elements, then party 2's, and so on; rows
    are the isometric Hermitian coordinates of the commutator.
    """
    dims = PartyDims.of(dims)
    w = _operator(w, dims)
    cols = []
    for slot, d in enumerate(dims):
        left = math.prod(dims.dims[:slot])
        right = math.prod(dims.dims[slot + 1 :])
        wt = w.reshape(left, d, right, left, d, right)
        for b in antihermitian_basis(d):
            bw = np.einsum("ij,ajbckd->aibckd", b, wt).reshape(w.shape)
            wb = np.einsum("ajbckd,kl->ajbcld", wt, b).reshape(w.shape)
            cols.append(_coords_unchecked(bw - wb))
    return np.column_stack(cols)


def center_subspace(dims) -> list[LocalAlgebraElement]:
    """Orthonormal basis of the centre: i I / sqrt(d_i) in slot i, zero elsewhere."""
    dims = PartyDims.of(dims)
    out = []
    for slot in range(dims.k):
        parts = [np.zeros((d, d), dtype=complex) for d in dims]
        parts[slot] = 1j * np.eye(dims.dims[slot]) / math.sqrt(dims.dims[slot])
        out.append(LocalAlgebraElement(tuple(parts)))
    return out


def center_coords(dims) -> np.ndarray:
    """Centre basis in local-algebra coordinates, shape (k, sum d_i^2)."""
    dims = PartyDims.of(dims)
    c = np.zeros((dims.k, dims.group_dim))
    start = 0
    for slot, d in enumerate(dims):
        c[slot, start : start + d] = 1 / math.sqrt(d)
        start += d * d
    return c


def stabilize(w, dims, tol: TolerancePolicy | None = None) -> StabilizerReport:
    """Stabilizer algebra of ``w`` under local unitaries, with certificates.

    Every kernel element is checked to commute with ``w`` to
    ``1e-8 ||w||_F`` (``certified``). Neither a failed certificate nor a
    singular-value gap below ``tol.min_gap_warn`` (``ambiguous``) raises;
    both are flagged in the report so that surveys keep running.
    """
    tol = tol or TolerancePolicy.from_env()
    dims = PartyDims.of(dims)
    w = _operator(w, dims)
    rr = kernel(action_matrix(w, dims), tol)
    elements = [LocalAlgebraElement.from_coords(x, dims) for x in rr.kernel_basis]

    wnorm = float(np.linalg.norm(w))
    residual = 0.0
    for el in elements:
        a = el.embed()
        residual = max(residual, float(np.linalg.norm(a @ w - w @ a)))
    certified = residual <= KERNEL_CERT_TOL * wnorm

    c = center_coords(dims)
    kb = rr.kernel_basis
    off_center = kb - (kb @ c.T) @ c
    center_residual = float(np.linalg.norm(off_center, axis=1).max()) if kb.shape[0] else 0.0
    center_only = rr.nullity == dims.k and center_residual < CENTER_TOL

    return StabilizerReport(
        dims=dims,
        orbit_dim=rr.rank,
        stabilizer_dim=rr.nullity,
        kernel_basis=elements,
        sv_gap=rr.gap,
        center_only=center_only,
        classification=(
            Classification.MAX_DIMENSIONAL if rr.rank == dims.max_orbit_dim else Classification.DEGENERATE
        ),
        residual_max=residual / wnorm if wnorm else 0.0,
        center_residual=center_residual,
        ambiguous=rr.warning,
        certified=certified,
        kernel_coords=kb,
    )


def orbit_dimension(w, dims, tol: TolerancePolicy | None = None) -> int:
    return stabilize(w, dims, tol).orbit_dim


def check_group_element(w, us, dims=None) -> float:
    """Relative residual ``||U w U^dag - w||_F / ||w||_F`` for ``U = u_1 (x) ... (x) u_k``."""
    us = [as_matrix(u, "unitary") for u in us]
    for i, u in enumerate(us):
        if u.shape[0] != u.shape[1]:
            raise ValueError(f"unitary {i} is not square: {u.shape}")
        defect = float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))
        if defect > UNITARY_TOL:
            raise ValueError(f"matrix {i} is not unitary: ||u^dag u - I||_F = {defect:.3e}")
    dims = PartyDims.of(dims if dims is not None else [u.shape[0] for u in us])
    if [u.shape[0] for u in us] != list(dims.dims):
        raise ValueError(f"unitary sizes {[u.shape[0] for u in us]} do not match dims {dims.dims}")
    w = _operator(w, dims)
    u = kron_all(us)
    wnorm = float(np.linalg.norm(w))
    if wnorm == 0:
        return 0.0
    return float(np.linalg.norm(u @ w @ u.conj().T - w)) / wnorm
