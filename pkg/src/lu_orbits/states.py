"""Operators and states: generator sets, the witness operator, density matrices."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numerics import (
    TolerancePolicy,
    _coords_unchecked,
    antihermitian_basis,
    check_hermitian,
    hermitian_to_real_coords,
    kernel,
)

STATE_KINDS = ("maximally_mixed", "pure_product", "bell_diagonal", "witness")


@dataclass(frozen=True)
class PartyDims:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("need at least one party")
        if any(d < 2 for d in dims):
            raise ValueError(f"every party dimension must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def of(cls, dims) -> PartyDims:
        if isinstance(dims, PartyDims):
            return dims
        if isinstance(dims, str):
            dims = [p for p in dims.replace("x", ",").split(",") if p.strip()]
        return cls(tuple(int(d) for d in dims))

    @property
    def k(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return math.prod(self.dims)

    @property
    def group_dim(self) -> int:
        """Real dimension of the local unitary group, sum of d_i^2."""
        return sum(d * d for d in self.dims)

    @property
    def max_orbit_dim(self) -> int:
        return self.group_dim - self.k

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)

    def label(self) -> str:
        return "x".join(map(str, self.dims))


@dataclass(frozen=True)
class GeneratorSet:
    n: int
    generators: tuple[np.ndarray, ...]

    @property
    def m(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class DensityMatrix:
    dims: PartyDims
    matrix: np.ndarray

    def __post_init__(self):
        dims = PartyDims.of(self.dims)
        object.__setattr__(self, "dims", dims)
        rho = check_hermitian(self.matrix, "density matrix")
        if rho.shape[0] != dims.total:
            raise ValueError(f"matrix size {rho.shape[0]} does not match dims {dims.dims}")
        tr = np.trace(rho).real
        if abs(tr - 1) > 1e-12:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        lmin = float(np.linalg.eigvalsh(rho)[0])
        if lmin < -1e-10:
            raise ValueError(f"density matrix has negative eigenvalue {lmin:.3e}")
        object.__setattr__(self, "matrix", rho)

    def to_json(self) -> str:
        return json.dumps(
            {
                "dims": list(self.dims.dims),
                "re": self.matrix.real.tolist(),
                "im": self.matrix.imag.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> DensityMatrix:
        obj = json.loads(text)
        try:
            m = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
            return cls(PartyDims.of(obj["dims"]), m)
        except KeyError as e:
            raise ValueError(f"density matrix JSON is missing key {e}") from None


def joint_centralizer_dim(xs: Sequence, n: int, tol: TolerancePolicy | None = None) -> int:
    """Dimension of ``{B in u(n) : [B, X] = 0 for all X in xs}``."""
    mats = [check_hermitian(x, "generator") for x in xs]
    for x in mats:
        if x.shape != (n, n):
            raise ValueError(f"generator has shape {x.shape}, expected {(n, n)}")
    if not mats:
        return n * n
    cols = []
    for b in antihermitian_basis(n):
        cols.append(np.concatenate([_coords_unchecked(b @ x - x @ b) for x in mats]))
    return kernel(np.column_stack(cols), tol).nullity


def _validate_generators(xs: list[np.ndarray], n: int) -> None:
    for i, x in enumerate(xs, 1):
        check_hermitian(x, f"X_{i}")
        if abs(np.trace(x)) > 1e-12:
            raise ValueError(f"X_{i} is not traceless: tr = {np.trace(x)}")
    gram_vectors = np.column_stack([hermitian_to_real_coords(x) for x in [*xs, np.eye(n)]])
    r = kernel(gram_vectors.T @ gram_vectors).rank
    if r != len(xs) + 1:
        raise ValueError(f"generators and identity are linearly dependent (Gram rank {r})")
    c = joint_centralizer_dim(xs, n)
    if c != 1:
        raise ValueError(f"joint centralizer of generators has dimension {c}, expected 1")


def build_generators(m: int, n: int) -> GeneratorSet:
    """Traceless Hermitian X_1..X_m on C^n whose joint centralizer is the centre.

    X_1 is diagonal with distinct entries ``j - (n+1)/2``, X_2 is the
    path-graph adjacency matrix, and X_i = E_{1i} + E_{i1} for i >= 3.
    """
    if not 2 <= m <= n:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    xs = [np.diag(np.arange(1, n + 1) - (n + 1) / 2).astype(complex)]
    x2 = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    x2[idx, idx + 1] = x2[idx + 1, idx] = 1
    xs.append(x2)
    for i in range(2, m):
        x = np.zeros((n, n), dtype=complex)
        x[0, i] = x[i, 0] = 1
        xs.append(x)
    _validate_generators(xs, n)
    return GeneratorSet(n=n, generators=tuple(xs))


def _assemble(blocks: Sequence[np.ndarray], m: int) -> np.ndarray:
    """sum_i P_i (x) blocks[i] + v v^dag (x) I with v = (1, 2, ..., m)."""
    n = blocks[0].shape[0]
    v = np.arange(1, m + 1, dtype=float)
    w = np.kron(np.outer(v, v), np.eye(n)).astype(complex)
    for i, y in enumerate(blocks):
        w[i * n : (i + 1) * n, i * n : (i + 1) * n] += y
    return w


def build_witness(m: int, n: int) -> np.ndarray:
    """Bipartite witness whose local stabilizer is exactly the centre."""
    gens = build_generators(m, n)
    return _assemble(gens.generators, m)


def build_witness_multipartite(dims) -> np.ndarray:
    """Recursive multipartite witness candidate.

    The result is only a candidate: its stabilizer has to be checked with
    :func:`lu_orbits.stabilizer.stabilize` before it is trusted.
    """
    dims = PartyDims.of(dims)
    if dims.k < 2:
        raise ValueError("multipartite witness needs at least two parties")
    if list(dims.dims) != sorted(dims.dims):
        raise ValueError(f"dims must be sorted ascending, got {dims.dims}")
    if dims.k == 2:
        return build_witness(*dims.dims)
    d1, tail = dims.dims[0], PartyDims(dims.dims[1:])
    n = tail.total
    t1 = build_witness_multipartite(tail)
    shift = np.roll(np.eye(n), 1, axis=0)  # e_j -> e_{j+1 mod n}
    ts = [t1, shift @ t1 @ shift.T]
    for i in range(2, d1):
        t = np.zeros((n, n), dtype=complex)
        t[0, i] = t[i, 0] = 1
        ts.append(t)
    ys = [t - (np.trace(t).real / n) * np.eye(n) for t in ts]
    return _assemble(ys, d1)


def to_state(h, dims) -> DensityMatrix:
    """Shift by ``(max(0, -lambda_min) + 1) I`` and normalise to unit trace."""
    h = check_hermitian(h, "h")
    h = (h + h.conj().T) / 2
    lmin = float(np.linalg.eigvalsh(h)[0])
    s = max(0.0, -lmin) + 1.0
    shifted = h + s * np.eye(h.shape[0])
    return DensityMatrix(dims, shifted / np.trace(shifted).real)


def random_density(dims, rank: int | None = None, seed=0) -> DensityMatrix:
    """Hilbert-Schmidt-type random state ``G G^dag / tr(G G^dag)``.

    ``G`` is D x rank with i.i.d. standard complex Gaussian entries drawn from
    ``numpy.random.default_rng(seed)``; ``seed`` may be an int or a
    ``numpy.random.SeedSequence``. ``rank=None`` means full rank.
    """
    dims = PartyDims.of(dims)
    d = dims.total
    rank = d if rank is None else int(rank)
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))) / math.sqrt(2)
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(dims, rho / np.trace(rho).real)


def bell_states() -> list[np.ndarray]:
    """Phi+, Phi-, Psi+, Psi- as vectors in C^2 (x) C^2."""
    s = 1 / math.sqrt(2)
    return [
        np.array([s, 0, 0, s], dtype=complex),
        np.array([s, 0, 0, -s], dtype=complex),
        np.array([0, s, s, 0], dtype=complex),
        np.array([0, s, -s, 0], dtype=complex),
    ]


def special_state(kind: str, dims, params: Sequence[float] | None = None) -> DensityMatrix:
    kind = kind.replace("-", "_")
    dims = PartyDims.of(dims)
    if kind == "maximally_mixed":
        return DensityMatrix(dims, np.eye(dims.total, dtype=complex) / dims.total)
    if kind == "pure_product":
        rho = np.zeros((dims.total, dims.total), dtype=complex)
        rho[0, 0] = 1
        return DensityMatrix(dims, rho)
    if kind == "bell_diagonal":
        if dims.dims != (2, 2):
            raise ValueError(f"bell_diagonal needs dims (2, 2), got {dims.dims}")
        if params is None or len(params) != 4:
            raise ValueError("bell_diagonal needs four weights p1..p4")
        p = np.asarray(params, dtype=float)
        if np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
            raise ValueError(f"bell_diagonal weights must be a probability vector, got {p.tolist()}")
        rho = sum(pi * np.outer(b, b.conj()) for pi, b in zip(p, bell_states()))
        return DensityMatrix(dims, rho)
    if kind == "witness":
        return to_state(build_witness_multipartite(dims), dims)
    raise ValueError(f"unknown state kind {kind!r}; expected one of {STATE_KINDS}")

