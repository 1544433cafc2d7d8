"""Theorem sweeps and random-state surveys."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .numerics import TolerancePolicy
from .stabilizer import stabilize
from .states import PartyDims, build_witness, build_witness_multipartite, random_density, to_state

log = logging.getLogger(__name__)


@dataclass
class TheoremRow:
    dims: PartyDims
    expected_orbit_dim: int
    witness_orbit_dim: int
    witness_stab_dim: int
    center_only: bool
    sv_gap: float
    passed: bool
    status: str = "ok"
    reason: str = ""


@dataclass
class SurveyResult:
    dims: PartyDims
    samples: int
    seed: int
    rank: int
    orbit_dim_histogram: dict[int, int]
    generic_fraction: float
    max_observed: int
    warnings: int = 0
    min_sv_gap: float = math.inf
    # indices of samples whose rank decision was ambiguous
    flagged: list[int] = field(default_factory=list)


@dataclass
class Theorem2Result:
    row: TheoremRow
    survey: SurveyResult

    @property
    def passed(self) -> bool:
        return self.survey.max_observed == self.row.expected_orbit_dim


def sample_seed(seed: int, index: int) -> np.random.SeedSequence:
    """Seed for sample ``index`` of a survey with master ``seed``.

    ``SeedSequence(seed, spawn_key=(index,))`` hashes the pair, so sample
    ``index`` is reproducible on its own and equals
    ``SeedSequence(seed).spawn(n)[index]`` for any ``n > index``.
    """
    return np.random.SeedSequence(seed, spawn_key=(index,))


def witness_row(w, dims: PartyDims, tol: TolerancePolicy) -> TheoremRow:
    rep = stabilize(w, dims, tol)
    expected = dims.max_orbit_dim
    reasons = []
    if rep.orbit_dim != expected:
        reasons.append(f"orbit_dim {rep.orbit_dim} != {expected}")
    if rep.stabilizer_dim != dims.k:
        reasons.append(f"stabilizer_dim {rep.stabilizer_dim} != {dims.k}")
    if not rep.center_only:
        reasons.append(f"kernel not the centre (residual {rep.center_residual:.2e})")
    if rep.ambiguous:
        reasons.append(f"ambiguous rank (sv_gap {rep.sv_gap:.2e})")
    if not rep.certified:
        reasons.append(f"kernel certificate failed (residual {rep.residual_max:.2e})")
    passed = not reasons
    return TheoremRow(
        dims=dims,
        expected_orbit_dim=expected,
        witness_orbit_dim=rep.orbit_dim,
        witness_stab_dim=rep.stabilizer_dim,
        center_only=rep.center_only,
        sv_gap=rep.sv_gap,
        passed=passed,
        status="ok" if passed else "fail",
        reason="; ".join(reasons),
    )


def verify_theorem1(m_max: int, n_max: int, tol: TolerancePolicy | None = None) -> list[TheoremRow]:
    """One row per (m, n) with 2 <= m <= min(m_max, n) and n <= n_max."""
    if not 2 <= m_max <= n_max:
        raise ValueError(f"need 2 <= m_max <= n_max, got {m_max}, {n_max}")
    tol = tol or TolerancePolicy.from_env()
    rows = []
    for m in range(2, m_max + 1):
        for n in range(m, n_max + 1):
            dims = PartyDims((m, n))
            rows.append(witness_row(to_state(build_witness(m, n), dims), dims, tol))
    return rows


def survey(dims, samples: int, seed: int, rank: int | None = None, tol: TolerancePolicy | None = None) -> SurveyResult:
    """Orbit-dimension histogram over seeded random states."""
    dims = PartyDims.of(dims)
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    tol = tol or TolerancePolicy.from_env()
    rank = dims.total if rank is None else int(rank)
    hist: Counter[int] = Counter()
    warnings, min_gap, flagged = 0, math.inf, []
    for i in range(samples):
        rho = random_density(dims, rank, sample_seed(seed, i))
        rep = stabilize(rho, dims, tol)
        hist[rep.orbit_dim] += 1
        min_gap = min(min_gap, rep.sv_gap)
        if rep.ambiguous or not rep.certified:
            warnings += 1
            flagged.append(i)
            log.warning(
                "sample %d of %s: sv_gap %.3e, singular spectrum near cutoff is ambiguous",
                i, dims.label(), rep.sv_gap,
            )
    result = SurveyResult(
        dims=dims,
        samples=samples,
        seed=seed,
        rank=rank,
        orbit_dim_histogram=dict(sorted(hist.items())),
        generic_fraction=hist[dims.max_orbit_dim] / samples,
        max_observed=max(hist),
        warnings=warnings,
        min_sv_gap=min_gap,
        flagged=flagged,
    )
    if rank == dims.total and result.generic_fraction < 1.0:
        misses = {d: c for d, c in result.orbit_dim_histogram.items() if d != dims.max_orbit_dim}
        log.warning("full-rank survey on %s hit non-generic orbit dims %s (min sv_gap %.3e)",
                    dims.label(), misses, min_gap)
    return result


def verify_theorem2(dims, samples: int, seed: int, tol: TolerancePolicy | None = None) -> Theorem2Result:
    """Witness-candidate row plus a full-rank survey.

    A candidate that misses its contract is reported with
    ``status="candidate_failed"``; the theorem verdict rests on the survey.
    """
    dims = PartyDims.of(dims)
    if dims.k < 2:
        raise ValueError("Theorem 2 check needs at least two parties")
    tol = tol or TolerancePolicy.from_env()
    ordered = PartyDims(tuple(sorted(dims.dims)))
    row = witness_row(to_state(build_witness_multipartite(ordered), ordered), ordered, tol)
    if not row.passed:
        row.status = "candidate_failed"
        log.warning("multipartite witness candidate failed on %s: %s; relying on sampling",
                    ordered.label(), row.reason)
    return Theorem2Result(row=row, survey=survey(ordered, samples, seed, tol=tol))
