import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm, subspace_angles

from conftest import random_hermitian, random_local_unitary
from lu_orbits.numerics import antihermitian_basis, hermitian_to_real_coords
from lu_orbits.stabilizer import (
    Classification,
    LocalAlgebraElement,
    action_matrix,
    center_coords,
    center_subspace,
    check_group_element,
    embed_local,
    orbit_dimension,
    stabilize,
)
from lu_orbits.states import PartyDims, build_witness, random_density, special_state, to_state

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.diag([1.0, -1.0]).astype(complex),
}
BELL = (0.4, 0.3, 0.2, 0.1)


def fd_columns(w, dims, h=1e-5):
    """Central differences of t -> coords(e^{tB} w e^{-tB}) for every basis B."""
    cols = []
    for slot, d in enumerate(dims):
        for b in antihermitian_basis(d):
            be = embed_local(b, slot, dims)
            plus, minus = expm(h * be), expm(-h * be)
            fwd = hermitian_to_real_coords(plus @ w @ plus.conj().T)
            bwd = hermitian_to_real_coords(minus @ w @ minus.conj().T)
            cols.append((fwd - bwd) / (2 * h))
    return np.column_stack(cols)


# action matrix


def test_action_matrix_identity_is_zero():
    a = action_matrix(np.eye(6), (2, 3))
    assert a.shape == (36, 13)
    assert not a.any()


def test_action_matrix_center_columns_zero(rng):
    dims = PartyDims((2, 3, 2))
    w = random_hermitian(dims.total, rng)
    a = action_matrix(w, dims)
    # i I in a slot is the normalised sum of that slot's diagonal directions
    assert np.abs(a @ center_coords(dims).T).max() < 1e-13


def test_action_matrix_dimension_mismatch():
    with pytest.raises(ValueError, match="does not match"):
        action_matrix(np.eye(5), (2, 2))


@pytest.mark.parametrize("dims", [(2, 2), (2, 3)])
@pytest.mark.parametrize("seed", range(5))
def test_action_matrix_finite_difference(dims, seed):
    rng = np.random.default_rng(seed)
    w = random_hermitian(math.prod(dims), rng)
    a, fd = action_matrix(w, dims), fd_columns(w, dims)
    wn = np.linalg.norm(w)
    for j in range(a.shape[1]):
        col = np.linalg.norm(a[:, j])
        err = np.linalg.norm(a[:, j] - fd[:, j])
        if col > 1e-12 * wn:
            assert err <= 1e-6 * col
        else:
            assert err <= 1e-6 * wn


def test_action_matrix_column_matches_commutator(rng):
    dims = (2, 3)
    w = random_hermitian(6, rng)
    a = action_matrix(w, dims)
    b = antihermitian_basis(3)[5]
    be = np.kron(np.eye(2), b)
    np.testing.assert_allclose(a[:, 4 + 5], hermitian_to_real_coords(be @ w - w @ be), atol=1e-14)


# stabilize


def test_witness_2_2():
    rep = stabilize(to_state(build_witness(2, 2), (2, 2)), (2, 2))
    assert (rep.orbit_dim, rep.stabilizer_dim, rep.center_only) == (6, 2, True)
    assert rep.classification is Classification.MAX_DIMENSIONAL
    assert rep.certified and not rep.ambiguous


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 4)])
def test_maximally_mixed(dims):
    d = PartyDims(dims)
    rep = stabilize(special_state("maximally_mixed", d), d)
    assert rep.orbit_dim == 0 and rep.stabilizer_dim == d.group_dim
    assert rep.classification is Classification.DEGENERATE
    assert not rep.center_only


def pure_product_stabilizer(dims):
    """Analytic stabilizer of e1 e1^dag (x) ... : each factor keeps u(1) + u(d-1)."""
    vecs = []
    offset, total = 0, sum(d * d for d in dims)
    for d in dims:
        blocks = []
        e = np.zeros((d, d), dtype=complex)
        e[0, 0] = 1j
        blocks.append(e)
        for b in antihermitian_basis(d - 1):
            full = np.zeros((d, d), dtype=complex)
            full[1:, 1:] = b
            blocks.append(full)
        basis = antihermitian_basis(d)
        for blk in blocks:
            v = np.zeros(total)
            v[offset : offset + d * d] = [np.trace(b.conj().T @ blk).real for b in basis]
            vecs.append(v)
        offset += d * d
    return np.array(vecs)


@pytest.mark.parametrize("dims,expected", [((2, 2), 4), ((3, 3), 8), ((2, 3), 6), ((2, 2, 2), 6)])
def test_pure_product(dims, expected):
    rep = stabilize(special_state("pure_product", dims), dims)
    ref = pure_product_stabilizer(dims)
    assert rep.stabilizer_dim == ref.shape[0] == PartyDims(dims).group_dim - expected
    assert rep.orbit_dim == expected
    assert np.max(subspace_angles(rep.kernel_coords.T, ref.T)) < 1e-8


@pytest.mark.parametrize("m,n,expected", [(3, 4, 23), (2, 3, 11), (2, 2, 6), (4, 5, 39)])
def test_orbit_dimension_witness(m, n, expected):
    assert orbit_dimension(to_state(build_witness(m, n), (m, n)), (m, n)) == expected


def test_orbit_dimension_bell_diagonal():
    rho = special_state("bell_diagonal", (2, 2), BELL)
    rep = stabilize(rho, (2, 2))
    assert rep.orbit_dim == 6 and rep.center_only


def test_bell_diagonal_with_tied_weights_is_degenerate():
    # equal Pauli correlations |c_x| = |c_y| open a one-parameter stabilizer
    rep = stabilize(special_state("bell_diagonal", (2, 2), (0.4, 0.4, 0.1, 0.1)), (2, 2))
    assert rep.orbit_dim < 6


def test_kernel_elements_commute(rng):
    w = special_state("pure_product", (2, 3)).matrix
    rep = stabilize(w, (2, 3))
    for el in rep.kernel_basis:
        a = el.embed()
        assert np.linalg.norm(a @ w - w @ a) <= 1e-8 * np.linalg.norm(w)
        for p in el.parts:
            assert np.abs(p + p.conj().T).max() < 1e-12


def test_report_json_schema():
    rep = stabilize(special_state("maximally_mixed", (2, 2)), (2, 2))
    d = rep.to_dict()
    assert set(d) == {"dims", "orbit_dim", "stabilizer_dim", "sv_gap", "center_only", "classification", "residual_max"}
    assert d["sv_gap"] == "inf"


# center


def test_center_subspace_single_party():
    (el,) = center_subspace((2,))
    np.testing.assert_allclose(el.parts[0], 1j * np.eye(2) / math.sqrt(2))


def test_center_subspace_orthonormal():
    els = center_subspace((2, 3))
    assert len(els) == 2
    flat = [np.concatenate([p.ravel() for p in e.parts]) for e in els]
    gram = np.array([[np.vdot(a, b).real for b in flat] for a in flat])
    np.testing.assert_allclose(gram, np.eye(2), atol=1e-15)


def test_center_in_every_kernel(rng):
    dims = (2, 3)
    w = random_hermitian(6, rng)
    for el in center_subspace(dims):
        a = el.embed()
        assert np.abs(a @ w - w @ a).max() == 0


def test_local_algebra_element_rejects_hermitian():
    with pytest.raises(ValueError):
        LocalAlgebraElement((np.eye(2),))


# group elements


def test_check_identity_and_phases(rng):
    w = random_hermitian(6, rng)
    assert check_group_element(w, [np.eye(2), np.eye(3)]) == 0
    r = check_group_element(w, [np.exp(0.3j) * np.eye(2), np.exp(-1.1j) * np.eye(3)])
    assert r < 1e-15


@pytest.mark.parametrize("p", "xyz")
def test_bell_diagonal_discrete_stabilizer(p):
    rho = special_state("bell_diagonal", (2, 2), BELL).matrix
    assert check_group_element(rho, [PAULI[p], PAULI[p]]) < 1e-12


def test_bell_diagonal_non_member():
    rho = special_state("bell_diagonal", (2, 2), BELL).matrix
    assert check_group_element(rho, [PAULI["x"], np.eye(2)]) > 1e-3


def test_check_rejects_non_unitary():
    with pytest.raises(ValueError, match="not unitary"):
        check_group_element(np.eye(4), [np.eye(2), 2 * np.eye(2)])
    with pytest.raises(ValueError):
        check_group_element(np.eye(4), [np.eye(2), np.eye(3)])


# invariants


dims_strategy = st.sampled_from([(2, 2), (2, 3), (3, 3), (2, 2, 2)])


def _probe_state(kind, dims, rng):
    d = PartyDims(dims)
    if kind == "full":
        return random_density(d, None, rng.integers(2**32)).matrix
    if kind == "low":
        return random_density(d, int(rng.integers(1, 3)), rng.integers(2**32)).matrix
    if kind == "product":
        return special_state("pure_product", d).matrix
    return special_state("witness", d).matrix


@given(dims_strategy, st.sampled_from(["full", "low", "product", "witness"]), st.integers(0, 2**32 - 1))
def test_local_conjugation_invariance(dims, kind, seed):
    rng = np.random.default_rng(seed)
    w = _probe_state(kind, dims, rng)
    _, u = random_local_unitary(dims, rng)
    assert orbit_dimension(u @ w @ u.conj().T, dims) == orbit_dimension(w, dims)


@given(
    dims_strategy,
    st.sampled_from(["full", "low", "product", "witness"]),
    st.sampled_from([2.0, -2.0, 0.5]),
    st.sampled_from([0.0, 3.0]),
    st.integers(0, 2**32 - 1),
)
def test_affine_invariance(dims, kind, a, b, seed):
    w = _probe_state(kind, dims, np.random.default_rng(seed))
    assert orbit_dimension(a * w + b * np.eye(len(w)), dims) == orbit_dimension(w, dims)


@given(st.sampled_from([(2, 2), (2, 3), (2, 2, 2), (3, 3)]), st.integers(0, 2**32 - 1))
def test_universal_bounds(dims, seed):
    rng = np.random.default_rng(seed)
    d = PartyDims(dims)
    w = random_hermitian(d.total, rng)
    if rng.random() < 0.5:
        # block-diagonal perturbations land on lower strata
        w = np.kron(random_hermitian(dims[0], rng), np.eye(d.total // dims[0]))
    rep = stabilize(w, d)
    assert d.k <= rep.stabilizer_dim <= d.group_dim
    assert rep.orbit_dim <= d.max_orbit_dim
    assert rep.orbit_dim + rep.stabilizer_dim == d.group_dim
    assert rep.certified and rep.residual_max <= 1e-8


@given(st.sampled_from([2, 3]), st.sampled_from(["full", "low", "product"]), st.integers(0, 2**32 - 1))
def test_party_swap_symmetry(d, kind, seed):
    rng = np.random.default_rng(seed)
    dims = (d, d)
    w = _probe_state(kind, dims, rng)
    swap = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            swap[j * d + i, i * d + j] = 1
    assert orbit_dimension(swap @ w @ swap.T, dims) == orbit_dimension(w, dims)


@pytest.mark.parametrize("m,n", [(m, n) for n in range(2, 6) for m in range(2, n + 1)])
def test_witness_kernel_is_center(m, n):
    rep = stabilize(to_state(build_witness(m, n), (m, n)), (m, n))
    assert rep.center_only
    assert np.max(subspace_angles(rep.kernel_coords.T, center_coords((m, n)).T)) < 1e-8
