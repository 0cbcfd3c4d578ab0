import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from azumaya_chow import hermitian as H
from azumaya_chow.hermitian import (
    DimensionMismatch,
    LinearMap,
    NotHermitian,
    NotPositiveDefinite,
)

TOL = 1e-9


# --- make_space / random_space ------------------------------------------------


def test_identity_gram_is_valid():
    s = H.make_space(2, np.eye(2))
    assert s.dim == 2
    assert np.array_equal(s.gram, np.eye(2))


def test_one_dimensional_positive_scalar():
    assert H.make_space(1, [[2]]).gram[0, 0] == 2


def test_indefinite_gram_rejected():
    # eigenvalues 3 and -1
    assert sorted(np.linalg.eigvalsh(np.array([[1.0, 2.0], [2.0, 1.0]]))) == pytest.approx([-1, 3])
    with pytest.raises(NotPositiveDefinite):
        H.make_space(2, [[1, 2], [2, 1]])


def test_non_hermitian_rejected():
    with pytest.raises(NotHermitian):
        H.make_space(2, [[1, 1j], [1j, 1]])


@pytest.mark.parametrize("dim", [0, -1])
def test_zero_dimension_rejected(dim):
    with pytest.raises(DimensionMismatch):
        H.make_space(dim, np.eye(max(dim, 1)))


def test_shape_mismatch_rejected():
    with pytest.raises(DimensionMismatch):
        H.make_space(3, np.eye(2))


def test_random_space_deterministic():
    a, b = H.random_space(3, 42), H.random_space(3, 42)
    assert np.array_equal(a.gram, b.gram)
    assert not np.array_equal(a.gram, H.random_space(3, 43).gram)


def test_random_space_dim_one_positive_real():
    g = H.random_space(1, 0).gram
    assert g.shape == (1, 1)
    assert g[0, 0].imag == 0 and g[0, 0].real > 0


def test_random_space_validates():
    s = H.random_space(4, 7)
    H.make_space(4, s.gram)


def test_values_are_read_only():
    s = H.random_space(2, 1)
    with pytest.raises(ValueError):
        s.gram[0, 0] = 5


# --- riesz / duals --------------------------------------------------------------


def test_riesz_standard_is_identity():
    theta = H.riesz(H.standard_space(2))
    assert theta.conjugate_linear
    assert np.array_equal(theta.matrix, np.eye(2))


def test_riesz_scaled_line():
    theta = H.riesz(H.make_space(1, [[2]]))
    assert theta([1])[0] == 2


@given(st.integers(0, 10_000), st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_riesz_is_conjugate_linear(seed, c):
    s = H.random_space(3, seed)
    theta = H.riesz(s)
    v = np.random.default_rng(seed).standard_normal(3)
    assert np.allclose(theta(c * v), np.conj(c) * theta(v))


def test_riesz_value_is_inner_product():
    s = H.random_space(3, 5)
    rng = np.random.default_rng(0)
    u, v = rng.standard_normal(3) + 1j * rng.standard_normal(3), rng.standard_normal(3)
    # theta(v) evaluated on u is h(u, v)
    assert np.isclose(u @ H.riesz(s)(v), s.inner(u, v))


def test_dual_of_standard():
    assert np.allclose(H.dual_space(H.standard_space(3)).gram, np.eye(3))


def test_dual_of_diagonal():
    d = [2.0, 5.0, 0.25]
    assert np.allclose(H.dual_space(H.make_space(3, np.diag(d))).gram, np.diag([1 / x for x in d]))


@pytest.mark.parametrize("seed", range(20))
def test_dual_gram_matches_closed_form(seed):
    # independent closed form: Gram of the dual metric is (G^{-1})^T
    s = H.random_space(1 + seed % 4, seed)
    assert np.max(np.abs(H.dual_space(s).gram - np.linalg.inv(s.gram).T)) < TOL


@pytest.mark.parametrize("seed", range(20))
def test_bidual_round_trip(seed):
    assert H.bidual_residual(H.random_space(1 + seed % 4, seed)) < TOL


@pytest.mark.parametrize("seed", range(20))
def test_riesz_inverse(seed):
    assert H.riesz_roundtrip_residual(H.random_space(1 + seed % 4, seed)) < TOL


# --- tensors and homs -------------------------------------------------------------


def test_tensor_of_identities():
    t = H.tensor_space(H.standard_space(2), H.standard_space(3))
    assert t.dim == 6
    assert np.array_equal(t.gram, np.eye(6))


def test_tensor_of_scalars():
    t = H.tensor_space(H.make_space(1, [[2]]), H.make_space(1, [[3]]))
    assert t.gram[0, 0] == 6


def test_tensor_basis_order():
    v, w = H.random_space(2, 1), H.random_space(3, 2)
    t = H.tensor_space(v, w)
    for i, j, k, l in itertools.product(range(2), range(3), range(2), range(3)):
        assert np.isclose(t.gram[i * 3 + j, k * 3 + l], v.gram[i, k] * w.gram[j, l])


def test_hom_of_standard_is_frobenius():
    hom = H.hom_space(H.standard_space(2), H.standard_space(3))
    assert hom.dim == 6
    assert np.allclose(hom.gram, np.eye(6))
    rng = np.random.default_rng(3)
    phi = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    psi = rng.standard_normal((3, 2))
    assert np.isclose(hom.inner(H.hom_vec(phi), H.hom_vec(psi)), np.trace(phi @ psi.conj().T))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_identity_norm_in_end(n):
    hom = H.hom_space(H.standard_space(n), H.standard_space(n))
    e = H.hom_vec(np.eye(n))
    assert np.isclose(hom.inner(e, e), n)


def test_hom_vec_round_trip():
    phi = np.arange(6).reshape(3, 2)
    assert np.array_equal(H.hom_unvec(H.hom_vec(phi), 2, 3), phi)


# --- canonical maps ------------------------------------------------------------------


def test_iota_standard_identity():
    assert np.allclose(H.canonical_iota(H.standard_space(2)).matrix, np.eye(2))


@pytest.mark.parametrize("seed", range(10))
def test_iota_is_identity_in_coordinates(seed):
    iota = H.canonical_iota(H.random_space(3, seed))
    assert not iota.conjugate_linear
    assert np.max(np.abs(iota.matrix - np.eye(3))) < TOL


def test_composition_flag_algebra():
    s = H.random_space(2, 0)
    theta = H.riesz(s)
    assert theta.compose(theta.inverse()).conjugate_linear is False
    lin = H.identity_map(theta.dst)
    assert lin.compose(theta).conjugate_linear is True
    assert theta.inverse().compose(lin).conjugate_linear is True


def test_alpha_one_dimensional():
    a = H.canonical_alpha(H.standard_space(1), H.standard_space(1))
    assert np.array_equal(a.matrix, [[1]])


def test_alpha_two_by_two_index_map():
    a = H.canonical_alpha(H.random_space(2, 0), H.random_space(2, 1))
    # evaluation on basis tensors: e^i (x) f^j maps to the dual basis vector of e_i (x) f_j
    assert np.array_equal(a.matrix, np.eye(4))


def test_alpha_on_basis():
    a = H.canonical_alpha(H.standard_space(2), H.standard_space(2))
    functional = a([1, 0, 0, 0])
    assert functional @ np.array([1, 0, 0, 0]) == 1


def test_swap_trivial_factor():
    s = H.canonical_swap(H.standard_space(1), H.standard_space(3))
    assert np.array_equal(s.matrix, np.eye(3))


def test_swap_two_by_two():
    expected = np.zeros((4, 4))
    for i, j in itertools.product(range(2), range(2)):
        expected[j * 2 + i, i * 2 + j] = 1
    s = H.canonical_swap(H.standard_space(2), H.standard_space(2))
    assert np.array_equal(s.matrix, expected)
    assert np.array_equal(expected, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def test_swap_involution():
    v, w = H.random_space(2, 3), H.random_space(3, 4)
    there, back = H.canonical_swap(v, w), H.canonical_swap(w, v)
    assert np.array_equal(back.compose(there).matrix, np.eye(6))


def test_trace_one_dimensional():
    t = H.trace_pairing_map(H.standard_space(1), H.standard_space(1))
    assert t.matrix[0, 0] == 1
    assert t([3 + 1j])[0] == 3 + 1j


def test_trace_pairs_matrix_units():
    t = H.trace_pairing_map(H.standard_space(2), H.standard_space(2))
    for i, j in itertools.product(range(2), range(2)):
        e_ij = np.zeros((2, 2))
        e_ij[i, j] = 1
        functional = t(H.hom_vec(e_ij))
        for k, l in itertools.product(range(2), range(2)):
            e_kl = np.zeros((2, 2))
            e_kl[k, l] = 1
            want = 1 if (k, l) == (j, i) else 0
            assert functional @ H.hom_vec(e_kl) == want


@pytest.mark.parametrize("dims", [(1, 1), (2, 3), (3, 2), (4, 4)])
def test_trace_functional_matches_trace(dims):
    v, w = H.random_space(dims[0], 1), H.random_space(dims[1], 2)
    t = H.trace_pairing_map(v, w)
    rng = np.random.default_rng(9)
    phi = rng.standard_normal((dims[1], dims[0])) + 1j * rng.standard_normal((dims[1], dims[0]))
    psi = rng.standard_normal((dims[0], dims[1])) + 1j * rng.standard_normal((dims[0], dims[1]))
    assert np.isclose(t(H.hom_vec(phi)) @ H.hom_vec(psi), np.trace(psi @ phi))
    assert abs(np.linalg.det(t.matrix)) > 0.5


# --- residuals --------------------------------------------------------------------------


def test_identity_residual_zero():
    s = H.random_space(3, 0)
    assert H.isometry_residual(H.identity_map(s)) == 0


def test_scaling_residual():
    s = H.standard_space(1)
    assert H.isometry_residual(LinearMap(s, s, [[2]])) == pytest.approx(3)


def test_map_shape_checked():
    with pytest.raises(DimensionMismatch):
        LinearMap(H.standard_space(2), H.standard_space(3), np.eye(2))


def test_natiso_trivial():
    one = H.standard_space(1)
    assert H.natiso_residual(one, one, one) == 0


def test_natiso_identity_grams():
    assert H.natiso_residual(H.standard_space(2), H.standard_space(1), H.standard_space(1)) < TOL


def test_natiso_random_two():
    spaces = [H.random_space(2, s) for s in (11, 12, 13)]
    assert H.natiso_residual(*spaces) < TOL


def test_natiso_detects_wrong_metric():
    # perturbing the target metric must break the isometry
    e, m, n = (H.random_space(2, s) for s in (1, 2, 3))
    f = H.natiso_map(e, m, n)
    skewed = H.make_space(f.dst.dim, 2 * f.dst.gram)
    assert H.isometry_residual(LinearMap(f.src, skewed, f.matrix)) > 1e-3


dims = st.integers(1, 4)
seeds = st.integers(0, 2**31 - 1)


@settings(max_examples=100, deadline=None)
@given(dims, seeds)
def test_property_iota_and_riesz(d, seed):
    s = H.random_space(d, seed)
    assert H.isometry_residual(H.canonical_iota(s)) < TOL
    assert H.isometry_residual(H.riesz(s)) < TOL
    assert H.riesz_roundtrip_residual(s) < TOL
    assert H.bidual_residual(s) < TOL


@settings(max_examples=100, deadline=None)
@given(dims, dims, seeds)
def test_property_pair_lemmas(d1, d2, seed):
    v, w = H.random_space(d1, seed), H.random_space(d2, seed + 1)
    assert H.isometry_residual(H.canonical_alpha(v, w)) < TOL
    assert H.isometry_residual(H.canonical_swap(v, w)) < TOL
    assert H.isometry_residual(H.trace_pairing_map(v, w)) < TOL


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), seeds)
def test_property_natiso(d1, d2, d3, seed):
    spaces = [H.random_space(d, seed + k) for k, d in enumerate((d1, d2, d3))]
    assert H.natiso_residual(*spaces) < TOL


def test_matrix_json_round_trip():
    m = H.random_space(3, 0).gram
    data = H.matrix_to_json(m)
    assert data[0][1] == [m[0, 1].real, m[0, 1].imag]
    assert np.array_equal(H.matrix_from_json(data), m)
