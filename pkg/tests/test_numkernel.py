import json

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from liesym.numkernel import (
    MatrixFormatError, NotHermitianError, NotPositiveSemidefiniteError, commutator, eig_hermitian,
    is_hermitian, is_positive_semidefinite, is_unitary, load_matrix, mat_exp, matrix_from_json,
    matrix_to_json, max_abs, psd_sqrt, save_matrix,
)

finite = st.floats(-5, 5, allow_nan=False)


def _hermitian(n, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


@given(st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_eig_matches_scipy(n, seed):
    h = _hermitian(n, np.random.default_rng(seed))
    dec = eig_hermitian(h)
    np.testing.assert_allclose(dec.eigenvalues, sla.eigvalsh(h), atol=1e-10)
    assert max_abs(dec.reconstruct() - h) < 1e-10
    assert is_unitary(dec.eigenvectors, 1e-10)


def test_eig_sorted_ascending_and_degenerate():
    dec = eig_hermitian(np.diag([3.0, 1.0, 1.0, -2.0]))
    assert list(dec.eigenvalues) == [-2.0, 1.0, 1.0, 3.0]


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


@given(arrays(np.float64, (3, 3), elements=finite), arrays(np.float64, (3, 3), elements=finite))
def test_mat_exp_matches_scipy(a, b):
    m = a + 1j * b
    ref = sla.expm(m)
    assert max_abs(mat_exp(m) - ref) <= 1e-10 * max(1.0, max_abs(ref))


def test_mat_exp_of_antihermitian_is_unitary(rng):
    h = _hermitian(4, rng)
    assert is_unitary(mat_exp(1j * h), 1e-12)


def test_mat_exp_zero_and_large_norm():
    assert max_abs(mat_exp(np.zeros((2, 2))) - np.eye(2)) == 0.0
    m = np.array([[0, 50.0], [-50.0, 0]])
    ref = sla.expm(m)
    assert max_abs(mat_exp(m) - ref) < 1e-10


def test_psd_sqrt(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    s = a @ a.conj().T
    r = psd_sqrt(s)
    assert is_hermitian(r, 1e-12)
    assert max_abs(r @ r - s) < 1e-10 * max_abs(s)
    assert is_positive_semidefinite(r)


def test_psd_sqrt_rejects_negative():
    with pytest.raises(NotPositiveSemidefiniteError):
        psd_sqrt(np.diag([1.0, -1.0]))


def test_commutator_antisymmetric(rng):
    a, b = _hermitian(3, rng), _hermitian(3, rng)
    assert max_abs(commutator(a, b) + commutator(b, a)) == 0.0


@given(arrays(np.float64, (3, 3), elements=finite), arrays(np.float64, (3, 3), elements=finite))
def test_matrix_json_round_trip_bit_exact(a, b):
    m = a + 1j * b
    back = matrix_from_json(json.loads(json.dumps(matrix_to_json(m))))
    assert np.array_equal(back, m)


def test_matrix_file_round_trip(tmp_path):
    m = np.array([[1 + 2j, 0.1], [np.pi, -1e-300]])
    save_matrix(m, tmp_path / "m.json")
    assert np.array_equal(load_matrix(tmp_path / "m.json"), m)


@pytest.mark.parametrize("obj", [
    {"dim": 2, "entries": [[[1, 0], [0, 0]]]},
    {"dim": 2, "entries": [[[1, 0]], [[0, 0], [1, 0]]]},
    {"dim": 1, "entries": [[["nan", 0]]]},
    {"dim": 1, "entries": [[[1]]]},
    {"dim": 1},
])
def test_matrix_parser_rejects_bad_input(obj):
    with pytest.raises(MatrixFormatError):
        matrix_from_json(obj)


def test_matrix_parser_rejects_non_finite_json(tmp_path):
    p = tmp_path / "m.json"
    p.write_text('{"dim": 1, "entries": [[[Infinity, 0]]]}')
    with pytest.raises(MatrixFormatError):
        load_matrix(p)
