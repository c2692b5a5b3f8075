import numpy as np
import pytest
from hypothesis import given, strategies as st

from angleguard.errors import InputError, NotPositiveError
from angleguard.linalg import (
    ToleranceConfig,
    herm_eigendecomp,
    hermitian,
    is_positive,
    loewner_gap,
    loewner_leq,
    matrix_from_json,
    matrix_to_json,
    op_norm,
    psd_sqrt,
)
from angleguard.rng import complex_gaussian, trial_rng

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 8)


def rand_herm(rng, n):
    a = complex_gaussian(rng, (n, n))
    return (a + a.conj().T) / 2


def rand_psd(rng, n, rank=None):
    m = complex_gaussian(rng, (rank or n, n))
    return m.conj().T @ m


def test_identity_eigenvalues():
    dec = herm_eigendecomp(np.eye(3))
    assert np.allclose(dec.eigenvalues, [1, 1, 1])


def test_diagonal_eigenbasis_is_permutation():
    dec = herm_eigendecomp(np.diag([1.0, 2.0]))
    assert np.allclose(dec.eigenvalues, [2, 1])
    assert np.allclose(np.abs(dec.basis), [[0, 1], [1, 0]])


def test_non_finite_rejected():
    with pytest.raises(InputError):
        herm_eigendecomp(np.array([[np.nan, 0], [0, 1]]))


def test_non_hermitian_rejected():
    with pytest.raises(InputError):
        hermitian(np.array([[1, 1], [0, 1]]))


@given(seeds, dims)
def test_eigendecomp_reconstructs(seed, n):
    h = rand_herm(trial_rng(seed), n)
    dec = herm_eigendecomp(h)
    u = dec.basis
    # Oracle: multiply the returned factors back together.
    assert np.linalg.norm(u @ np.diag(dec.eigenvalues) @ u.conj().T - h) <= 1e-12 * max(1, np.linalg.norm(h))
    assert np.allclose(u.conj().T @ u, np.eye(n), atol=1e-12)
    assert np.all(np.diff(dec.eigenvalues) <= 0)
    assert abs(dec.eigenvalues.sum() - np.trace(h).real) <= 1e-12 * max(1, np.linalg.norm(h))


def test_eigendecomp_deterministic(rng):
    h = rand_herm(rng, 5)
    a, b = herm_eigendecomp(h), herm_eigendecomp(h.copy())
    assert np.array_equal(a.basis, b.basis)


def test_sqrt_examples():
    assert np.allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    assert np.allclose(psd_sqrt(np.eye(4)), np.eye(4))


@given(seeds, st.integers(1, 16))
def test_sqrt_squares_back(seed, n):
    rng = trial_rng(seed)
    h = rand_psd(rng, n, int(rng.integers(1, n + 1)))
    s = psd_sqrt(h)
    assert np.linalg.norm(s @ s - h) <= 1e-10 * np.linalg.norm(h)
    assert is_positive(s)
    assert np.allclose(s, s.conj().T)


@given(seeds, dims)
def test_sqrt_of_square_is_identity(seed, n):
    s = psd_sqrt(rand_psd(trial_rng(seed), n))
    assert np.linalg.norm(psd_sqrt(s @ s) - s) <= 1e-9 * max(1, np.linalg.norm(s))


def test_sqrt_clamps_roundoff_but_rejects_negative():
    h = np.diag([1.0, -1e-13])
    assert np.allclose(psd_sqrt(h), np.diag([1.0, 0.0]))
    with pytest.raises(NotPositiveError):
        psd_sqrt(np.diag([1.0, -1e-3]))


def test_is_positive_examples(rng):
    assert is_positive(np.diag([1.0, 0.0]))
    assert not is_positive(np.diag([1.0, -1.0]))
    x = complex_gaussian(rng, (4, 3))
    assert is_positive(x.conj().T @ x)


def test_loewner_examples(rng):
    assert loewner_leq(np.eye(3), 2 * np.eye(3))
    a = rand_herm(rng, 3)
    assert loewner_leq(a, a)
    p, q = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    assert not loewner_leq(p, q) and not loewner_leq(q, p)
    # Oracle: the difference has eigenvalues +-1.
    assert np.isclose(loewner_gap(p, q), -1.0)
    with pytest.raises(InputError):
        loewner_leq(np.eye(2), np.eye(3))


@given(seeds, dims)
def test_sqrt_operator_monotone(seed, n):
    rng = trial_rng(seed)
    a = rand_psd(rng, n)
    c = complex_gaussian(rng, (n, n))
    b = a + c.conj().T @ c
    assert loewner_leq(psd_sqrt(a), psd_sqrt(b))


@given(seeds, dims)
def test_congruence_bound(seed, n):
    rng = trial_rng(seed)
    a = rand_psd(rng, n)
    c = complex_gaussian(rng, (n, n))
    assert loewner_leq(c.conj().T @ a @ c, op_norm(a) * (c.conj().T @ c))


def test_matrix_json_round_trip(rng):
    a = complex_gaussian(rng, (2, 3))
    obj = matrix_to_json(a)
    assert set(obj) == {"rows", "cols", "re", "im"}
    assert obj["re"][:3] == a[0].real.tolist()
    assert np.array_equal(matrix_from_json(obj), a)


def test_tolerance_validation():
    with pytest.raises(InputError):
        ToleranceConfig(abs_tol=-1.0)
    assert ToleranceConfig.uniform(1e-6).psd_slack == 1e-6
