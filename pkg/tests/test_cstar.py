import numpy as np
import pytest
from hypothesis import given, strategies as st

from angleguard.cstar import (
    AlgebraSpec,
    ModuleElement,
    ModuleShape,
    gram,
    is_A_linear,
    is_local,
    lemma41_status,
    mod_abs,
    mod_abs_via_sqrt,
    mod_inner,
    mod_norm,
    moduli_equal,
    polarize,
    remark42_conditions,
    triangle_gap,
)
from angleguard.errors import InputError
from angleguard.generators import orthogonal_module_pair
from angleguard.linalg import loewner_leq, op_norm
from angleguard.maps import counterexample, left_mult
from angleguard.rng import complex_gaussian, haar_unitary, trial_rng

seeds = st.integers(0, 2**32 - 1)
shapes = st.tuples(st.integers(1, 4), st.integers(1, 4))


def unit(i, j, n=2):
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1
    return e


def test_inner_examples():
    assert np.array_equal(mod_inner(unit(0, 0), unit(1, 1)), np.zeros((2, 2)))
    assert np.array_equal(mod_inner(unit(0, 0), unit(0, 0)), unit(0, 0))
    with pytest.raises(InputError):
        mod_inner(np.eye(2), np.eye(3))


@given(seeds, shapes)
def test_inner_axioms(seed, shape):
    rng = trial_rng(seed)
    m, n = shape
    x, y = complex_gaussian(rng, (m, n)), complex_gaussian(rng, (m, n))
    a = complex_gaussian(rng, (n, n))
    assert np.allclose(mod_inner(x, y @ a), mod_inner(x, y) @ a)
    assert np.allclose(mod_inner(x, y).conj().T, mod_inner(y, x))
    assert np.linalg.eigvalsh(gram(x)).min() >= -1e-12
    # Cauchy-Schwarz in operator norm.
    assert op_norm(mod_inner(x, y)) ** 2 <= op_norm(gram(x)) * op_norm(gram(y)) * (1 + 1e-12)


def test_modulus_examples(rng):
    lam = 0.3 - 0.4j
    assert np.allclose(mod_abs(np.diag([1.0, lam])), np.diag([1.0, abs(lam)]))
    assert np.allclose(mod_abs(unit(0, 1)), unit(1, 1))
    x = complex_gaussian(rng, (3, 3))
    u = haar_unitary(rng, 3)
    assert np.allclose(mod_abs(u @ x), mod_abs(x))
    assert np.isclose(mod_norm(x), np.linalg.norm(x, 2))


@given(seeds, shapes)
def test_modulus_matches_sqrt_oracle(seed, shape):
    x = complex_gaussian(trial_rng(seed), shape)
    a = mod_abs(x)
    assert np.linalg.norm(a - mod_abs_via_sqrt(x)) <= 1e-7 * max(1, np.linalg.norm(a))
    assert np.linalg.norm(a @ a - gram(x)) <= 1e-12 * max(1, np.linalg.norm(gram(x))) * 10


@given(seeds, shapes)
def test_polarization(seed, shape):
    rng = trial_rng(seed)
    x, y = complex_gaussian(rng, shape), complex_gaussian(rng, shape)
    scale = np.linalg.norm(x) * np.linalg.norm(y)
    assert np.linalg.norm(polarize(x, y) - mod_inner(x, y)) <= 1e-12 * scale * 10
    # The i^k-weighted form recovers the inner product with the slots swapped.
    literal = sum((1j) ** k * gram(x + (1j) ** k * y) for k in range(4)) / 4
    assert np.linalg.norm(literal - mod_inner(y, x)) <= 1e-12 * scale * 10


def test_orthogonality_forms_examples():
    rep = lemma41_status(unit(0, 0), unit(1, 1))
    assert rep.verdicts == (True, True, True, True)
    rep = lemma41_status(unit(0, 0), unit(0, 0))
    assert rep.verdicts == (False, False, False, False)
    assert rep.witnesses["iv"]["lambda"] == [1.0, 0.0]


@given(seeds, shapes, st.booleans())
def test_orthogonality_forms_agree(seed, shape, orthogonal):
    rng = trial_rng(seed)
    sh = ModuleShape.of(*shape)
    if orthogonal:
        x, y = orthogonal_module_pair(rng, sh)
    else:
        x, y = sh.random_element(rng), sh.random_element(rng)
    rep = lemma41_status(x, y, 8, rng)
    assert rep.agree
    if orthogonal:
        assert rep.cond_i
        # Orthogonality survives right multiplication.
        a, b = complex_gaussian(rng, (shape[1],) * 2), complex_gaussian(rng, (shape[1],) * 2)
        assert op_norm(mod_inner(x @ b, y @ a)) <= 1e-12 * op_norm(x) * op_norm(y) * op_norm(a) * op_norm(b) + 1e-300


def test_orthogonality_forms_diagonal_algebra(rng):
    sh = ModuleShape.of(3, 3, "diagonal")
    x, y = orthogonal_module_pair(rng, sh)
    assert lemma41_status(ModuleElement(x, sh.algebra), ModuleElement(y, sh.algebra)).verdicts == (True,) * 4
    x, y = sh.random_element(rng), sh.random_element(rng)
    assert lemma41_status(ModuleElement(x, sh.algebra), ModuleElement(y, sh.algebra)).verdicts == (False,) * 4


def test_order_conditions_examples(rng):
    sh = ModuleShape.of(3, 3)
    x, y = orthogonal_module_pair(rng, sh)
    rep = remark42_conditions(x, y, 32, rng)
    assert all(rep.verdicts.values())
    rep = remark42_conditions(unit(0, 0), unit(0, 0))
    assert not rep.verdicts["ix"]
    assert rep.witnesses["ix"]["lambda"] == [-1.0, 0.0]


@given(seeds)
def test_order_conditions_violated_when_not_orthogonal(seed):
    rng = trial_rng(seed)
    sh = ModuleShape.of(3, 3)
    rep = remark42_conditions(sh.random_element(rng), sh.random_element(rng), 16, rng)
    assert not rep.verdicts["vi"] or not rep.verdicts["vii"]


def test_locality_and_linearity(rng):
    sh = ModuleShape.of(2, 2)
    t = left_mult(complex_gaussian(rng, (2, 2)))
    assert is_local(t, sh) and is_A_linear(t, sh)
    conj = counterexample("entrywise_conjugation", m=2, n=2)
    v = is_local(conj, sh, 16, 0)
    assert not v and v.witness is not None
    assert not is_A_linear(conj, sh)
    assert is_local(lambda x: 0 * x, sh)
    assert is_A_linear(lambda x: (0.5 - 2j) * x, sh)


def test_triangle_witness_in_m2():
    for trial in range(100):
        rng = trial_rng(7, trial)
        x, y = complex_gaussian(rng, (2, 2)), complex_gaussian(rng, (2, 2))
        if triangle_gap(x, y) < -1e-6:
            lhs, rhs = mod_abs(x + y), mod_abs(x) + mod_abs(y)
            assert not loewner_leq(lhs, rhs)
            break
    else:
        pytest.fail("no triangle-inequality witness in 100 trials")


def test_diagonal_algebra_commutes(rng):
    sh = ModuleShape.of(3, 3, "diagonal")
    f, g = sh.random_element(rng), sh.random_element(rng)
    assert np.allclose(mod_inner(f, g) @ mod_inner(g, f), mod_inner(g, f) @ mod_inner(f, g))
    assert np.allclose(mod_abs(f @ g), mod_abs(f) @ mod_abs(g))


def test_shapes_and_serialization(rng):
    with pytest.raises(InputError):
        ModuleShape.of(2, 3, "diagonal")
    with pytest.raises(InputError):
        ModuleElement(np.ones((2, 2)), AlgebraSpec(2, "diagonal"))
    el = ModuleElement(complex_gaussian(rng, (2, 3)), AlgebraSpec(3))
    d = el.to_dict()
    assert set(d) == {"m", "n", "kind", "matrix"}
    assert np.array_equal(ModuleElement.from_dict(d).matrix, el.matrix)
    assert moduli_equal(el.matrix, haar_unitary(rng, 2) @ el.matrix)
