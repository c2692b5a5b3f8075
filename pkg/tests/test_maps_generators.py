import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from angleguard.cstar import ModuleShape, gram, order_gap, mod_abs
from angleguard.errors import InputError, ZeroMapError
from angleguard.generators import (
    GENERATOR_KINDS,
    equal_modulus_pair,
    generate,
    op_a_linear_map,
    ordered_module_pair,
    orthogonal_module_pair,
)
from angleguard.linalg import matrix_from_json
from angleguard.maps import (
    COUNTEREXAMPLE_TAGS,
    MapUnderTest,
    counterexample,
    general_linear,
    left_mult,
    sandwich,
)
from angleguard.rng import complex_gaussian, trial_rng

seeds = st.integers(0, 2**32 - 1)
module_shapes = st.one_of(
    st.tuples(st.integers(1, 4), st.integers(1, 4), st.just("full")),
    st.integers(1, 4).map(lambda n: (n, n, "diagonal")),
)


def test_registry_tags():
    assert COUNTEREXAMPLE_TAGS == ("nonlinear_norm_cube", "diagonal_multiplier", "entrywise_conjugation")


def test_map_shape_validation(rng):
    with pytest.raises(InputError):
        MapUnderTest("left_mult", ModuleShape.of(3, 2), 2, np.ones((2, 2)))
    with pytest.raises(InputError):
        general_linear(np.ones((4, 5)), 2, 2, 2)
    with pytest.raises(InputError):
        counterexample("nope")
    with pytest.raises(ZeroMapError):
        left_mult(np.zeros((2, 2))).check_nonzero()


def test_general_linear_and_sandwich(rng):
    s, w = complex_gaussian(rng, (3, 2)), complex_gaussian(rng, (4, 4))
    x = complex_gaussian(rng, (2, 4))
    assert np.allclose(sandwich(s, w)(x), s @ x @ w)
    t = left_mult(s, 4)
    assert np.allclose(t(x), s @ x)
    back = MapUnderTest.from_dict(json.loads(json.dumps(t.to_dict())))
    assert np.array_equal(back.matrix, t.matrix)


def test_counterexamples():
    cube = counterexample("nonlinear_norm_cube", dim=3)
    v = np.array([[1.0], [2.0], [2.0]])
    assert np.allclose(cube(v), 9 * v)
    d = counterexample("diagonal_multiplier", f0=[1, 2, 3], n=3)
    assert np.allclose(d(np.eye(3)), np.diag([1, 2, 3]))
    c = counterexample("entrywise_conjugation", m=2, n=2)
    assert np.allclose(c(np.array([[1j, 0], [0, 1]])), [[-1j, 0], [0, 1]])


@given(seeds, module_shapes)
def test_pair_generators(seed, shape):
    rng = trial_rng(seed)
    sh = ModuleShape.of(*shape)
    x, y = orthogonal_module_pair(rng, sh)
    assert not np.any(x.conj().T @ y)
    x, y = equal_modulus_pair(rng, sh)
    assert np.linalg.norm(gram(x) - gram(y)) <= 1e-12 * np.linalg.norm(gram(x)) * 10
    lo, hi = ordered_module_pair(rng, sh)
    assert order_gap(mod_abs(lo), mod_abs(hi)) >= -1e-12


@given(seeds, module_shapes)
def test_op_a_linear_map_scales(seed, shape):
    rng = trial_rng(seed)
    sh = ModuleShape.of(*shape)
    t = op_a_linear_map(rng, sh)
    g = t.matrix.conj().T @ t.matrix
    gamma = g[0, 0].real
    assert 0.5 <= gamma <= 4
    assert np.allclose(g, gamma * np.eye(sh.m))


def test_generate_examples():
    m = matrix_from_json(generate("similarity_map", {"dim": 3}, 7)["map"])
    sv = np.linalg.svd(m, compute_uv=False)
    assert sv.max() - sv.min() <= 1e-12 * sv.max()
    out = generate("orthogonal_module_pair", {"m": 3, "n": 4}, 0)
    x, y = matrix_from_json(out["x"]["matrix"]), matrix_from_json(out["y"]["matrix"])
    assert x.shape == (3, 4) and np.linalg.norm(x.conj().T @ y) == 0.0
    out = generate("counterexample", {"tag": "diagonal_multiplier", "n": 3, "f0": [1, 2, 3]}, 0)
    assert out["map"]["tag"] == "diagonal_multiplier"
    assert np.allclose(matrix_from_json(out["map"]["matrix"]), np.diag([1, 2, 3]))


@pytest.mark.parametrize("kind", GENERATOR_KINDS)
def test_generate_deterministic(kind):
    params = {"tag": "entrywise_conjugation"} if kind == "counterexample" else {}
    a, b = generate(kind, params, 11), generate(kind, params, 11)
    assert json.dumps(a) == json.dumps(b)


def test_generate_errors():
    with pytest.raises(InputError):
        generate("nope")
    with pytest.raises(InputError):
        generate("counterexample", {"tag": "nope"})
