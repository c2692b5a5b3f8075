import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from angleguard.classifier import (
    classify,
    gamma_fit,
    verify_cor411,
    verify_remark45,
    verify_thm410,
    verify_thm43,
    verify_thm44,
)
from angleguard.cstar import ModuleShape
from angleguard.errors import InputError, PreconditionError, ZeroMapError
from angleguard.generators import generic_left_mult, op_a_linear_map, random_linear_map
from angleguard.maps import counterexample, left_mult, sandwich
from angleguard.rng import haar_unitary, isometry, trial_rng

seeds = st.integers(0, 2**32 - 1)
FULL3 = ModuleShape.of(3, 3)


def scaled_isometry(rng, p=3, m=3, gamma=4.0):
    return left_mult(np.sqrt(gamma) * isometry(rng, p, m))


def test_classify_similarity(rng):
    rep = classify(scaled_isometry(rng), 32, 0)
    assert rep.op and rep.strongly_op and rep.cond_iv and rep.cond_v
    assert rep.similarity.is_similarity and np.isclose(rep.similarity.gamma, 2.0)
    assert rep.local and rep.a_linear and rep.consistent


def test_classify_diagonal_multiplier():
    rep = classify(counterexample("diagonal_multiplier", f0=[1.0, 2.0]), 32, 0)
    assert rep.op and rep.strongly_op and rep.cond_iv and rep.cond_v
    assert not rep.similarity.is_similarity
    assert rep.gamma_fit.residual > 0.1


def test_classify_random_dense(rng):
    rep = classify(random_linear_map(rng, FULL3), 32, 0)
    assert not rep.op
    w = rep.witnesses["op"]
    from angleguard.linalg import matrix_from_json

    x, y = matrix_from_json(w["x"]), matrix_from_json(w["y"])
    assert np.linalg.norm(x.conj().T @ y) == 0.0


def test_classify_zero_map():
    with pytest.raises(ZeroMapError):
        classify(left_mult(np.zeros((2, 2))))


def test_gamma_fit_examples(rng):
    fit = gamma_fit(scaled_isometry(rng), 32, 0)
    assert np.isclose(fit.gamma, 4.0) and fit.residual < 1e-12
    fit = gamma_fit(left_mult(haar_unitary(rng, 3)), 32, 0)
    assert np.isclose(fit.gamma, 1.0) and fit.residual < 1e-12


@settings(max_examples=25)
@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_similarities_pass_everything(seed, m, n):
    rng = trial_rng(seed)
    sh = ModuleShape.of(m, n)
    t = op_a_linear_map(rng, sh, m + int(rng.integers(0, 2)))
    rep = classify(t, 12, rng)
    assert rep.op and rep.strongly_op and rep.cond_iv and rep.cond_v and rep.similarity.is_similarity
    fit = rep.gamma_fit
    assert fit.residual <= 1e-8 and abs(fit.probe_gamma - fit.gamma) <= 1e-8 * fit.gamma


def test_equal_modulus_implication_examples(rng):
    v = verify_thm43(scaled_isometry(rng, gamma=2.0))
    assert v.hypothesis_holds and v.conclusion_holds
    v = verify_thm43(counterexample("entrywise_conjugation", m=2, n=2))
    assert v.hypothesis_holds and v.conclusion_holds
    v = verify_thm43(random_linear_map(rng, FULL3))
    assert not v.hypothesis_holds and "hypothesis" in v.witnesses
    v = verify_thm43(sandwich(np.eye(3), haar_unitary(rng, 3)))
    assert v.hypothesis_holds and v.conclusion_holds


def test_order_implication_for_module_maps(rng):
    v = verify_thm44(scaled_isometry(rng))
    assert v.hypothesis_holds and v.conclusion_holds
    v = verify_thm44(generic_left_mult(rng, FULL3))
    assert not v.hypothesis_holds and v.consistent
    with pytest.raises(PreconditionError):
        verify_thm44(counterexample("entrywise_conjugation", m=3, n=3))


def test_op_order_equivalence_examples(rng):
    v = verify_cor411(scaled_isometry(rng, gamma=0.7))
    assert v.op and v.order and v.agree
    v = verify_cor411(generic_left_mult(rng, FULL3))
    assert not v.op and not v.order and {"op", "order"} <= set(v.witnesses)
    with pytest.raises(PreconditionError):
        verify_cor411(counterexample("entrywise_conjugation", m=3, n=3))


def test_locality_scaling_examples(rng):
    v = verify_thm410(scaled_isometry(rng, gamma=3.0), probes=50)
    assert v.hypothesis_met and v.consequences_hold and v.residual <= 1e-8
    v = verify_thm410(generic_left_mult(rng, FULL3))
    assert v.local and not v.op and v.consequences_hold is None and v.consistent
    with pytest.raises(PreconditionError):
        verify_thm410(counterexample("diagonal_multiplier", f0=[1.0, 2.0]))


def test_order_implication_on_m2_examples(rng):
    v = verify_remark45(left_mult(haar_unitary(rng, 2)))
    assert v.hypothesis_holds and v.conclusion_holds
    v = verify_remark45(counterexample("entrywise_conjugation", m=2, n=2))
    assert v.consistent
    v = verify_remark45(random_linear_map(rng, ModuleShape.of(2, 2)))
    assert not v.hypothesis_holds
    with pytest.raises(InputError):
        verify_remark45(left_mult(np.eye(3)))
