"""Seeded instance generators for vectors, module pairs and maps.

The pair generators build their defining relation in exactly: orthogonal
module pairs have disjoint row (or diagonal) supports so ``x* y = 0`` holds
bit for bit, ordered pairs are ``x = V y`` with ``||V|| <= 1``, equal-modulus
pairs are ``y = U x`` with ``U`` unitary.
"""

from __future__ import annotations

import math

import numpy as np

from . import real_angle
from .cstar import AlgebraKind, ModuleElement, ModuleShape
from .errors import InputError
from .linalg import matrix_to_json
from .maps import COUNTEREXAMPLE_TAGS, MapUnderTest, counterexample, general_linear, left_mult
from .rng import complex_gaussian, haar_unitary, isometry, trial_rng


def _scale(rng) -> float:
    return float(np.exp(0.5 * rng.standard_normal()))


def orthogonal_module_pair(rng, shape: ModuleShape) -> tuple[np.ndarray, np.ndarray]:
    """``x, y`` with ``x* y = 0`` exactly, via disjoint row supports and
    independent random left factors on each block."""
    x, y = shape.zeros(), shape.zeros()
    if not shape.algebra.is_full:
        mask = rng.random(shape.n) < 0.5
        if shape.n > 1 and (mask.all() or not mask.any()):
            mask[int(rng.integers(shape.n))] ^= True
        d = complex_gaussian(rng, shape.n)
        np.fill_diagonal(x, np.where(mask, d, 0))
        d = complex_gaussian(rng, shape.n)
        np.fill_diagonal(y, np.where(mask, 0, d))
        return x * _scale(rng), y * _scale(rng)
    if shape.m == 1:
        return shape.random_element(rng), y
    perm = rng.permutation(shape.m)
    k = int(rng.integers(1, shape.m))
    r1, r2 = np.sort(perm[:k]), np.sort(perm[k:])
    x[r1] = complex_gaussian(rng, (k, k)) @ complex_gaussian(rng, (k, shape.n))
    y[r2] = complex_gaussian(rng, (shape.m - k, shape.m - k)) @ complex_gaussian(rng, (shape.m - k, shape.n))
    return x * _scale(rng) / math.sqrt(k), y * _scale(rng) / math.sqrt(shape.m - k)


def equal_modulus_pair(rng, shape: ModuleShape) -> tuple[np.ndarray, np.ndarray]:
    """``y = U x`` with ``U`` unitary, so ``|x| = |y|``."""
    x = shape.random_element(rng) * _scale(rng)
    if shape.algebra.is_full:
        u = haar_unitary(rng, shape.m)
    else:
        u = np.diag(np.exp(2j * np.pi * rng.random(shape.n)))
    return x, u @ x


def ordered_module_pair(rng, shape: ModuleShape) -> tuple[np.ndarray, np.ndarray]:
    """``x = V y`` with ``||V|| <= 1``, so ``|x| <= |y|``."""
    y = shape.random_element(rng) * _scale(rng)
    r = rng.uniform(0.5, 1.0)
    if shape.algebra.is_full:
        v = complex_gaussian(rng, (shape.m, shape.m))
        v *= r / np.linalg.norm(v, 2)
    else:
        d = complex_gaussian(rng, shape.n)
        v = np.diag(d * r / np.max(np.abs(d)))
    return v @ y, y


def rank_deficient_element(rng, shape: ModuleShape) -> np.ndarray:
    """Random element with at least one zero row (diagonal entry), so that it
    has nonzero elements orthogonal to it."""
    x = shape.random_element(rng)
    rows = shape.m if shape.algebra.is_full else shape.n
    if rows < 2:
        return x
    k = int(rng.integers(1, rows))
    zero = rng.choice(rows, size=k, replace=False)
    if shape.algebra.is_full:
        x[zero] = 0
    else:
        x[zero, zero] = 0
    return x


def op_a_linear_map(rng, shape: ModuleShape, out_rows: int | None = None,
                    gamma: float | None = None) -> MapUnderTest:
    """``x -> S x`` with ``S* S = gamma I``, ``gamma`` uniform in ``[0.5, 4]``."""
    if gamma is None:
        gamma = float(rng.uniform(0.5, 4.0))
    p = shape.m if out_rows is None else int(out_rows)
    if shape.algebra.is_full:
        s = math.sqrt(gamma) * isometry(rng, p, shape.m)
    else:
        s = math.sqrt(gamma) * np.diag(np.exp(2j * np.pi * rng.random(shape.n)))
    return left_mult(s, shape.algebra)


def generic_left_mult(rng, shape: ModuleShape, out_rows: int | None = None) -> MapUnderTest:
    """``x -> S x`` with ``S`` having distinct singular values (not a similarity)."""
    p = shape.m if out_rows is None else int(out_rows)
    if shape.algebra.is_full:
        u = haar_unitary(rng, p)[:, : min(p, shape.m)]
        w = haar_unitary(rng, shape.m)[: min(p, shape.m)]
        sv = np.sort(rng.uniform(0.3, 2.0, min(p, shape.m)))[::-1]
        sv[0] = max(sv[0], sv[-1] + 0.5)
        s = (u * sv) @ w
    else:
        d = complex_gaussian(rng, shape.n)
        d[0] = 2.0 * d[0] / abs(d[0])
        d[-1] = 0.5 * d[-1] / abs(d[-1])
        s = np.diag(d)
    return left_mult(s, shape.algebra)


def random_linear_map(rng, shape: ModuleShape, out_rows: int | None = None) -> MapUnderTest:
    p = shape.m if out_rows is None else int(out_rows)
    a = complex_gaussian(rng, (p * shape.n, shape.m * shape.n)) / math.sqrt(shape.m * shape.n)
    return general_linear(a, shape.m, p, shape.n)


GENERATOR_KINDS = (
    "unit_vector",
    "equal_norm_pair",
    "angle_theta_pair",
    "similarity_map",
    "random_linear_map",
    "orthogonal_module_pair",
    "ordered_module_pair",
    "op_a_linear_map",
    "counterexample",
)


def generate(kind: str, params: dict | None = None, seed: int = 0) -> dict:
    """Serialize one generated instance; ``params`` keys depend on ``kind``.

    Real kinds read ``dim`` (and ``theta``); module kinds read ``m``, ``n``,
    ``algebra``; ``counterexample`` reads ``tag`` plus the tag's parameters.
    """
    params = dict(params or {})
    rng = trial_rng(seed, 0)
    dim = int(params.get("dim", 3))
    out: dict = {"kind": kind, "seed": seed}
    if kind == "unit_vector":
        v = rng.standard_normal(dim)
        out["x"] = real_angle.vector_to_json(v / np.linalg.norm(v))
    elif kind == "equal_norm_pair":
        x, y = real_angle.equal_norm_pairs(rng, 1, dim)
        out.update(x=real_angle.vector_to_json(x[0]), y=real_angle.vector_to_json(y[0]))
    elif kind == "angle_theta_pair":
        theta = float(params.get("theta", math.pi / 3))
        if not 0 <= theta <= math.pi:
            raise InputError("theta must lie in [0, pi]")
        x, y = real_angle.angle_pairs(rng, 1, dim, theta)
        out.update(theta=theta, x=real_angle.vector_to_json(x[0]), y=real_angle.vector_to_json(y[0]))
    elif kind == "similarity_map":
        gamma = params.get("gamma")
        t = real_angle.random_similarity(rng, int(params.get("out_dim", dim)), dim,
                                         None if gamma is None else float(gamma))
        out["map"] = matrix_to_json(t)
    elif kind in ("random_linear_map", "orthogonal_module_pair", "ordered_module_pair", "op_a_linear_map"):
        shape = ModuleShape.of(int(params.get("m", 3)), int(params.get("n", 3)),
                               AlgebraKind(params.get("algebra", "full")))
        out["module"] = shape.to_dict()
        if kind == "random_linear_map":
            if not shape.algebra.is_full:
                raise InputError("random_linear_map needs the full algebra")
            out["map"] = random_linear_map(rng, shape, params.get("out_rows")).to_dict()
        elif kind == "op_a_linear_map":
            gamma = params.get("gamma")
            t = op_a_linear_map(rng, shape, params.get("out_rows"), None if gamma is None else float(gamma))
            out["map"] = t.to_dict()
        else:
            make = orthogonal_module_pair if kind == "orthogonal_module_pair" else ordered_module_pair
            x, y = make(rng, shape)
            out.update(x=ModuleElement(x, shape.algebra).to_dict(), y=ModuleElement(y, shape.algebra).to_dict())
    elif kind == "counterexample":
        tag = params.pop("tag", None)
        if tag not in COUNTEREXAMPLE_TAGS:
            raise InputError(f"unknown counterexample tag {tag!r}; known: {', '.join(COUNTEREXAMPLE_TAGS)}")
        params.pop("algebra", None)
        out["map"] = counterexample(tag, **params).to_dict()
    else:
        raise InputError(f"unknown generator kind {kind!r}; known: {', '.join(GENERATOR_KINDS)}")
    return out
