"""Angles, orthogonality and angle-preserving maps in real inner product spaces.

Vectors are 1-D float arrays; linear maps are 2-D float arrays acting by
``T @ x``. The randomized checkers take ``trials`` and ``seed`` and are
deterministic for a given pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateError,
    ExcludedAngleError,
    InputError,
    PreconditionError,
    ZeroMapError,
)
from .linalg import DEFAULT_TOL, ToleranceConfig, herm_eigendecomp, matrix_to_json
from .rng import as_rng, haar_orthogonal

# Minimum separation between the requested angle and the pair's own angle.
EXCLUDED_ANGLE_BAND = 1e-6
ANGLE_TOL = 1e-8


def as_vector(x) -> np.ndarray:
    v = np.array(x, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise InputError(f"expected a nonempty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InputError("vector has non-finite entries")
    return v


def as_linear_map(t) -> np.ndarray:
    m = np.array(t, dtype=float)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise InputError(f"expected a nonempty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError("map has non-finite entries")
    return m


def vector_to_json(x) -> dict:
    return matrix_to_json(np.asarray(x, dtype=float).reshape(-1, 1))


def _nonzero(x: np.ndarray, tol: ToleranceConfig, name: str) -> float:
    n = float(np.linalg.norm(x))
    if n <= tol.abs_tol:
        raise InputError(f"{name} is the zero vector")
    return n


def angle(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Angle between two nonzero vectors, in ``[0, pi]``.

    Evaluated as ``2 atan2(|u - v|, |u + v|)`` on the normalized vectors, which
    equals the arccos of the normalized inner product but stays accurate near
    0 and pi.
    """
    x, y = as_vector(x), as_vector(y)
    if x.shape != y.shape:
        raise InputError("vectors have different dimensions")
    u = x / _nonzero(x, tol, "x")
    v = y / _nonzero(y, tol, "y")
    return float(min(2.0 * math.atan2(np.linalg.norm(u - v), np.linalg.norm(u + v)), math.pi))


def _angles(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    # Row-wise version of ``angle`` without validation.
    U = X / np.linalg.norm(X, axis=1, keepdims=True)
    V = Y / np.linalg.norm(Y, axis=1, keepdims=True)
    return 2.0 * np.arctan2(np.linalg.norm(U - V, axis=1), np.linalg.norm(U + V, axis=1))


def is_orthogonal(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    x, y = as_vector(x), as_vector(y)
    nx, ny = _nonzero(x, tol, "x"), _nonzero(y, tol, "y")
    return abs(float(x @ y)) <= tol.rel_tol * nx * ny


def is_parallel(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    a = angle(x, y, tol)
    return a <= tol.rel_tol or math.pi - a <= tol.rel_tol


def _perp_norm(x: np.ndarray, y: np.ndarray) -> float:
    # |y - proj_x y|, so that |x| * _perp_norm = sqrt(|x|^2 |y|^2 - <x,y>^2)
    # without cancellation.
    return float(np.linalg.norm(y - (x @ y) / (x @ x) * x))


def _check_open_angle(theta: float) -> float:
    theta = float(theta)
    if not (0.0 < theta < math.pi):
        raise PreconditionError(f"theta must lie strictly between 0 and pi, got {theta}")
    return theta


def lambda_equal_norm(x, y, theta: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """The unique nonzero scalar with ``angle(x + lam y, y) = angle(y + lam x, x) = theta``.

    Requires ``|x| = |y|``, independent ``x, y`` and ``theta`` different from
    ``angle(x, y)``. Orthogonal pairs are accepted; the formula still applies.
    """
    x, y = as_vector(x), as_vector(y)
    theta = _check_open_angle(theta)
    nx, ny = _nonzero(x, tol, "x"), _nonzero(y, tol, "y")
    if abs(nx - ny) > tol.rel_tol * max(nx, ny):
        raise PreconditionError(f"norms differ: {nx!r} vs {ny!r}")
    perp = _perp_norm(x, y)
    if perp <= tol.rel_tol * ny:
        raise DegenerateError("x and y are linearly dependent")
    if abs(theta - angle(x, y, tol)) <= EXCLUDED_ANGLE_BAND:
        raise ExcludedAngleError("theta coincides with the angle between x and y")
    alpha = nx * nx
    return float(-((x @ y) - nx * perp / math.tan(theta)) / alpha)


def lambda_witness_check(x, y, lam: float, theta: float, atol: float = ANGLE_TOL,
                         tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Do ``x + lam y`` and ``y + lam x`` make angle ``theta`` with ``y`` and ``x``?"""
    if lam == 0:
        raise PreconditionError("lambda must be nonzero")
    x, y = as_vector(x), as_vector(y)
    a1 = angle(x + lam * y, y, tol)
    a2 = angle(y + lam * x, x, tol)
    return abs(a1 - theta) <= atol and abs(a2 - theta) <= atol


def mu_witness(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Unit-modulus scalar ``<x,y>/|<x,y>|``; with equal norms ``x + mu y`` is orthogonal to ``x - mu y``."""
    if is_orthogonal(x, y, tol):
        raise InputError("mu is undefined for orthogonal vectors")
    return 1.0 if float(as_vector(x) @ as_vector(y)) > 0 else -1.0


def norm_cube(x) -> np.ndarray:
    """The nonlinear map ``x -> |x|^2 x``: keeps equal norms equal, yet is no similarity."""
    x = np.asarray(x, dtype=float)
    return np.sum(x * x, axis=-1, keepdims=x.ndim > 1) * x


def are_dependent(x, y, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Linear dependence via the 2x2 minors of ``[x y]`` (zero vectors count as dependent)."""
    x, y = as_vector(x), as_vector(y)
    minors = np.outer(x, y) - np.outer(y, x)
    return float(np.max(np.abs(minors))) <= tol.rel_tol * float(np.linalg.norm(x) * np.linalg.norm(y)) + tol.abs_tol


@dataclass(frozen=True)
class SimilarityVerdict:
    is_similarity: bool
    gamma: float | None
    residual: float

    def to_dict(self) -> dict:
        return {"is_similarity": self.is_similarity, "gamma": self.gamma, "residual": self.residual}


def singular_values(t) -> np.ndarray:
    """Descending singular values of ``t`` from the eigenvalues of ``t^T t``."""
    t = as_linear_map(t) if not np.iscomplexobj(t) else np.asarray(t)
    gram = np.conj(t).T @ t
    return np.sqrt(np.clip(herm_eigendecomp(gram).eigenvalues, 0.0, None))


def similarity_gamma(t, tol: ToleranceConfig = DEFAULT_TOL) -> SimilarityVerdict:
    """Decide whether ``t`` scales every norm by one constant ``gamma``."""
    t = as_linear_map(t)
    if not np.any(t):
        raise ZeroMapError("the zero map is not a similarity")
    sv = singular_values(t)
    spread = float(sv[0] - sv[-1])
    # ``sv`` has in_dim entries; out_dim < in_dim forces a kernel.
    injective = t.shape[1] <= t.shape[0] and sv[-1] > tol.rel_tol * sv[0]
    ok = bool(injective and spread <= tol.rel_tol * sv[0])
    return SimilarityVerdict(is_similarity=ok, gamma=float(np.mean(sv)) if ok else None, residual=spread)


# Pair generators. Each returns arrays of shape (count, dim).

def random_vectors(rng, count: int, dim: int, log_scale: float = 1.0) -> np.ndarray:
    X = rng.standard_normal((count, dim))
    return X * np.exp(log_scale * rng.standard_normal((count, 1)))


def orthonormal_pairs(rng, count: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Gram-Schmidt on two Gaussian vectors."""
    U = rng.standard_normal((count, dim))
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    W = rng.standard_normal((count, dim))
    W -= np.sum(W * U, axis=1, keepdims=True) * U
    W /= np.linalg.norm(W, axis=1, keepdims=True)
    return U, W


def orthogonal_pairs(rng, count: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    U, W = orthonormal_pairs(rng, count, dim)
    s = np.exp(rng.standard_normal((count, 2)))
    return U * s[:, :1], W * s[:, 1:]


def equal_norm_pairs(rng, count: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    X = random_vectors(rng, count, dim)
    Y = rng.standard_normal((count, dim))
    Y *= (np.linalg.norm(X, axis=1) / np.linalg.norm(Y, axis=1))[:, None]
    return X, Y


def angle_pairs(rng, count: int, dim: int, theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Equal-norm pairs at angle ``theta``: ``x = r u``, ``y = r (cos t u + sin t v)``."""
    U, V = orthonormal_pairs(rng, count, dim)
    r = np.exp(rng.standard_normal((count, 1)))
    return r * U, r * (math.cos(theta) * U + math.sin(theta) * V)


def _g_orthonormal_pairs(rng, count: int, gram: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Gram-Schmidt in the form <x, y>_G = x^T G y (G positive definite).
    dim = gram.shape[0]
    U = rng.standard_normal((count, dim))
    U /= np.sqrt(np.einsum("ij,jk,ik->i", U, gram, U))[:, None]
    W = rng.standard_normal((count, dim))
    W -= np.einsum("ij,jk,ik->i", U, gram, W)[:, None] * U
    W /= np.sqrt(np.einsum("ij,jk,ik->i", W, gram, W))[:, None]
    return U, W


@dataclass
class ConditionResult:
    """Sampled verdict (no violation found) next to the analytic verdict."""

    sampled: bool
    analytic: bool
    witness: dict | None = None
    samples: int = 0

    @property
    def agree(self) -> bool:
        return self.sampled == self.analytic

    def to_dict(self) -> dict:
        return {"sampled": self.sampled, "analytic": self.analytic, "agree": self.agree,
                "samples": self.samples, "witness": self.witness}


def _first_failure(bad: np.ndarray) -> int | None:
    idx = np.flatnonzero(bad)
    return int(idx[0]) if idx.size else None


def _pair_witness(X, Y, i, **extra) -> dict:
    return {"x": X[i].tolist(), "y": Y[i].tolist(), **extra}


@dataclass
class SimilarityReport:
    """Per-condition results of the similarity characterization for one map."""

    similarity: SimilarityVerdict
    conditions: dict[str, ConditionResult] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(c.agree for c in self.conditions.values())

    @property
    def all_pass(self) -> bool:
        return all(c.sampled for c in self.conditions.values())

    def to_dict(self) -> dict:
        return {"similarity": self.similarity.to_dict(), "consistent": self.consistent,
                "conditions": {k: v.to_dict() for k, v in self.conditions.items()}}


def _require_plane(t: np.ndarray) -> None:
    if t.shape[1] < 2:
        raise PreconditionError("angle-based checks need a domain of dimension >= 2")


def thm35_conditions(t, trials: int = 64, seed=0, tol: ToleranceConfig = DEFAULT_TOL) -> SimilarityReport:
    """Evaluate the seven equivalent similarity conditions on ``t``.

    Keys ``"i"`` .. ``"vii"``: (i) similarity, (ii) injective and cosine
    preserving, (iii) strongly orthogonality preserving, (iv) equal norms iff
    equal image norms, (v) equal norms imply equal image norms, (vi) norm
    order preserved, (vii) orthogonality preserving. Each condition gets a
    sampled verdict over ``trials`` generated pairs and the analytic verdict
    from the singular values; by the characterization all analytic verdicts
    coincide with (i).
    """
    t = as_linear_map(t)
    _require_plane(t)
    verdict = similarity_gamma(t, tol)
    rng = as_rng(seed)
    dim = t.shape[1]
    rt = tol.rel_tol
    sv = singular_values(t)
    injective = t.shape[1] <= t.shape[0] and sv[-1] > rt * sv[0]
    analytic = verdict.is_similarity
    report = SimilarityReport(similarity=verdict)

    if verdict.is_similarity:
        w_i = None
    else:
        dec = herm_eigendecomp(t.T @ t)
        vmax, vmin = dec.basis[:, 0].real, dec.basis[:, -1].real
        w_i = {"x": vmax.tolist(), "y": vmin.tolist(),
               "norm_ratio_x": float(np.linalg.norm(t @ vmax)), "norm_ratio_y": float(np.linalg.norm(t @ vmin))}
    report.conditions["i"] = ConditionResult(verdict.is_similarity, analytic, w_i, 0)

    def norms(A):
        return np.linalg.norm(A, axis=1)

    # (ii) cosine preservation plus injectivity.
    X, Y = random_vectors(rng, trials, dim), random_vectors(rng, trials, dim)
    TX, TY = X @ t.T, Y @ t.T
    nTX, nTY = norms(TX), norms(TY)
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_img = np.sum(TX * TY, axis=1) / (nTX * nTY)
    cos_dom = np.sum(X * Y, axis=1) / (norms(X) * norms(Y))
    bad = ~(np.abs(cos_img - cos_dom) <= rt)
    i = _first_failure(bad)
    if not injective:
        w = {"reason": "not injective", "kernel_vector": herm_eigendecomp(t.T @ t).basis[:, -1].real.tolist()}
    elif i is not None:
        w = _pair_witness(X, Y, i, cos_domain=float(cos_dom[i]), cos_image=float(cos_img[i]))
    else:
        w = None
    report.conditions["ii"] = ConditionResult(w is None, analytic, w, trials)

    # (vii) forward orthogonality on Gram-Schmidt pairs.
    X, Y = orthogonal_pairs(rng, trials, dim)
    TX, TY = X @ t.T, Y @ t.T
    ip = np.sum(TX * TY, axis=1)
    bad = np.abs(ip) > rt * norms(TX) * norms(TY) + tol.abs_tol * norms(X) * norms(Y)
    i = _first_failure(bad)
    fwd_orth = None if i is None else _pair_witness(X, Y, i, image_inner=float(ip[i]))
    report.conditions["vii"] = ConditionResult(fwd_orth is None, analytic, fwd_orth, trials)

    # (iii) adds the converse: pairs orthogonal after mapping must be orthogonal before.
    if not injective:
        k = herm_eigendecomp(t.T @ t).basis[:, -1].real
        rev = {"reason": "kernel vector is image-orthogonal to itself", "x": k.tolist(), "y": k.tolist()}
    else:
        X2, Y2 = _g_orthonormal_pairs(rng, trials, t.T @ t)
        ip2 = np.sum(X2 * Y2, axis=1)
        i = _first_failure(np.abs(ip2) > rt * norms(X2) * norms(Y2))
        rev = None if i is None else _pair_witness(X2, Y2, i, domain_inner=float(ip2[i]))
    w = fwd_orth or rev
    report.conditions["iii"] = ConditionResult(w is None, analytic, w, 2 * trials)

    # (v) equal norms map to equal norms.
    X, Y = equal_norm_pairs(rng, trials, dim)
    TX, TY = X @ t.T, Y @ t.T
    nTX, nTY = norms(TX), norms(TY)
    bad = np.abs(nTX - nTY) > rt * np.maximum(nTX, nTY) + tol.abs_tol * norms(X)
    i = _first_failure(bad)
    fwd_eq = None if i is None else _pair_witness(X, Y, i, image_norms=[float(nTX[i]), float(nTY[i])])
    report.conditions["v"] = ConditionResult(fwd_eq is None, analytic, fwd_eq, trials)

    # (iv) adds the converse on pairs scaled to equal image norms.
    if not injective:
        k = herm_eigendecomp(t.T @ t).basis[:, -1].real
        rev = {"reason": "kernel vector and zero have equal image norms", "x": k.tolist(), "y": np.zeros(dim).tolist()}
    else:
        X2, Z = random_vectors(rng, trials, dim), rng.standard_normal((trials, dim))
        Y2 = Z * (norms(X2 @ t.T) / norms(Z @ t.T))[:, None]
        n1, n2 = norms(X2), norms(Y2)
        i = _first_failure(np.abs(n1 - n2) > rt * np.maximum(n1, n2))
        rev = None if i is None else _pair_witness(X2, Y2, i, domain_norms=[float(n1[i]), float(n2[i])])
    w = fwd_eq or rev
    report.conditions["iv"] = ConditionResult(w is None, analytic, w, 2 * trials)

    # (vi) norm order; ties are included in both orientations.
    Xa, Ya = random_vectors(rng, trials, dim), rng.standard_normal((trials, dim))
    Ya *= (norms(Xa) / norms(Ya) / rng.uniform(0.5, 1.0, trials))[:, None]
    Xe, Ye = equal_norm_pairs(rng, trials, dim)
    X = np.vstack([Xa, Xe, Ye])
    Y = np.vstack([Ya, Ye, Xe])
    nTX, nTY = norms(X @ t.T), norms(Y @ t.T)
    i = _first_failure(nTX > nTY * (1 + rt) + tol.abs_tol * norms(Y))
    w = None if i is None else _pair_witness(X, Y, i, image_norms=[float(nTX[i]), float(nTY[i])])
    report.conditions["vi"] = ConditionResult(w is None, analytic, w, 3 * trials)

    report.conditions = {k: report.conditions[k] for k in ("i", "ii", "iii", "iv", "v", "vi", "vii")}
    return report


@dataclass
class ThetaReport:
    """Outcome of the fixed-angle hypotheses and the similarity conclusion."""

    theta: float
    hyp_i: bool
    hyp_ii: bool
    conclusion: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return self.hyp_i and self.hyp_ii

    @property
    def consistent(self) -> bool:
        return not self.hypotheses_hold or self.conclusion

    def to_dict(self) -> dict:
        return {"theta": self.theta, "hyp_i": self.hyp_i, "hyp_ii": self.hyp_ii,
                "hypotheses_hold": self.hypotheses_hold, "conclusion": self.conclusion,
                "consistent": self.consistent, "witnesses": self.witnesses}


def theta_preserving_check(t, theta: float, trials: int = 64, seed=0, tol: ToleranceConfig = DEFAULT_TOL,
                           atol: float = ANGLE_TOL) -> ThetaReport:
    """Test whether an injective map preserves angle ``theta`` in both directions
    and keeps equal norms equal on pairs at that angle; if both survive
    sampling, the map must be a similarity.
    """
    theta = _check_open_angle(theta)
    t = as_linear_map(t)
    _require_plane(t)
    if not np.any(t):
        raise ZeroMapError("the zero map")
    sv = singular_values(t)
    if t.shape[1] > t.shape[0] or sv[-1] <= tol.rel_tol * sv[0]:
        raise PreconditionError("map must be injective")
    rng = as_rng(seed)
    dim = t.shape[1]
    witnesses: dict = {}

    # Forward: pairs at theta (rescaled independently) keep angle theta.
    X, Y = angle_pairs(rng, trials, dim, theta)
    Y = Y * np.exp(rng.standard_normal((trials, 1)))
    img = _angles(X @ t.T, Y @ t.T)
    i = _first_failure(np.abs(img - theta) > atol)
    if i is not None:
        witnesses["i_forward"] = _pair_witness(X, Y, i, image_angle=float(img[i]))

    # Converse: pairs whose images meet at theta, built in the pulled-back form.
    U, W = _g_orthonormal_pairs(rng, trials, t.T @ t)
    X2, Y2 = U, math.cos(theta) * U + math.sin(theta) * W
    dom = _angles(X2, Y2)
    i = _first_failure(np.abs(dom - theta) > atol)
    if i is not None:
        witnesses["i_converse"] = _pair_witness(X2, Y2, i, domain_angle=float(dom[i]))

    # Converse, literal form: pairs off theta must not land on theta.
    X3, Y3 = random_vectors(rng, trials, dim), random_vectors(rng, trials, dim)
    dom3 = _angles(X3, Y3)
    img3 = _angles(X3 @ t.T, Y3 @ t.T)
    i = _first_failure((np.abs(dom3 - theta) > EXCLUDED_ANGLE_BAND) & (np.abs(img3 - theta) <= atol))
    if i is not None:
        witnesses["i_off_angle"] = _pair_witness(X3, Y3, i, image_angle=float(img3[i]))
    hyp_i = not any(k.startswith("i_") for k in witnesses)

    # Equal norms at angle theta give equal image norms.
    X, Y = angle_pairs(rng, trials, dim, theta)
    n1, n2 = np.linalg.norm(X @ t.T, axis=1), np.linalg.norm(Y @ t.T, axis=1)
    i = _first_failure(np.abs(n1 - n2) > tol.rel_tol * np.maximum(n1, n2))
    if i is not None:
        witnesses["ii"] = _pair_witness(X, Y, i, image_norms=[float(n1[i]), float(n2[i])])
    hyp_ii = "ii" not in witnesses

    conclusion = similarity_gamma(t, tol).is_similarity
    return ThetaReport(theta=theta, hyp_i=hyp_i, hyp_ii=hyp_ii, conclusion=conclusion, witnesses=witnesses)


@dataclass(frozen=True)
class GramPair:
    """Two inner products on the same real space, as positive definite Gram matrices."""

    g1: np.ndarray
    g2: np.ndarray

    def __post_init__(self):
        g1 = _spd(self.g1, "g1")
        g2 = _spd(self.g2, "g2")
        if g1.shape != g2.shape:
            raise InputError("Gram matrices have different dimensions")
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)


def _spd(g, name: str, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    g = as_linear_map(g)
    if g.shape[0] != g.shape[1]:
        raise InputError(f"{name} must be square")
    if np.max(np.abs(g - g.T)) > tol.abs_tol + tol.rel_tol * np.max(np.abs(g)):
        raise InputError(f"{name} must be symmetric")
    g = (g + g.T) / 2
    if herm_eigendecomp(g).eigenvalues[-1] <= tol.abs_tol:
        raise InputError(f"{name} is not positive definite")
    return g


@dataclass
class InnerProductComparison:
    """``gamma`` is set when ``<.,.>_2 = gamma^2 <.,.>_1``; otherwise ``witness`` explains why not."""

    gamma: float | None
    residual: float
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"gamma": self.gamma, "residual": self.residual, "witness": self.witness}


def compare_inner_products(g: GramPair, trials: int = 64, seed=0,
                           tol: ToleranceConfig = DEFAULT_TOL) -> InnerProductComparison:
    """Decide whether two inner products are proportional and recover the factor."""
    g1, g2 = g.g1, g.g2
    chol = np.linalg.cholesky(g1)
    linv = np.linalg.inv(chol)
    dec = herm_eigendecomp(linv @ g2 @ linv.T)
    mu = dec.eigenvalues
    cond = float(np.linalg.cond(g1))
    spread = float(mu[0] - mu[-1])
    threshold = (tol.rel_tol + 64 * np.finfo(float).eps * cond) * mu[0]

    rng = as_rng(seed)
    X, Y = random_vectors(rng, trials, g1.shape[0]), random_vectors(rng, trials, g1.shape[0])
    ip1 = np.einsum("ij,jk,ik->i", X, g1, Y)
    ip2 = np.einsum("ij,jk,ik->i", X, g2, Y)
    n2 = np.sqrt(np.einsum("ij,jk,ik->i", X, g2, X) * np.einsum("ij,jk,ik->i", Y, g2, Y))

    if spread <= threshold:
        gamma2 = float(np.mean(mu))
        residual = float(np.max(np.abs(ip2 - gamma2 * ip1) / n2)) if trials else 0.0
        return InnerProductComparison(gamma=math.sqrt(gamma2), residual=residual)

    # Generalized eigenvectors are orthogonal in both forms; their sum and
    # difference are orthogonal (and of equal norm) in form 1 only.
    basis = linv.T @ dec.basis.real
    vlo, vhi = basis[:, -1], basis[:, 0]
    x, y = vlo + vhi, vlo - vhi
    scale = np.max(np.abs(x))
    x, y = x / scale, y / scale
    residual = float(np.max(np.abs(ip2 - float(np.mean(mu)) * ip1) / n2)) if trials else spread
    witness = {
        "violates": "orthogonality in form 1 does not imply orthogonality in form 2",
        "x": x.tolist(), "y": y.tolist(),
        "inner_1": float(x @ g1 @ y), "inner_2": float(x @ g2 @ y),
        "eigenvalue_spread": spread,
    }
    return InnerProductComparison(gamma=None, residual=residual, witness=witness)


def random_similarity(rng, out_dim: int, in_dim: int, gamma: float | None = None) -> np.ndarray:
    """``gamma`` times an isometry R^in -> R^out."""
    if gamma is None:
        gamma = float(rng.uniform(0.5, 4.0))
    return gamma * haar_orthogonal(rng, out_dim)[:, :in_dim]


def random_spread_map(rng, dim: int, min_spread: float = 0.1) -> np.ndarray:
    """Square map whose singular values span at least ``min_spread`` relative to the largest."""
    sv = rng.uniform(0.5, 2.0, dim)
    sv[0] = 2.0
    sv[-1] = min(sv[-1], 2.0 * (1 - min_spread) * rng.uniform(0.3, 1.0))
    return haar_orthogonal(rng, dim) @ np.diag(sv) @ haar_orthogonal(rng, dim).T
