"""Matrix inner-product modules ``M_{m x n}`` over ``A`` (all of ``M_n`` or its
diagonal subalgebra), with ``<x, y> = x* y`` and the algebra-valued modulus
``|x| = <x, x>^(1/2)``.

Over the diagonal algebra the module is the algebra itself (diagonal ``n x n``
matrices), the finite stand-in for a commutative function algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .errors import InputError
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    as_matrix,
    fro_norm,
    loewner_gap,
    matrix_from_json,
    matrix_to_json,
    op_norm,
    psd_sqrt,
)
from .rng import as_rng, complex_gaussian, haar_unitary


class AlgebraKind(str, Enum):
    FULL = "full"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class AlgebraSpec:
    n: int
    kind: AlgebraKind = AlgebraKind.FULL

    def __post_init__(self):
        if int(self.n) < 1:
            raise InputError("algebra size must be positive")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "kind", AlgebraKind(self.kind))

    @property
    def is_full(self) -> bool:
        return self.kind is AlgebraKind.FULL

    def identity(self) -> np.ndarray:
        return np.eye(self.n, dtype=complex)

    def matrix_units(self) -> list[tuple[tuple[int, int], np.ndarray]]:
        n = self.n
        pairs = [(k, l) for k in range(n) for l in range(n)] if self.is_full else [(k, k) for k in range(n)]
        units = []
        for k, l in pairs:
            e = np.zeros((n, n), dtype=complex)
            e[k, l] = 1.0
            units.append(((k, l), e))
        return units

    def project(self, a: np.ndarray) -> np.ndarray:
        return a if self.is_full else np.diag(np.diag(a))

    def contains(self, a, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        a = np.asarray(a)
        if a.shape != (self.n, self.n):
            return False
        return self.is_full or float(np.max(np.abs(a - np.diag(np.diag(a))), initial=0.0)) <= tol.abs_tol

    def random_element(self, rng) -> np.ndarray:
        if self.is_full:
            return complex_gaussian(rng, (self.n, self.n)) / math.sqrt(self.n)
        return np.diag(complex_gaussian(rng, self.n))

    def random_unitary(self, rng) -> np.ndarray:
        if self.is_full:
            return haar_unitary(rng, self.n)
        return np.diag(np.exp(2j * np.pi * rng.random(self.n)))

    def coordinate_projections(self) -> list[np.ndarray]:
        out = []
        for k in range(self.n):
            p = np.zeros((self.n, self.n), dtype=complex)
            p[k, k] = 1.0
            out.append(p)
        return out

    def random_projection(self, rng) -> np.ndarray:
        """A projection in the algebra: random rank-k for the full kind, a random
        coordinate subset for the diagonal kind."""
        k = int(rng.integers(1, self.n)) if self.n > 1 else 1
        if self.is_full:
            q = haar_unitary(rng, self.n)[:, :k]
            return q @ adjoint(q)
        mask = np.zeros(self.n)
        mask[rng.choice(self.n, size=k, replace=False)] = 1.0
        return np.diag(mask).astype(complex)


@dataclass(frozen=True)
class ModuleShape:
    """The module ``M_{m x n}`` over ``algebra``; diagonal algebras force ``m = n``."""

    m: int
    algebra: AlgebraSpec

    def __post_init__(self):
        if int(self.m) < 1:
            raise InputError("module row count must be positive")
        object.__setattr__(self, "m", int(self.m))
        if not self.algebra.is_full and self.m != self.algebra.n:
            raise InputError("over the diagonal algebra the module is the algebra itself (m must equal n)")

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.algebra.n)

    @property
    def real_dim(self) -> int:
        per = self.m * self.n if self.algebra.is_full else self.n
        return 2 * per

    def basis(self) -> list[np.ndarray]:
        """Complex basis of the module."""
        out = []
        if self.algebra.is_full:
            for i in range(self.m):
                for j in range(self.n):
                    e = np.zeros(self.shape, dtype=complex)
                    e[i, j] = 1.0
                    out.append(e)
        else:
            for j in range(self.n):
                e = np.zeros(self.shape, dtype=complex)
                e[j, j] = 1.0
                out.append(e)
        return out

    def real_basis(self) -> list[np.ndarray]:
        """Basis over the reals: ``e`` and ``i e`` for each complex basis element."""
        b = self.basis()
        return b + [1j * e for e in b]

    def contains(self, x, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        x = np.asarray(x)
        if x.shape != self.shape:
            return False
        return self.algebra.is_full or float(np.max(np.abs(x - np.diag(np.diag(x))), initial=0.0)) <= tol.abs_tol

    def random_element(self, rng) -> np.ndarray:
        if self.algebra.is_full:
            return complex_gaussian(rng, self.shape)
        return np.diag(complex_gaussian(rng, self.n))

    def zeros(self) -> np.ndarray:
        return np.zeros(self.shape, dtype=complex)

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "kind": self.algebra.kind.value}

    @classmethod
    def of(cls, m: int, n: int, kind: str | AlgebraKind = AlgebraKind.FULL) -> "ModuleShape":
        return cls(m, AlgebraSpec(n, AlgebraKind(kind)))


@dataclass(frozen=True)
class ModuleElement:
    matrix: np.ndarray
    algebra: AlgebraSpec

    def __post_init__(self):
        mat = as_matrix(self.matrix)
        if mat.shape[1] != self.algebra.n:
            raise InputError(f"element has {mat.shape[1]} columns, algebra acts on {self.algebra.n}")
        if not ModuleShape(mat.shape[0], self.algebra).contains(mat):
            raise InputError("elements over the diagonal algebra must be diagonal")
        object.__setattr__(self, "matrix", mat)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def shape(self) -> ModuleShape:
        return ModuleShape(self.m, self.algebra)

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "kind": self.algebra.kind.value, "matrix": matrix_to_json(self.matrix)}

    @classmethod
    def from_dict(cls, obj: dict) -> "ModuleElement":
        try:
            algebra = AlgebraSpec(int(obj["n"]), AlgebraKind(obj["kind"]))
            mat = matrix_from_json(obj["matrix"])
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad module element: {exc}") from exc
        if mat.shape != (int(obj["m"]), algebra.n):
            raise InputError("module element matrix does not match m x n")
        return cls(mat, algebra)


def _raw(x) -> np.ndarray:
    return x.matrix if isinstance(x, ModuleElement) else np.asarray(x)


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(x, ModuleElement) and isinstance(y, ModuleElement) and x.algebra != y.algebra:
        raise InputError("elements live over different algebras")
    a, b = _raw(x), _raw(y)
    if a.shape != b.shape:
        raise InputError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def mod_inner(x, y) -> np.ndarray:
    """Algebra-valued inner product ``x* y``."""
    a, b = _pair(x, y)
    return adjoint(a) @ b


def gram(x) -> np.ndarray:
    """``<x, x>`` symmetrized against roundoff."""
    a = _raw(x)
    g = adjoint(a) @ a
    return (g + adjoint(g)) / 2


def mod_abs(x) -> np.ndarray:
    """``|x| = <x, x>^(1/2)``, computed from the SVD ``x = U S V*`` as ``V S V*``.

    Mathematically equal to ``psd_sqrt(x* x)`` (see :func:`mod_abs_via_sqrt`)
    but accurate to machine precision even when ``x* x`` is singular.
    """
    a = _raw(x)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    n = a.shape[1]
    sv = np.zeros(n)
    sv[: s.size] = s
    out = (adjoint(vh) * sv) @ vh
    return (out + adjoint(out)) / 2


def mod_abs_via_sqrt(x, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    return psd_sqrt(gram(x), tol)


def mod_norm(x) -> float:
    """``||x|| = ||<x, x>||^(1/2)``, i.e. the operator norm of ``x``."""
    return op_norm(_raw(x))


def moduli_equal(u, v, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``|u| = |v|``, decided on the squares (the positive root is unique)."""
    a, b = _pair(u, v)
    diff = fro_norm(gram(a) - gram(b))
    return diff <= tol.rel_tol * (fro_norm(a) ** 2 + fro_norm(b) ** 2)


def order_gap(lo: np.ndarray, hi: np.ndarray) -> float:
    """Scaled smallest eigenvalue of ``hi - lo``; negative means ``lo <= hi`` fails."""
    scale = max(fro_norm(lo), fro_norm(hi), 1e-300)
    return loewner_gap(lo, hi) / scale


def order_leq(lo: np.ndarray, hi: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return order_gap(lo, hi) >= -tol.psd_slack


def moduli_leq(u, v, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``|u| <= |v|`` in the Loewner order."""
    a, b = _pair(u, v)
    return order_leq(mod_abs(a), mod_abs(b), tol)


def triangle_gap(x, y) -> float:
    """Scaled smallest eigenvalue of ``|x| + |y| - |x + y|``; negative exhibits a
    failure of the triangle inequality for the modulus."""
    a, b = _pair(x, y)
    return order_gap(mod_abs(a + b), mod_abs(a) + mod_abs(b))


def polarize(x, y) -> np.ndarray:
    """Recover ``<x, y>`` from moduli: ``1/4 sum_k (-i)^k |x + i^k y|^2``."""
    a, b = _pair(x, y)
    return sum((-1j) ** k * gram(a + (1j) ** k * b) for k in range(4)) / 4


@dataclass
class Verdict:
    """Boolean verdict with the first counterexample found, if any."""

    holds: bool
    witness: dict | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"verdict": self.holds, "checked": self.checked, "witness": self.witness}


def _rel_small(value: float, scale: float, tol: ToleranceConfig) -> bool:
    return value <= tol.rel_tol * scale


@dataclass
class Lemma41Report:
    """The four equivalent descriptions of ``<x, y> = 0``; they must agree."""

    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    cond_iv: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def verdicts(self) -> tuple[bool, bool, bool, bool]:
        return (self.cond_i, self.cond_ii, self.cond_iii, self.cond_iv)

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts)) == 1

    def to_dict(self) -> dict:
        names = ("i", "ii", "iii", "iv")
        return {"agree": self.agree,
                "conditions": {k: {"verdict": v, "witness": self.witnesses.get(k)} for k, v in zip(names, self.verdicts)}}


def lemma41_status(x, y, trials: int = 16, seed=0, tol: ToleranceConfig = DEFAULT_TOL,
                   algebra: AlgebraSpec | None = None) -> Lemma41Report:
    """Evaluate (i) ``<x,y> = 0``; (ii) ``<xb, ya> = 0`` for all matrix units
    ``a, b``; (iii) ``|x + ya| = |x - ya|`` at ``a`` proportional to ``<y, x>`` and
    at random ``a``; (iv) ``|x + lam y| = |x - lam y|`` at ``lam`` in ``{1, -i}``
    and random ``lam``.
    """
    if algebra is None:
        algebra = x.algebra if isinstance(x, ModuleElement) else AlgebraSpec(np.asarray(x).shape[1])
    a0, b0 = _pair(x, y)
    rng = as_rng(seed)
    nx, ny = mod_norm(a0), mod_norm(b0)
    c = adjoint(a0) @ b0
    witnesses: dict = {}

    cond_i = _rel_small(op_norm(c), nx * ny, tol)
    if not cond_i:
        witnesses["i"] = {"inner_norm": op_norm(c)}

    cond_ii = True
    for (kb, b) in algebra.matrix_units():
        for (ka, a) in algebra.matrix_units():
            val = op_norm(adjoint(a0 @ b) @ (b0 @ a))
            if not _rel_small(val, nx * ny, tol):
                cond_ii = False
                witnesses["ii"] = {"b": list(kb), "a": list(ka), "value_norm": val}
                break
        if not cond_ii:
            break

    def same_modulus(u, v):
        d = fro_norm(gram(u) - gram(v))
        return d <= tol.rel_tol * (fro_norm(u) ** 2 + fro_norm(v) ** 2), d

    # Proof witness a = <y, x>, rescaled so |ya| is comparable to |x|.
    a_cands = []
    cn = op_norm(c)
    if cn > 0 and ny > 0:
        a_cands.append(("scaled <y,x>", adjoint(c) * (nx / (ny * cn))))
    a_cands.append(("<y,x>", adjoint(c)))
    for _ in range(trials):
        r = rng.uniform(0.0, 2.0)
        a_cands.append(("random", r * algebra.random_element(rng)))
    cond_iii = True
    for label, a in a_cands:
        ok, d = same_modulus(a0 + b0 @ a, a0 - b0 @ a)
        if not ok:
            cond_iii = False
            witnesses["iii"] = {"a_kind": label, "a": matrix_to_json(a), "gram_difference": d}
            break

    lam_cands: list[tuple[str, complex]] = [("1", 1.0), ("-i", -1j)]
    if ny > 0:
        lam_cands += [("scaled 1", nx / ny), ("scaled -i", -1j * nx / ny)]
    for _ in range(trials):
        lam_cands.append(("random", rng.uniform(0.0, 2.0) * np.exp(2j * np.pi * rng.random())))
    cond_iv = True
    for label, lam in lam_cands:
        ok, d = same_modulus(a0 + lam * b0, a0 - lam * b0)
        if not ok:
            cond_iv = False
            witnesses["iv"] = {"lambda_kind": label, "lambda": [float(np.real(lam)), float(np.imag(lam))],
                               "gram_difference": d}
            break

    return Lemma41Report(cond_i, cond_ii, cond_iii, cond_iv, witnesses)


def _lambda_minimizers(x: np.ndarray, y: np.ndarray) -> list[complex]:
    # For a probe vector v, lam_v = -<yv, xv>/|yv|^2 minimizes |(x + lam y) v|.
    gx = gram(x)
    _, vecs = np.linalg.eigh(gx)
    probes = list(np.eye(x.shape[1], dtype=complex)) + list(vecs.T)
    out = []
    for v in probes:
        yv, xv = y @ v, x @ v
        d = np.vdot(yv, yv).real
        if d > 0:
            out.append(complex(-np.vdot(yv, xv) / d))
    return out


@dataclass
class Remark42Report:
    """One-sided verdicts for the four order conditions ((vi)..(ix)): ``True``
    means no violation among the sampled ``a`` or ``lam``."""

    verdicts: dict[str, bool]
    witnesses: dict = field(default_factory=dict)
    worst_gap: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {k: {"verdict": v, "worst_gap": self.worst_gap.get(k), "witness": self.witnesses.get(k)}
                for k, v in self.verdicts.items()}


def order_candidates(x: np.ndarray, y: np.ndarray, algebra: AlgebraSpec, rng, trials: int):
    """Sampled ``a`` (algebra elements) and ``lam`` (scalars) for the order conditions.

    Fixed witnesses come first: ``a = -<y,x>/||y||^2`` and the scalars
    ``1, -1, i, -i`` plus per-direction minimizers; then random draws with
    modulus uniform in ``[0, 2]``.
    """
    c = adjoint(x) @ y
    ny2 = mod_norm(y) ** 2
    a_c: list[tuple[str, np.ndarray]] = []
    if ny2 > 0:
        a_c.append(("-<y,x>/||y||^2", -adjoint(c) / ny2))
    lam_c: list[tuple[str, complex]] = [("1", 1.0), ("-1", -1.0), ("i", 1j), ("-i", -1j)]
    lam_c += [("minimizer", lam) for lam in _lambda_minimizers(x, y)]
    a_c += [("scalar minimizer", lam * algebra.identity()) for _, lam in lam_c[4:]]
    for _ in range(trials):
        a_c.append(("random", rng.uniform(0.0, 2.0) * algebra.random_element(rng)))
        lam_c.append(("random", complex(rng.uniform(0.0, 2.0) * np.exp(2j * np.pi * rng.random()))))
    return a_c, lam_c


def remark42_conditions(x, y, trials: int = 32, seed=0, tol: ToleranceConfig = DEFAULT_TOL,
                        algebra: AlgebraSpec | None = None) -> Remark42Report:
    """Search for violations of
    (vi) ``|x|^2 <= |x + ya|^2``, (vii) ``|x|^2 <= |x + lam y|^2``,
    (viii) ``|x| <= |x + ya|``, (ix) ``|x| <= |x + lam y|``.
    """
    if algebra is None:
        algebra = x.algebra if isinstance(x, ModuleElement) else AlgebraSpec(np.asarray(x).shape[1])
    a0, b0 = _pair(x, y)
    rng = as_rng(seed)
    a_c, lam_c = order_candidates(a0, b0, algebra, rng, trials)
    gx, ax = gram(a0), mod_abs(a0)
    verdicts, witnesses, worst = {}, {}, {}

    def scan(name: str, cands, combine: Callable, squared: bool, label: str):
        lo = gx if squared else ax
        worst_gap, first = math.inf, None
        for kind, c in cands:
            z = combine(c)
            hi = gram(z) if squared else mod_abs(z)
            g = order_gap(lo, hi)
            worst_gap = min(worst_gap, g)
            if g < -tol.psd_slack and first is None:
                val = matrix_to_json(c) if isinstance(c, np.ndarray) else [float(np.real(c)), float(np.imag(c))]
                first = {f"{label}_kind": kind, label: val, "gap": g}
        verdicts[name] = first is None
        worst[name] = worst_gap
        if first is not None:
            witnesses[name] = first

    scan("vi", a_c, lambda a: a0 + b0 @ a, True, "a")
    scan("vii", lam_c, lambda lam: a0 + lam * b0, True, "lambda")
    scan("viii", a_c, lambda a: a0 + b0 @ a, False, "a")
    scan("ix", lam_c, lambda lam: a0 + lam * b0, False, "lambda")
    return Remark42Report(verdicts, witnesses, worst)


def birkhoff_gap(x: np.ndarray, y: np.ndarray, lam: complex) -> float:
    """Scaled smallest eigenvalue of ``|x + lam y| - |x|``."""
    return order_gap(mod_abs(x), mod_abs(x + lam * y))


MapFn = Callable[[np.ndarray], np.ndarray]


def is_local(t: MapFn, shape: ModuleShape, trials: int = 32, seed=0,
             tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Sampled check of ``xa = 0 => T(x) a = 0``.

    Annihilating pairs are built exactly: for a projection ``p`` in the
    algebra, ``x = z (1 - p)`` and ``a = p w``. Coordinate projections are
    always tried; random projections fill the remaining trials.
    """
    rng = as_rng(seed)
    algebra = shape.algebra
    one = algebra.identity()
    fixed = algebra.coordinate_projections()
    fixed += [one - p for p in fixed]
    total = max(trials, len(fixed))
    for j in range(total):
        p = fixed[j] if j < len(fixed) else algebra.random_projection(rng)
        x = shape.random_element(rng) @ (one - p)
        a = p @ algebra.random_element(rng)
        tx = np.asarray(t(x))
        val = fro_norm(tx @ a)
        if val > tol.rel_tol * fro_norm(tx) * fro_norm(a):
            return Verdict(False, {"x": matrix_to_json(x), "a": matrix_to_json(a), "p": matrix_to_json(p),
                                   "residual": val}, j + 1)
    return Verdict(True, None, total)


def is_A_linear(t: MapFn, shape: ModuleShape, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """Exact check of ``T(xa) = T(x) a`` over a real spanning set.

    ``x`` runs over the module basis and ``a`` over the matrix units and
    their multiples by ``i``; the imaginary units catch conjugate-linear maps.
    """
    units = shape.algebra.matrix_units()
    count = 0
    for e in shape.basis():
        te = np.asarray(t(e))
        for k, u in units:
            for scalar in (1.0, 1j):
                a = scalar * u
                lhs = np.asarray(t(e @ a))
                rhs = te @ a
                count += 1
                diff = fro_norm(lhs - rhs)
                if diff > tol.rel_tol * (fro_norm(lhs) + fro_norm(rhs)):
                    return Verdict(False, {"x": matrix_to_json(e), "a": matrix_to_json(a), "residual": diff}, count)
    return Verdict(True, None, count)
