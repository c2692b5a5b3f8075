"""Property verdicts for maps between matrix modules.

"For all" hypotheses are sampled: a verdict of ``True`` means no violation
was found among the generated cases, and the report carries the count. The
``verify_*`` functions test implications, so only hypothesis survivors are
held to the conclusion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cstar import (
    Verdict,
    gram,
    is_A_linear,
    is_local,
    mod_abs,
    mod_norm,
    order_gap,
)
from .errors import InputError, PreconditionError
from .generators import (
    equal_modulus_pair,
    ordered_module_pair,
    orthogonal_module_pair,
    rank_deficient_element,
)
from .linalg import DEFAULT_TOL, ToleranceConfig, adjoint, fro_norm, matrix_to_json, op_norm
from .maps import LEFT_MULT, MapUnderTest
from .real_angle import SimilarityVerdict
from .rng import as_rng

# Acceptance-level bound on the inner-product identity residual and on
# ``|Tx| = sqrt(gamma) |x|``.
FIT_TOL = 1e-8


def _mj(a) -> dict:
    return matrix_to_json(a)


def _pair_w(x, y, **extra) -> dict:
    return {"x": _mj(x), "y": _mj(y), **extra}


def _orth_violation(tx, ty, tol: ToleranceConfig) -> float | None:
    c = op_norm(adjoint(tx) @ ty)
    return c if c > tol.rel_tol * op_norm(tx) * op_norm(ty) else None


def _same_modulus(u, v, tol: ToleranceConfig) -> float | None:
    d = fro_norm(gram(u) - gram(v))
    return d if d > tol.rel_tol * (fro_norm(u) ** 2 + fro_norm(v) ** 2) else None


def _ordered(lo_el, hi_el, tol: ToleranceConfig) -> float | None:
    g = order_gap(mod_abs(lo_el), mod_abs(hi_el))
    return g if g < -tol.psd_slack else None


def check_op(t: MapUnderTest, trials: int, rng, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """``<x, y> = 0 => <Tx, Ty> = 0`` on generated exactly-orthogonal pairs."""
    for j in range(trials):
        x, y = orthogonal_module_pair(rng, t.domain)
        tx, ty = t(x), t(y)
        bad = _orth_violation(tx, ty, tol)
        if bad is not None:
            return Verdict(False, _pair_w(x, y, image_inner_norm=bad), j + 1)
    return Verdict(True, None, trials)


def _nullspace(a: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    _, s, vh = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * max(smax, 1e-300)))
    return vh[rank:].T


def check_reverse_op(t: MapUnderTest, trials: int, rng, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """``<Tx, Ty> = 0 => <x, y> = 0``.

    For a rank-deficient ``x`` the map ``y -> <Tx, Ty>`` is real linear; ``y``
    is drawn from its null space and must then be orthogonal to ``x``.
    """
    basis = t.domain.real_basis()
    imgs = [t(e) for e in basis]
    checked = 0
    for j in range(trials):
        x = rank_deficient_element(rng, t.domain)
        tx = t(x)
        cols = []
        for im in imgs:
            v = (adjoint(tx) @ im).reshape(-1)
            cols.append(np.concatenate([v.real, v.imag]))
        null = _nullspace(np.array(cols).T)
        if null.shape[1] == 0:
            continue
        coef = null @ rng.standard_normal(null.shape[1])
        y = sum(c * e for c, e in zip(coef, basis))
        checked += 1
        c = op_norm(adjoint(x) @ y)
        if c > tol.rel_tol * op_norm(x) * op_norm(y) * 1e2:
            return Verdict(False, _pair_w(x, y, domain_inner_norm=c,
                                          image_inner_norm=op_norm(adjoint(tx) @ t(y))), checked)
    return Verdict(True, None, checked)


def check_equal_moduli(t: MapUnderTest, trials: int, rng, tol: ToleranceConfig = DEFAULT_TOL) -> Verdict:
    """``|x| = |y| => |Tx| = |Ty|`` on pairs ``y = U x``."""
    for j in range(trials):
        x, y = equal_modulus_pair(rng, t.domain)
        bad = _same_modulus(t(x), t(y), tol)
        if bad is not None:
            return Verdict(False, _pair_w(x, y, image_gram_difference=bad), j + 1)
    return Verdict(True, None, trials)


def _order_pairs(t: MapUnderTest, trials: int, rng, targeted: bool):
    """Pairs ``(lo, hi)`` with ``|lo| <= |hi|``: contractions, ties in both
    orientations and, if ``targeted``, ``(x, x - y a)`` for orthogonal ``x, y``
    with ``a = <Ty, Tx>/||Ty||^2``, which exposes maps that break orthogonality."""
    for _ in range(trials):
        yield ordered_module_pair(rng, t.domain)
        x, y = equal_modulus_pair(rng, t.domain)
        yield x, y
        yield y, x
        if targeted:
            x, y = orthogonal_module_pair(rng, t.domain)
            ty = t(y)
            n2 = op_norm(ty) ** 2
            if n2 > 0:
                a = t.algebra.project(adjoint(ty) @ t(x)) / n2
                yield x, x - y @ a


def check_order(t: MapUnderTest, trials: int, rng, tol: ToleranceConfig = DEFAULT_TOL,
                targeted: bool = True) -> Verdict:
    """``|x| <= |y| => |Tx| <= |Ty|`` on generated ordered pairs."""
    count = 0
    for lo, hi in _order_pairs(t, trials, rng, targeted):
        count += 1
        bad = _ordered(t(lo), t(hi), tol)
        if bad is not None:
            return Verdict(False, {"lo": _mj(lo), "hi": _mj(hi), "image_gap": bad}, count)
    return Verdict(True, None, count)


def sampled_similarity(t: MapUnderTest, trials: int, rng, tol: ToleranceConfig = DEFAULT_TOL) -> SimilarityVerdict:
    """Constancy of ``||Tx|| / ||x||`` over samples (random and rank-one
    elements); for left multipliers also the singular values of ``S``."""
    ratios = []
    for _ in range(trials):
        x = t.domain.random_element(rng)
        if t.algebra.is_full and rng.random() < 0.5:
            x = np.outer(x[:, 0], np.conj(x[0]))
        nx = mod_norm(x)
        if nx > 0:
            ratios.append(mod_norm(t(x)) / nx)
    ratios = np.array(ratios)
    spread = float(ratios.max() - ratios.min())
    ok = bool(ratios.min() > 0 and spread <= tol.rel_tol * ratios.max())
    if t.kind == LEFT_MULT and ok:
        sv = np.linalg.svd(t.matrix, compute_uv=False)
        sv_spread = float(sv[0] - sv[-1]) if t.matrix.shape[0] >= t.matrix.shape[1] else float(sv[0])
        ok = bool(sv_spread <= tol.rel_tol * sv[0])
        spread = max(spread, sv_spread)
    return SimilarityVerdict(is_similarity=ok, gamma=float(ratios.mean()) if ok else None, residual=spread)


@dataclass(frozen=True)
class GammaFit:
    """``gamma`` in ``<Tx, Ty> ~ gamma <x, y>`` and the worst deviation seen."""

    gamma: float
    residual: float
    probe_gamma: float

    def to_dict(self) -> dict:
        return {"gamma": self.gamma, "residual": self.residual, "probe_gamma": self.probe_gamma}


def gamma_fit(t: MapUnderTest, trials: int = 32, seed=0) -> GammaFit:
    """Mean of ``||<Tx, Tx>|| / ||<x, x>||`` over unit-Frobenius samples; the
    residual is the largest ``||<Tx, Ty> - gamma <x, y>||_F`` over sampled
    pairs (including ``y = x``)."""
    t.check_nonzero()
    rng = as_rng(seed)
    xs = []
    for _ in range(max(trials, 2)):
        x = t.domain.random_element(rng)
        xs.append(x / fro_norm(x))
    txs = [t(x) for x in xs]
    gamma = float(np.mean([op_norm(gram(tx)) / op_norm(gram(x)) for x, tx in zip(xs, txs)]))
    residual = 0.0
    for i, (x, tx) in enumerate(zip(xs, txs)):
        for j in (i, (i + 1) % len(xs)):
            d = fro_norm(adjoint(tx) @ txs[j] - gamma * (adjoint(x) @ xs[j]))
            residual = max(residual, d)
    x0 = t.domain.basis()[0]
    probe = mod_norm(t(x0)) ** 2 / mod_norm(x0) ** 2
    return GammaFit(gamma=gamma, residual=residual, probe_gamma=float(probe))


@dataclass
class ClassificationReport:
    op: bool
    strongly_op: bool
    similarity: SimilarityVerdict
    cond_iv: bool
    cond_v: bool
    local: bool
    a_linear: bool
    gamma_fit: GammaFit
    witnesses: dict = field(default_factory=dict)
    trials: int = 0

    @property
    def consistent(self) -> bool:
        """Similarity of a module-linear map forces every other property."""
        if self.strongly_op and not self.op:
            return False
        if self.a_linear and self.similarity.is_similarity:
            return self.op and self.strongly_op and self.cond_iv and self.cond_v
        return True

    def to_dict(self) -> dict:
        return {
            "op": self.op, "strongly_op": self.strongly_op, "similarity": self.similarity.to_dict(),
            "cond_iv": self.cond_iv, "cond_v": self.cond_v, "local": self.local, "a_linear": self.a_linear,
            "gamma_fit": self.gamma_fit.to_dict(), "consistent": self.consistent, "trials": self.trials,
            "witnesses": self.witnesses,
        }


def classify(t: MapUnderTest, trials: int = 32, seed=0, tol: ToleranceConfig = DEFAULT_TOL) -> ClassificationReport:
    """Sampled verdicts for orthogonality preservation (one and both ways),
    similarity, the modulus conditions, locality, module linearity and the
    inner-product scaling fit."""
    t.check_nonzero()
    if not t.is_real_linear:
        raise PreconditionError("classification needs a (real) linear map")
    rng = as_rng(seed)
    witnesses = {}
    op = check_op(t, trials, rng, tol)
    rev = check_reverse_op(t, trials, rng, tol) if op else Verdict(False, None, 0)
    strongly = bool(op) and bool(rev)
    sim = sampled_similarity(t, trials, rng, tol)
    iv = check_equal_moduli(t, trials, rng, tol)
    v = check_order(t, trials, rng, tol)
    local = is_local(t, t.domain, trials, rng, tol)
    alin = is_A_linear(t, t.domain, tol)
    for name, verdict in (("op", op), ("strongly_op", rev), ("cond_iv", iv), ("cond_v", v),
                          ("local", local), ("a_linear", alin)):
        if verdict.witness is not None:
            witnesses[name] = verdict.witness
    fit = gamma_fit(t, trials, rng)
    return ClassificationReport(op=bool(op), strongly_op=strongly, similarity=sim, cond_iv=bool(iv),
                                cond_v=bool(v), local=bool(local), a_linear=bool(alin), gamma_fit=fit,
                                witnesses=witnesses, trials=trials)


@dataclass
class ImplicationVerdict:
    """Outcome of testing ``hypothesis => conclusion`` on one map."""

    hypothesis_holds: bool
    conclusion_holds: bool
    witnesses: dict = field(default_factory=dict)
    checked: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return not self.hypothesis_holds or self.conclusion_holds

    def to_dict(self) -> dict:
        return {"hypothesis_holds": self.hypothesis_holds, "conclusion_holds": self.conclusion_holds,
                "consistent": self.consistent, "checked": self.checked, "witnesses": self.witnesses}


def _implication(hyp: Verdict, concl: Verdict) -> ImplicationVerdict:
    w = {}
    if hyp.witness is not None:
        w["hypothesis"] = hyp.witness
    if concl.witness is not None:
        w["conclusion"] = concl.witness
    return ImplicationVerdict(bool(hyp), bool(concl), w, {"hypothesis": hyp.checked, "conclusion": concl.checked})


def _equal_modulus_hypothesis(t: MapUnderTest, trials: int, rng, tol: ToleranceConfig) -> Verdict:
    v = check_equal_moduli(t, trials, rng, tol)
    if not v:
        return v
    # Pairs x + lam y, x - lam y with <x, y> = 0 have equal moduli as well.
    count = v.checked
    for _ in range(trials):
        x, y = orthogonal_module_pair(rng, t.domain)
        lams = [1.0, 1j, complex(rng.uniform(0, 2) * np.exp(2j * np.pi * rng.random()))]
        for lam in lams:
            count += 1
            bad = _same_modulus(t(x + lam * y), t(x - lam * y), tol)
            if bad is not None:
                return Verdict(False, _pair_w(x + lam * y, x - lam * y, image_gram_difference=bad), count)
    return Verdict(True, None, count)


def verify_thm43(t: MapUnderTest, trials: int = 32, seed=0, tol: ToleranceConfig = DEFAULT_TOL) -> ImplicationVerdict:
    """``|x| = |y| => |Tx| = |Ty|`` for all pairs should force orthogonality
    preservation; module linearity is not required."""
    t.check_nonzero()
    rng = as_rng(seed)
    hyp = _equal_modulus_hypothesis(t, trials, rng, tol)
    return _implication(hyp, check_op(t, trials, rng, tol))


def verify_thm44(t: MapUnderTest, trials: int = 32, seed=0, tol: ToleranceConfig = DEFAULT_TOL) -> ImplicationVerdict:
    """For module-linear maps, ``|x| <= |y| => |Tx| <= |Ty|`` should force
    orthogonality preservation."""
    t.check_nonzero()
    if not is_A_linear(t, t.domain, tol):
        raise PreconditionError("map is not module linear")
    rng = as_rng(seed)
    hyp = check_order(t, trials, rng, tol)
    return _implication(hyp, check_op(t, trials, rng, tol))


@dataclass
class EquivalenceVerdict:
    """Both sides of an equivalence evaluated on the same map."""

    op: bool
    order: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.op == self.order

    def to_dict(self) -> dict:
        return {"op": self.op, "order": self.order, "agree": self.agree, "witnesses": self.witnesses}


def verify_cor411(t: MapUnderTest, trials: int = 32, seed=0, tol: ToleranceConfig = DEFAULT_TOL) -> EquivalenceVerdict:
    """Over the full matrix algebra a module-linear map preserves orthogonality
    exactly when it preserves the order of moduli."""
    t.check_nonzero()
    if not t.algebra.is_full:
        raise PreconditionError("needs the full matrix algebra")
    if not is_A_linear(t, t.domain, tol):
        raise PreconditionError("map is not module linear")
    rng = as_rng(seed)
    op = check_op(t, trials, rng, tol)
    order = check_order(t, trials, rng, tol)
    w = {}
    if op.witness is not None:
        w["op"] = op.witness
    if order.witness is not None:
        w["order"] = order.witness
    return EquivalenceVerdict(bool(op), bool(order), w)


@dataclass
class LocalityVerdict:
    """Locality + orthogonality preservation and, when both hold, the scaling consequences."""

    local: bool
    op: bool
    gamma: float | None = None
    residual: float | None = None
    consequences_hold: bool | None = None
    witnesses: dict = field(default_factory=dict)

    @property
    def hypothesis_met(self) -> bool:
        return self.local and self.op

    @property
    def consistent(self) -> bool:
        return not self.hypothesis_met or bool(self.consequences_hold)

    def to_dict(self) -> dict:
        return {"local": self.local, "op": self.op, "hypothesis_met": self.hypothesis_met, "gamma": self.gamma,
                "residual": self.residual, "consequences_hold": self.consequences_hold,
                "consistent": self.consistent, "witnesses": self.witnesses}


def verify_thm410(t: MapUnderTest, trials: int = 32, seed=0, tol: ToleranceConfig = DEFAULT_TOL,
                  probes: int = 32, fit_tol: float = FIT_TOL) -> LocalityVerdict:
    """A local orthogonality-preserving map over the full algebra scales the
    inner product: ``<Tx, Ty> = gamma <x, y>``, hence ``|Tx| = sqrt(gamma) |x|``,
    and both ``|x| = |y|`` and ``|x| <= |y|`` are preserved and reflected."""
    if not t.algebra.is_full:
        raise PreconditionError("needs the full matrix algebra (compact operators inside the algebra)")
    t.check_nonzero()
    rng = as_rng(seed)
    local = is_local(t, t.domain, trials, rng, tol)
    op = check_op(t, trials, rng, tol)
    out = LocalityVerdict(local=bool(local), op=bool(op))
    for name, v in (("local", local), ("op", op)):
        if v.witness is not None:
            out.witnesses[name] = v.witness
    if not out.hypothesis_met:
        return out
    fit = gamma_fit(t, trials, rng)
    out.gamma, out.residual = fit.gamma, fit.residual
    ok = fit.residual <= fit_tol
    root = math.sqrt(fit.gamma)
    for _ in range(probes):
        if not ok:
            break
        x = t.domain.random_element(rng)
        x /= fro_norm(x)
        d = fro_norm(mod_abs(t(x)) - root * mod_abs(x))
        if d > fit_tol:
            ok = False
            out.witnesses["scaling"] = {"x": _mj(x), "modulus_deviation": d}
    if ok:
        # Equal moduli and order, both directions, follow from the scaling.
        for _ in range(trials):
            x, y = equal_modulus_pair(rng, t.domain)
            if _same_modulus(t(x), t(y), tol) is not None:
                ok = False
                out.witnesses["equal_moduli"] = _pair_w(x, y)
                break
            lo, hi = ordered_module_pair(rng, t.domain)
            if _ordered(t(lo), t(hi), tol) is not None:
                ok = False
                out.witnesses["order"] = {"lo": _mj(lo), "hi": _mj(hi)}
                break
    out.consequences_hold = ok
    return out


def verify_remark45(t: MapUnderTest, trials: int = 32, seed=0, tol: ToleranceConfig = DEFAULT_TOL) -> ImplicationVerdict:
    """On ``M_2`` as a module over itself, any linear map that preserves the
    order of moduli should preserve orthogonality, module linear or not."""
    if t.domain.shape != (2, 2) or t.out_rows != 2 or not t.algebra.is_full:
        raise InputError("needs a map M_2 -> M_2 over the full algebra M_2")
    t.check_nonzero()
    rng = as_rng(seed)
    hyp = check_order(t, trials, rng, tol)
    if hyp:
        # Proof-style pairs: A* B = 0 gives |A| <= |A + mu B| for every scalar mu.
        count = hyp.checked
        for _ in range(trials):
            a, b = orthogonal_module_pair(rng, t.domain)
            for mu in (1.0, -1.0, 1j, complex(rng.uniform(0, 2) * np.exp(2j * np.pi * rng.random()))):
                count += 1
                bad = _ordered(t(a), t(a + mu * b), tol)
                if bad is not None:
                    hyp = Verdict(False, {"lo": _mj(a), "hi": _mj(a + mu * b), "image_gap": bad}, count)
                    break
            if not hyp:
                break
        else:
            hyp = Verdict(True, None, count)
    return _implication(hyp, check_op(t, trials, rng, tol))
