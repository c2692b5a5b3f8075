"""Named property suites and the report format shared by the CLI.

Every trial draws from its own stream keyed by ``(seed, trial)``, so a suite
rerun with the same configuration reproduces its failure list exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from . import classifier as clf
from . import real_angle as ra
from .cstar import (
    AlgebraKind,
    ModuleElement,
    ModuleShape,
    birkhoff_gap,
    gram,
    lemma41_status,
    mod_abs,
    mod_inner,
    polarize,
    triangle_gap,
)
from .errors import AngleguardError, InputError, PreconditionError
from .generators import generic_left_mult, op_a_linear_map, orthogonal_module_pair, random_linear_map
from .linalg import DEFAULT_TOL, ToleranceConfig, fro_norm, is_positive, op_norm
from .maps import DIAGONAL_MULTIPLIER, CONJUGATION, MapUnderTest, counterexample, left_mult, sandwich
from .rng import RNG_ALGORITHM, check_seed, complex_gaussian, haar_unitary, trial_rng

ANGLE_DIMS = (2, 8)
PROP33_TOL = 1e-9
COR37_TOL = 1e-8
NEAR_MISS_COUNT = 5
TRIANGLE_BUDGET = 100_000
TRIANGLE_MARGIN = 1e-6


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    dim: int | None = None
    module_shape: tuple[int, int, str] = (3, 3, "full")
    trials: int = 100
    seed: int = 0
    tol: ToleranceConfig = DEFAULT_TOL
    out_path: str | None = None
    samples: int = 16

    def __post_init__(self):
        if self.suite not in SUITES:
            raise InputError(f"unknown suite {self.suite!r}; known: {', '.join(SUITES)}")
        if int(self.trials) < 1:
            raise InputError("trials must be >= 1")
        if self.samples < 1:
            raise InputError("samples must be >= 1")
        if self.dim is not None and int(self.dim) < 2:
            raise InputError("dim must be >= 2")
        check_seed(self.seed)
        m, n, kind = self.module_shape
        ModuleShape.of(int(m), int(n), kind)

    @property
    def shape(self) -> ModuleShape:
        m, n, kind = self.module_shape
        return ModuleShape.of(int(m), int(n), kind)

    def to_dict(self) -> dict:
        m, n, kind = self.module_shape
        return {"suite": self.suite, "dim": self.dim, "module_shape": {"m": m, "n": n, "algebra": str(AlgebraKind(kind).value)},
                "trials": self.trials, "samples": self.samples, "seed": self.seed, "tol": self.tol.to_dict(),
                "out_path": self.out_path}


@dataclass
class SuiteReport:
    suite: str
    paper_statement: str
    config: dict
    started: str
    finished: str
    passed: bool
    trials_run: int
    failures: list[dict] = field(default_factory=list)
    near_misses: list[dict] | None = None
    summary: dict = field(default_factory=dict)
    rng_algorithm: str = RNG_ALGORITHM

    def to_dict(self) -> dict:
        out = {"suite": self.suite, "paper_statement": self.paper_statement, "config": self.config,
               "rng_algorithm": self.rng_algorithm, "started": self.started, "finished": self.finished,
               "pass": self.passed, "trials_run": self.trials_run, "failures": self.failures,
               "summary": self.summary}
        if self.near_misses is not None:
            out["near_misses"] = self.near_misses
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(_jsonable(self.to_dict()), indent=indent, ensure_ascii=False, allow_nan=False)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, complex):
        return [_jsonable(obj.real), _jsonable(obj.imag)]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


@dataclass
class _Outcome:
    failures: list[dict] = field(default_factory=list)
    trials_run: int = 0
    near_misses: list[dict] | None = None
    summary: dict = field(default_factory=dict)

    def fail(self, case_id, inputs, expected, observed) -> None:
        self.failures.append({"case_id": case_id, "inputs": inputs, "expected": expected, "observed": observed})


@dataclass(frozen=True)
class SuiteDef:
    name: str
    statement: str
    runner: Callable[[SuiteConfig], _Outcome]
    search: bool = False
    real: bool = False


def _dim(cfg: SuiteConfig, rng) -> int:
    return int(cfg.dim) if cfg.dim is not None else int(rng.integers(ANGLE_DIMS[0], ANGLE_DIMS[1] + 1))


def _vec(x) -> list:
    return np.asarray(x, dtype=float).tolist()


def _el(x, shape: ModuleShape) -> dict:
    return ModuleElement(x, shape.algebra).to_dict()


def _full_shape(cfg: SuiteConfig) -> ModuleShape:
    shape = cfg.shape
    if not shape.algebra.is_full:
        raise PreconditionError(f"suite {cfg.suite} needs the full matrix algebra")
    return shape


# -- real inner product spaces ------------------------------------------------

def _admissible_pair(rng, dim: int):
    while True:
        x, y = ra.equal_norm_pairs(rng, 1, dim)
        x, y = x[0], y[0]
        if not ra.are_dependent(x, y):
            return x, y


def _run_prop31(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        x, y = _admissible_pair(rng, _dim(cfg, rng))
        phi = ra.angle(x, y)
        theta = 0.0
        while not (0.0 < theta < math.pi) or abs(theta - phi) <= ra.EXCLUDED_ANGLE_BAND:
            theta = float(rng.uniform(0.0, math.pi))
        try:
            lam = ra.lambda_equal_norm(x, y, theta, cfg.tol)
            a1, a2 = ra.angle(x + lam * y, y), ra.angle(y + lam * x, x)
        except AngleguardError as exc:
            out.fail(i, {"x": _vec(x), "y": _vec(y), "theta": theta}, "lambda defined", repr(exc))
            continue
        err = max(abs(a1 - theta), abs(a2 - theta))
        if not err <= ra.ANGLE_TOL:
            out.fail(i, {"x": _vec(x), "y": _vec(y), "theta": theta, "lambda": lam},
                     f"both angles within {ra.ANGLE_TOL} of theta", {"angles": [a1, a2], "error": err})
    out.trials_run = cfg.trials
    return out


def _run_prop33(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        dim = _dim(cfg, rng)
        while True:
            x, y = _admissible_pair(rng, dim)
            if abs(x @ y) > 1e-3 * np.linalg.norm(x) * np.linalg.norm(y):
                break
        nx, ny = np.linalg.norm(x), np.linalg.norm(y)
        lam = -(x @ y) / (nx * nx)
        mu = ra.mu_witness(x, y, cfg.tol)
        res = {"x+lam*y . y": abs((x + lam * y) @ y), "y+lam*x . x": abs((y + lam * x) @ x),
               "x+mu*y . x-mu*y": abs((x + mu * y) @ (x - mu * y))}
        lam31 = ra.lambda_equal_norm(x, y, math.pi / 2, cfg.tol)
        res["x+lam'*y . y (right-angle formula)"] = abs((x + lam31 * y) @ y)
        bound = PROP33_TOL * nx * ny
        if max(res.values()) > bound:
            out.fail(i, {"x": _vec(x), "y": _vec(y), "lambda": lam, "mu": mu},
                     f"residuals <= {bound}", {k: float(v) for k, v in res.items()})
    out.trials_run = cfg.trials
    return out


def _run_thm35(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        dim = _dim(cfg, rng)
        sim = ra.random_similarity(rng, dim + int(rng.integers(0, 2)), dim)
        rep = ra.thm35_conditions(sim, cfg.samples, rng, cfg.tol)
        if not (rep.all_pass and rep.consistent):
            out.fail(f"{i}/similarity", {"map": sim.tolist()}, "all seven conditions hold",
                     {k: v.sampled for k, v in rep.conditions.items()})
        spread = ra.random_spread_map(rng, dim)
        rep = ra.thm35_conditions(spread, cfg.samples, rng, cfg.tol)
        found = [k for k in ("iii", "iv", "v", "vi", "vii") if rep.conditions[k].witness is not None]
        if rep.conditions["i"].sampled or not found:
            out.fail(f"{i}/spread", {"map": spread.tolist()}, "(i) fails and a witness for one of (iii)-(vii)",
                     {"i": rep.conditions["i"].sampled, "witnessed": found})
    out.trials_run = cfg.trials
    return out


def _run_example36(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    ratios = []
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        dim = _dim(cfg, rng)
        x, y = ra.equal_norm_pairs(rng, 1, dim)
        x, y = x[0], y[0]
        nx, ny = np.linalg.norm(ra.norm_cube(x)), np.linalg.norm(ra.norm_cube(y))
        if abs(nx - ny) > cfg.tol.rel_tol * max(nx, ny):
            out.fail(i, {"x": _vec(x), "y": _vec(y)}, "equal image norms", [nx, ny])
        ratios.append(nx / np.linalg.norm(x))
    spread = float(max(ratios) - min(ratios))
    is_sim = bool(spread <= cfg.tol.rel_tol * max(ratios))
    if is_sim:
        out.fail("similarity", {"tag": "nonlinear_norm_cube"}, "not a similarity", {"ratio_spread": spread})
    out.summary = {"equal_norm_condition": not out.failures, "similarity": is_sim, "ratio_spread": spread}
    out.trials_run = cfg.trials
    return out


def _random_spd(rng, dim: int) -> np.ndarray:
    a = rng.standard_normal((dim, dim))
    return a @ a.T + 0.1 * np.eye(dim)


def _run_cor37(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        dim = _dim(cfg, rng)
        g1 = _random_spd(rng, dim)
        gamma = float(rng.uniform(0.5, 3.0))
        res = ra.compare_inner_products(ra.GramPair(g1, gamma * gamma * g1), cfg.samples, rng, cfg.tol)
        err = math.inf if res.gamma is None else abs(res.gamma - gamma) / gamma
        if not err <= COR37_TOL:
            out.fail(f"{i}/proportional", {"g1": g1.tolist(), "gamma": gamma}, f"gamma within {COR37_TOL}",
                     {"gamma": res.gamma, "relative_error": err})
        g2 = _random_spd(rng, dim)
        res = ra.compare_inner_products(ra.GramPair(g1, g2), cfg.samples, rng, cfg.tol)
        w = res.witness
        ok = w is not None
        if ok:
            x, y = np.array(w["x"]), np.array(w["y"])
            s1 = math.sqrt((x @ g1 @ x) * (y @ g1 @ y))
            s2 = math.sqrt((x @ g2 @ x) * (y @ g2 @ y))
            ok = abs(x @ g1 @ y) <= 1e-8 * s1 and abs(x @ g2 @ y) > 1e-8 * s2
        if not ok:
            out.fail(f"{i}/generic", {"g1": g1.tolist(), "g2": g2.tolist()}, "violating witness", res.to_dict())
    out.trials_run = cfg.trials
    return out


def _run_thm38(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    survivors = 0
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        dim = _dim(cfg, rng)
        theta = float(rng.uniform(0.05, math.pi - 0.05))
        t = ra.random_similarity(rng, dim, dim) if i % 2 == 0 else ra.random_spread_map(rng, dim)
        rep = ra.theta_preserving_check(t, theta, cfg.samples, rng, cfg.tol)
        survivors += rep.hypotheses_hold
        if not rep.consistent or (i % 2 == 0 and not rep.hypotheses_hold):
            out.fail(i, {"map": t.tolist(), "theta": theta}, "hypotheses hold => similarity", rep.to_dict())
    out.summary = {"hypothesis_survivors": survivors}
    out.trials_run = cfg.trials
    return out


# -- matrix modules -----------------------------------------------------------

def _run_lemma41(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    shape = cfg.shape
    orth = 0
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        if i % 2 == 0:
            x, y = orthogonal_module_pair(rng, shape)
            orth += 1
        else:
            x, y = shape.random_element(rng), shape.random_element(rng)
        rep = lemma41_status(ModuleElement(x, shape.algebra), ModuleElement(y, shape.algebra),
                             cfg.samples, rng, cfg.tol)
        if not rep.agree:
            out.fail(i, {"x": _el(x, shape), "y": _el(y, shape)}, "four verdicts agree", rep.to_dict())
    out.summary = {"orthogonal_pairs": orth, "generic_pairs": cfg.trials - orth}
    out.trials_run = cfg.trials
    return out


def _thm43_family(rng, shape: ModuleShape, i: int) -> tuple[str, MapUnderTest]:
    """Mix of maps, most of which survive the equal-modulus hypothesis."""
    m = shape.m
    if not shape.algebra.is_full:
        fams = ("op_a_linear", "generic_left_mult", "diag_multiplier")
    else:
        fams = ("op_a_linear", "conjugation", "right_unitary", "op_a_linear_wide",
                "generic_left_mult", "random_linear", "right_generic")
    fam = fams[i % len(fams)]
    if fam == "op_a_linear":
        return fam, op_a_linear_map(rng, shape)
    if fam == "op_a_linear_wide":
        return fam, op_a_linear_map(rng, shape, m + 1)
    if fam == "generic_left_mult":
        return fam, generic_left_mult(rng, shape)
    if fam == "random_linear":
        return fam, random_linear_map(rng, shape)
    if fam == "diag_multiplier":
        f0 = complex_gaussian(rng, shape.n)
        return fam, counterexample(DIAGONAL_MULTIPLIER, f0=f0, n=shape.n)
    if fam == "conjugation":
        left = math.sqrt(rng.uniform(0.5, 4.0)) * haar_unitary(rng, m)
        return fam, counterexample(CONJUGATION, m=m, n=shape.n, left=left)
    if fam == "right_unitary":
        return fam, sandwich(math.sqrt(rng.uniform(0.5, 4.0)) * haar_unitary(rng, m), haar_unitary(rng, shape.n))
    w = complex_gaussian(rng, (shape.n, shape.n))
    return fam, sandwich(haar_unitary(rng, m), w)


def _implication_suite(cfg: SuiteConfig, family, verify, shape: ModuleShape) -> _Outcome:
    out = _Outcome()
    survivors: dict[str, int] = {}
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        fam, t = family(rng, shape, i)
        res = verify(t, cfg.samples, rng, cfg.tol)
        if res.hypothesis_holds:
            survivors[fam] = survivors.get(fam, 0) + 1
        if not res.consistent:
            out.fail(i, {"family": fam, "map": t.to_dict()}, "hypothesis holds => orthogonality preserved",
                     res.to_dict())
    out.summary = {"hypothesis_survivors": sum(survivors.values()), "survivors_by_family": dict(sorted(survivors.items()))}
    out.trials_run = cfg.trials
    return out


def _run_thm43(cfg: SuiteConfig) -> _Outcome:
    return _implication_suite(cfg, _thm43_family, clf.verify_thm43, cfg.shape)


def _thm44_family(rng, shape: ModuleShape, i: int) -> tuple[str, MapUnderTest]:
    fams = ("op_a_linear", "op_a_linear_wide", "generic_left_mult") if shape.algebra.is_full else \
        ("op_a_linear", "diag_multiplier", "generic_left_mult")
    fam = fams[i % len(fams)]
    if fam == "op_a_linear_wide":
        return fam, op_a_linear_map(rng, shape, shape.m + 1)
    if fam == "diag_multiplier":
        return fam, counterexample(DIAGONAL_MULTIPLIER, f0=complex_gaussian(rng, shape.n), n=shape.n)
    if fam == "op_a_linear":
        return fam, op_a_linear_map(rng, shape)
    return fam, generic_left_mult(rng, shape)


def _run_thm44(cfg: SuiteConfig) -> _Outcome:
    return _implication_suite(cfg, _thm44_family, clf.verify_thm44, cfg.shape)


def _remark45_family(rng, shape: ModuleShape, i: int) -> tuple[str, MapUnderTest]:
    fam = ("unitary_left", "conjugation", "right_unitary", "random_linear", "generic_left_mult")[i % 5]
    if fam == "unitary_left":
        return fam, left_mult(haar_unitary(rng, 2))
    if fam == "conjugation":
        return fam, counterexample(CONJUGATION, m=2, n=2, left=haar_unitary(rng, 2))
    if fam == "right_unitary":
        return fam, sandwich(haar_unitary(rng, 2), haar_unitary(rng, 2))
    if fam == "random_linear":
        return fam, random_linear_map(rng, shape)
    return fam, generic_left_mult(rng, shape)


def _run_remark45(cfg: SuiteConfig) -> _Outcome:
    return _implication_suite(cfg, _remark45_family, clf.verify_remark45, ModuleShape.of(2, 2))


def _run_thm46(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    shape = cfg.shape
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        if i % 2 == 0:
            fam, t = "op_a_linear", op_a_linear_map(rng, shape)
        else:
            fam, t = _thm43_family(rng, shape, i // 2)
        rep = clf.classify(t, cfg.samples, rng, cfg.tol)
        expect_all = fam == "op_a_linear"
        all_true = rep.op and rep.strongly_op and rep.similarity.is_similarity and rep.cond_iv and rep.cond_v
        if not rep.consistent or (expect_all and not all_true):
            out.fail(f"{i}/map", {"family": fam, "map": t.to_dict()},
                     "similarity => (iii), (iv), (v)" + ("; all hold" if expect_all else ""), rep.to_dict())
        x, y = shape.random_element(rng), shape.random_element(rng)
        dev = fro_norm(polarize(x, y) - mod_inner(x, y))
        if dev > 1e2 * cfg.tol.rel_tol * fro_norm(x) * fro_norm(y):
            out.fail(f"{i}/polarization", {"x": _el(x, shape), "y": _el(y, shape)},
                     "inner product recovered from moduli", {"deviation": dev})
    out.trials_run = cfg.trials
    return out


def _run_example47(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        if i % 2 == 0:
            f0 = np.array([1.0, 2.0])
        else:
            n = int(rng.integers(2, 5))
            f0 = complex_gaussian(rng, n)
            f0 *= np.linspace(1.0, 2.0, n) / np.abs(f0)
        t = counterexample(DIAGONAL_MULTIPLIER, f0=f0, n=f0.size)
        rep = clf.classify(t, cfg.samples, rng, cfg.tol)
        observed = {"i": rep.similarity.is_similarity, "iii": rep.strongly_op, "iv": rep.cond_iv, "v": rep.cond_v}
        if observed != {"i": False, "iii": True, "iv": True, "v": True}:
            out.fail(i, {"map": t.to_dict()}, "(iii), (iv), (v) hold and (i) fails", observed)
    out.trials_run = cfg.trials
    return out


def _run_lemma48_thm410(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    shape = _full_shape(cfg)
    met = 0
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        t = op_a_linear_map(rng, shape)
        v = clf.verify_thm410(t, cfg.samples, rng, cfg.tol, probes=100)
        met += v.hypothesis_met
        probe_err = None
        if v.hypothesis_met:
            fit = clf.gamma_fit(t, cfg.samples, rng)
            probe_err = abs(fit.probe_gamma - fit.gamma) / fit.gamma
        if not (v.hypothesis_met and v.consequences_hold and probe_err <= clf.FIT_TOL):
            out.fail(f"{i}/op_a_linear", {"map": t.to_dict()},
                     "local and op; residual and |Tx| - sqrt(gamma)|x| within 1e-8",
                     {**v.to_dict(), "probe_relative_error": probe_err})
        g = generic_left_mult(rng, shape)
        v = clf.verify_thm410(g, cfg.samples, rng, cfg.tol)
        if v.hypothesis_met:
            out.fail(f"{i}/generic", {"map": g.to_dict()}, "hypothesis not met", v.to_dict())
    control = clf.gamma_fit(counterexample(DIAGONAL_MULTIPLIER, f0=[1.0, 2.0]), cfg.samples, trial_rng(cfg.seed, cfg.trials))
    if control.residual < 0.1:
        out.fail("control", {"tag": DIAGONAL_MULTIPLIER, "f0": [1.0, 2.0]}, "residual >= 0.1", control.to_dict())
    out.summary = {"hypothesis_met": met, "control_residual": control.residual}
    out.trials_run = cfg.trials
    return out


def _run_cor411(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    shape = _full_shape(cfg)
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        for case, t, expect in (("similarity", op_a_linear_map(rng, shape), True),
                                ("generic", generic_left_mult(rng, shape), False)):
            v = clf.verify_cor411(t, cfg.samples, rng, cfg.tol)
            if not (v.op == expect and v.order == expect):
                out.fail(f"{i}/{case}", {"map": t.to_dict()}, {"op": expect, "order": expect}, v.to_dict())
    out.trials_run = cfg.trials
    return out


# -- searches ------------------------------------------------------------------

def _worst_lambda(x, y, rng, samples: int) -> tuple[float, complex]:
    """Most negative ``|x + lam y| - |x|`` gap over seeded starts, refined by Nelder-Mead."""
    starts = [1.0, -1.0, 1j, -1j]
    c = np.conj(x).T @ y
    ny2 = op_norm(y) ** 2
    if ny2 > 0:
        starts.append(-np.trace(c) / (np.trace(gram(y)).real or 1.0))
    starts += [complex(rng.uniform(0, 2) * np.exp(2j * np.pi * rng.random())) for _ in range(samples)]
    best = min(((birkhoff_gap(x, y, s), complex(s)) for s in starts), key=lambda p: p[0])

    def f(v):
        return birkhoff_gap(x, y, complex(v[0], v[1]))

    res = minimize(f, [best[1].real, best[1].imag], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400})
    if res.fun < best[0]:
        best = (float(res.fun), complex(res.x[0], res.x[1]))
    return float(best[0]), best[1]


def _run_remark42_search(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    shape = _full_shape(cfg)
    cands = []
    excluded = 0
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        if i % 8 == 7:
            x, y = orthogonal_module_pair(rng, shape)
        else:
            x, y = shape.random_element(rng), shape.random_element(rng)
            if rng.random() < 0.5:
                # Nearly orthogonal pairs are where the conjecture is tight.
                x0, y0 = orthogonal_module_pair(rng, shape)
                eps = 10.0 ** rng.uniform(-3, 0)
                x, y = x0 + eps * x, y0 + eps * y
        inner = op_norm(np.conj(x).T @ y)
        if inner <= 1e-3 * op_norm(x) * op_norm(y):
            excluded += 1
            continue
        gap, lam = _worst_lambda(x, y, rng, cfg.samples)
        violation = max(0.0, -gap)
        cands.append({"case_id": i, "inner_norm": inner, "max_violation": violation,
                      "lambda": [lam.real, lam.imag], "x": _el(x, shape), "y": _el(y, shape),
                      "status": "candidate for expert review" if violation <= cfg.tol.psd_slack else "violated"})
    cands.sort(key=lambda c: (c["max_violation"], c["case_id"]))
    out.near_misses = cands[:NEAR_MISS_COUNT]
    out.summary = {"candidates": len(cands), "excluded_by_gate": excluded,
                   "for_expert_review": sum(c["status"] != "violated" for c in cands)}
    out.trials_run = cfg.trials
    return out


def _run_triangle(cfg: SuiteConfig) -> _Outcome:
    out = _Outcome()
    shape = cfg.shape
    budget = min(cfg.trials, TRIANGLE_BUDGET)
    for i in range(budget):
        rng = trial_rng(cfg.seed, i)
        x, y = shape.random_element(rng), shape.random_element(rng)
        gap = triangle_gap(x, y)
        if gap < -TRIANGLE_MARGIN:
            lhs, rhs = mod_abs(x + y), mod_abs(x) + mod_abs(y)
            out.summary = {"witness": {"case_id": i, "x": _el(x, shape), "y": _el(y, shape), "gap": gap,
                                       "rhs_minus_lhs_positive": is_positive(rhs - lhs)}}
            out.trials_run = i + 1
            return out
    out.fail("search", {"budget": budget}, "a pair with |x + y| not below |x| + |y|", "none found")
    out.trials_run = budget
    return out


SUITES: dict[str, SuiteDef] = {s.name: s for s in (
    SuiteDef("prop31", "Proposition 3.1: equal-norm witness lambda for a prescribed angle", _run_prop31, real=True),
    SuiteDef("prop33", "Proposition 3.3 and Corollary 3.4: right-angle witnesses lambda and mu", _run_prop33, real=True),
    SuiteDef("thm35", "Theorem 3.5: seven equivalent characterizations of similarities", _run_thm35, real=True),
    SuiteDef("example36", "Example 3.6: T(x) = ||x||^2 x keeps equal norms equal but is no similarity",
             _run_example36, real=True),
    SuiteDef("cor37", "Corollary 3.7: two inner products with the same orthogonality are proportional",
             _run_cor37, real=True),
    SuiteDef("thm38", "Theorem 3.8: preserving a fixed angle theta forces a similarity", _run_thm38, real=True),
    SuiteDef("lemma41", "Lemma 4.1: four equivalent forms of module orthogonality", _run_lemma41),
    SuiteDef("thm43", "Theorem 4.3: |x| = |y| => |Tx| = |Ty| implies orthogonality preservation", _run_thm43),
    SuiteDef("thm44", "Theorem 4.4: A-linear T with |x| <= |y| => |Tx| <= |Ty| preserves orthogonality", _run_thm44),
    SuiteDef("remark45", "Remark 4.5: on M_2 the order hypothesis suffices without module linearity", _run_remark45),
    SuiteDef("thm46", "Theorem 4.6: similarities of modules satisfy (iii)-(v)", _run_thm46),
    SuiteDef("example47", "Example 4.7: multipliers satisfy (iii)-(v) but are not similarities", _run_example47),
    SuiteDef("lemma48_thm410", "Lemma 4.8 and Theorem 4.10: local orthogonality preservers scale the inner product",
             _run_lemma48_thm410),
    SuiteDef("cor411", "Corollary 4.11: over matrix algebras orthogonality preservation iff order preservation",
             _run_cor411),
    SuiteDef("remark42_search", "Remark 4.2: conjectured equivalence of |x| <= |x + lambda y| with orthogonality",
             _run_remark42_search, search=True),
    SuiteDef("triangle_inequality_witness", "Section 2: the modulus fails the triangle inequality in general",
             _run_triangle),
)}


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Run one suite; the report is deterministic in ``cfg`` apart from timestamps."""
    spec = SUITES[cfg.suite]
    started = _now()
    res = spec.runner(cfg)
    failures = sorted(res.failures, key=lambda f: _case_key(f["case_id"]))
    return SuiteReport(suite=cfg.suite, paper_statement=spec.statement, config=cfg.to_dict(), started=started,
                       finished=_now(), passed=not failures, trials_run=res.trials_run, failures=failures,
                       near_misses=res.near_misses, summary=res.summary)


def _case_key(case_id) -> tuple:
    head = str(case_id).split("/")[0]
    return (0, int(head), str(case_id)) if head.isdigit() else (1, 0, str(case_id))


def remark42_search(cfg: SuiteConfig) -> SuiteReport:
    if cfg.suite != "remark42_search":
        cfg = SuiteConfig(**{**cfg.__dict__, "suite": "remark42_search"})
    return run_suite(cfg)
