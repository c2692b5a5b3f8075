"""Maps under test and the fixed registry of named counterexamples."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cstar import AlgebraKind, AlgebraSpec, ModuleShape
from .errors import InputError, ZeroMapError
from .linalg import as_matrix, matrix_from_json, matrix_to_json

LEFT_MULT = "left_mult"
GENERAL_LINEAR = "general_linear"
NAMED = "named_counterexample"

NORM_CUBE = "nonlinear_norm_cube"
DIAGONAL_MULTIPLIER = "diagonal_multiplier"
CONJUGATION = "entrywise_conjugation"
COUNTEREXAMPLE_TAGS = (NORM_CUBE, DIAGONAL_MULTIPLIER, CONJUGATION)


@dataclass(frozen=True)
class MapUnderTest:
    """A map ``M_{m x n} -> M_{p x n}`` between modules over the same algebra.

    ``left_mult`` stores ``S`` (``p x m``) and acts by ``x -> S x``;
    ``general_linear`` stores a ``(p n) x (m n)`` matrix acting on the row-major
    vectorization of ``x``; named counterexamples carry a registry ``tag`` and
    optional ``matrix`` parameter.
    """

    kind: str
    domain: ModuleShape
    out_rows: int
    matrix: np.ndarray | None = None
    tag: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        m, n, p = self.domain.m, self.domain.n, self.out_rows
        if self.kind == LEFT_MULT:
            s = as_matrix(self.matrix)
            if s.shape != (p, m):
                raise InputError(f"left multiplier must be {p}x{m}, got {s.shape}")
            if not self.domain.algebra.is_full and np.any(s - np.diag(np.diag(s))):
                raise InputError("over the diagonal algebra a left multiplier must be diagonal")
            object.__setattr__(self, "matrix", s)
        elif self.kind == GENERAL_LINEAR:
            a = as_matrix(self.matrix)
            if a.shape != (p * n, m * n):
                raise InputError(f"general linear matrix must be {p * n}x{m * n}, got {a.shape}")
            if not self.domain.algebra.is_full:
                raise InputError("general linear maps are only supported over the full algebra")
            object.__setattr__(self, "matrix", a)
        elif self.kind == NAMED:
            if self.tag not in COUNTEREXAMPLE_TAGS:
                raise InputError(f"unknown counterexample tag {self.tag!r}")
            if self.matrix is not None:
                object.__setattr__(self, "matrix", as_matrix(self.matrix))
        else:
            raise InputError(f"unknown map kind {self.kind!r}")

    @property
    def codomain(self) -> ModuleShape:
        return ModuleShape(self.out_rows, self.domain.algebra)

    @property
    def algebra(self) -> AlgebraSpec:
        return self.domain.algebra

    @property
    def is_linear(self) -> bool:
        """Complex linear (conjugation is only real linear, the norm cube is neither)."""
        return self.kind != NAMED or self.tag == DIAGONAL_MULTIPLIER

    @property
    def is_real_linear(self) -> bool:
        return self.tag != NORM_CUBE

    @property
    def label(self) -> str:
        return self.tag if self.kind == NAMED else self.kind

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != self.domain.shape:
            raise InputError(f"input shape {x.shape} does not match domain {self.domain.shape}")
        if self.kind == LEFT_MULT:
            return self.matrix @ x
        if self.kind == GENERAL_LINEAR:
            return (self.matrix @ x.reshape(-1)).reshape(self.out_rows, self.domain.n)
        if self.tag == CONJUGATION:
            cx = np.conj(x)
            return cx if self.matrix is None else self.matrix @ cx
        if self.tag == DIAGONAL_MULTIPLIER:
            return self.matrix @ x
        return np.sum(np.abs(x) ** 2) * x

    def check_nonzero(self) -> None:
        if all(not np.any(self(e)) for e in self.domain.basis()):
            raise ZeroMapError("the map under test is identically zero")

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "domain": self.domain.to_dict(), "out_rows": self.out_rows}
        if self.matrix is not None:
            out["matrix"] = matrix_to_json(self.matrix)
        if self.tag is not None:
            out["tag"] = self.tag
        if self.params:
            out["params"] = self.params
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "MapUnderTest":
        try:
            dom = obj["domain"]
            domain = ModuleShape.of(int(dom["m"]), int(dom["n"]), dom.get("kind", "full"))
            matrix = matrix_from_json(obj["matrix"]) if "matrix" in obj else None
            return cls(obj["kind"], domain, int(obj["out_rows"]), matrix, obj.get("tag"), obj.get("params", {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad map object: {exc}") from exc


def left_mult(s, algebra: AlgebraSpec | int | None = None) -> MapUnderTest:
    """``x -> S x`` on ``M_{m x n}`` where ``S`` is ``p x m``."""
    s = as_matrix(s)
    if algebra is None:
        algebra = AlgebraSpec(s.shape[1])
    elif isinstance(algebra, int):
        algebra = AlgebraSpec(algebra)
    return MapUnderTest(LEFT_MULT, ModuleShape(s.shape[1], algebra), s.shape[0], s)


def general_linear(a, m: int, p: int, n: int) -> MapUnderTest:
    return MapUnderTest(GENERAL_LINEAR, ModuleShape.of(m, n), p, as_matrix(a))


def sandwich(s, w) -> MapUnderTest:
    """``x -> S x W`` as a general linear map; not module linear unless ``W`` is scalar."""
    s, w = as_matrix(s), as_matrix(w)
    p, m = s.shape
    n = w.shape[0]
    # Row-major vec: vec(S X W) = (S kron W^T) vec(X).
    return general_linear(np.kron(s, w.T), m, p, n)


def counterexample(tag: str, **params) -> MapUnderTest:
    """Build a registered counterexample.

    ``nonlinear_norm_cube``: ``x -> |x|^2 x`` on real ``dim``-vectors (columns).
    ``diagonal_multiplier``: ``g -> f0 g`` on the diagonal algebra, ``f0`` a list.
    ``entrywise_conjugation``: ``x -> conj(x)`` on ``M_{m x n}`` over ``M_n``,
    optionally followed by left multiplication with ``left``.
    """
    if tag == NORM_CUBE:
        dim = int(params.get("dim", 3))
        return MapUnderTest(NAMED, ModuleShape.of(dim, 1), dim, tag=tag, params={"dim": dim})
    if tag == DIAGONAL_MULTIPLIER:
        f0 = np.asarray(params.get("f0", [1.0, 2.0]), dtype=complex).reshape(-1)
        n = int(params.get("n", f0.size))
        if f0.size != n:
            raise InputError(f"f0 has {f0.size} entries, expected {n}")
        if not np.any(f0):
            raise ZeroMapError("f0 must be nonzero")
        return MapUnderTest(NAMED, ModuleShape.of(n, n, AlgebraKind.DIAGONAL), n, np.diag(f0), tag=tag,
                            params={"f0_re": f0.real.tolist(), "f0_im": f0.imag.tolist()})
    if tag == CONJUGATION:
        m = int(params.get("m", 2))
        n = int(params.get("n", 2))
        left = params.get("left")
        if left is not None:
            left = as_matrix(left)
            if left.shape[1] != m:
                raise InputError("left factor has the wrong number of columns")
        p = m if left is None else left.shape[0]
        return MapUnderTest(NAMED, ModuleShape.of(m, n), p, left, tag=tag)
    raise InputError(f"unknown counterexample tag {tag!r}; known: {', '.join(COUNTEREXAMPLE_TAGS)}")


def real_linear_matrix(t: MapUnderTest) -> np.ndarray:
    """Matrix of ``t`` over the reals in the coordinates of ``ModuleShape.real_basis``
    (real parts then imaginary parts of the output entries)."""
    cols = []
    for e in t.domain.real_basis():
        y = t(e).reshape(-1)
        cols.append(np.concatenate([y.real, y.imag]))
    return np.array(cols).T
