"""Six-dimensional block representations of B3.

A pair of 3x3-block matrices

    rho(s1) = [[A,  B], [ C, D]]
    rho(s2) = [[A, -B], [-C, D]]

satisfies the braid relation exactly when

    A^2 B - B C B - A B D + B D^2 = 0          (first block equation)
    C A^2 - D C A - C B C + D^2 C = 0          (second block equation)

and both images are invertible.  For invertible B the first equation has
the unique solution returned by :func:`solve_C`; the second must be checked.

The five-condition family fixes A, B, D as explicit functions of complex
parameters ``a, d, f, g`` with ``d, g`` (and sometimes ``f``) determined by
``a``; see :class:`RepParams`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import matrix as mx
from .braid import BraidWord, as_word
from .exceptions import NotARepresentationError, ParameterError

SQRT3 = math.sqrt(3.0)
#: primitive cube root of unity exp(2 pi i / 3)
P3 = cmath.exp(2j * math.pi / 3)

EXCLUDED_A = (-1.0, 0.0, 2.0, 0.5)
EXCLUDED_A_ATOL = 1e-9
ZERO_F_ATOL = 1e-12

#: braid relation residual tolerance, relative to the largest entry of either side
RELATION_RTOL = 1e-9
#: block equation residual tolerance, relative to (largest block entry)^3
BLOCK_EQ_RTOL = 1e-9
INVERSE_RTOL = 1e-10

# conditions whose f is forced to 1 + a
F_FORCED = frozenset({2, 4, 5})


# -- parameters --------------------------------------------------------------

def _derived_dg(condition: int, branch: int, a: complex) -> tuple[complex, complex]:
    ia3 = 1j * a * SQRT3
    if condition == 1:
        return 1 + 2 * a, -1 + branch * ia3
    if condition == 2:
        return 1 + 2 * a, 3 * a - 1
    if condition == 3:
        # opposite imaginary signs in d and g
        return 1 - a + branch * ia3, -1 - branch * ia3
    if condition == 4:
        # same imaginary sign in d and g
        return 1 - a + branch * ia3, -1 + branch * ia3
    if condition == 5:
        return 1 - a + branch * ia3, 3 * a - 1
    raise ParameterError(f"condition must be in 1..5, got {condition}")


@dataclass(frozen=True)
class RepParams:
    """Validated parameters of the five-condition family.

    ``branch=+1`` takes the upper sign of each ``±`` (for conditions 3 and 4,
    the first of the two alternatives).  For conditions 2, 4 and 5 the given
    ``f`` is ignored and replaced by ``1 + a``.
    """

    condition: int
    branch: int
    a: complex
    f: Optional[complex] = None
    d: complex = field(init=False)
    g: complex = field(init=False)

    def __post_init__(self):
        if self.condition not in (1, 2, 3, 4, 5):
            raise ParameterError(f"condition must be in 1..5, got {self.condition}")
        if self.branch not in (1, -1):
            raise ParameterError(f"branch must be +1 or -1, got {self.branch}")
        a = complex(self.a)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise ParameterError("a must be finite")
        for bad in EXCLUDED_A:
            if abs(a - bad) <= EXCLUDED_A_ATOL:
                raise ParameterError(f"a = {a} is excluded (a not in {{-1, 0, 2, 1/2}})")
        if self.condition in F_FORCED:
            f = 1 + a
        else:
            if self.f is None:
                raise ParameterError(f"condition {self.condition} needs a value for f")
            f = complex(self.f)
            if not (math.isfinite(f.real) and math.isfinite(f.imag)):
                raise ParameterError("f must be finite")
            if abs(f) <= ZERO_F_ATOL:
                raise ParameterError("f must be nonzero")
        d, g = _derived_dg(self.condition, self.branch, a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "g", g)

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "branch": self.branch,
            "a": [self.a.real, self.a.imag],
            "f": [self.f.real, self.f.imag],
        }


def family_params(condition: int, branch: int, a: complex,
                  f: Optional[complex] = None) -> RepParams:
    return RepParams(condition, branch, a, f)


# -- block quadruples --------------------------------------------------------

@dataclass(frozen=True)
class BlockQuad:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def _scale(self) -> float:
        return max(1.0, mx.max_entry(self.A, self.B, self.C, self.D)) ** 3

    def eq1_residual(self) -> float:
        A, B, C, D = self.A, self.B, self.C, self.D
        r = A @ A @ B - B @ C @ B - A @ B @ D + B @ D @ D
        return float(np.max(np.abs(r))) / self._scale()

    def eq2_residual(self) -> float:
        A, B, C, D = self.A, self.B, self.C, self.D
        r = C @ A @ A - D @ C @ A - C @ B @ C + D @ D @ C
        return float(np.max(np.abs(r))) / self._scale()


def solve_C(A, B, D) -> np.ndarray:
    """C = B^-1 A^2 - B^-1 A B D B^-1 + D^2 B^-1, solving the first block equation."""
    A, B, D = mx.as_matrix(A), mx.as_matrix(B), mx.as_matrix(D)
    Binv = mx.inverse(B, "B")
    return Binv @ A @ A - Binv @ A @ B @ D @ Binv + D @ D @ Binv


def family_blocks(p: RepParams) -> BlockQuad:
    a, d, f, g = p.a, p.d, p.f, p.g
    A = np.array([[a, a - 2, a - 2],
                  [-2 * a + 1, d, -2 * a + 1],
                  [f, f, g]], dtype=np.complex128)
    B = np.array([[a - 2, -a + 2, -a + 2],
                  [2 * a - 1, -2 * a + 1, 2 * a - 1],
                  [-f, -f, f]], dtype=np.complex128)
    D = np.array([[-a + 3, 3 * a - 3, -a - 1],
                  [-a + 2, 3 * a - 2, -3 * a],
                  [3, 2 * a - 1, -2 * a - 1]], dtype=np.complex128)
    return BlockQuad(A, B, solve_C(A, B, D), D)


# -- representations ---------------------------------------------------------

def relation_residual(s1, s2) -> float:
    lhs = s1 @ s2 @ s1
    rhs = s2 @ s1 @ s2
    return mx.max_abs_diff(lhs, rhs) / max(1.0, mx.max_entry(lhs, rhs))


@dataclass(frozen=True, eq=False)
class Rep:
    """A validated pair of generator images.

    Construction checks the braid relation, invertibility of both images and
    the inverse residuals; there is no way to hold an unvalidated Rep.
    """

    sigma1: np.ndarray
    sigma2: np.ndarray
    provenance: dict = field(default_factory=dict)
    sigma1_inv: np.ndarray = field(init=False, repr=False)
    sigma2_inv: np.ndarray = field(init=False, repr=False)
    relation_residual: float = field(init=False)
    det: tuple = field(init=False, repr=False)

    def __post_init__(self):
        s1 = mx.as_matrix(self.sigma1).copy()
        s2 = mx.as_matrix(self.sigma2).copy()
        if s1.shape != s2.shape:
            raise NotARepresentationError(
                f"generator images differ in shape: {s1.shape} vs {s2.shape}")
        det1 = mx.check_invertible(s1, "rho(s1)")
        det2 = mx.check_invertible(s2, "rho(s2)")
        i1, i2 = np.linalg.inv(s1), np.linalg.inv(s2)
        for name, m, mi in (("rho(s1)", s1, i1), ("rho(s2)", s2, i2)):
            res = mx.inverse_residual(m, mi)
            if res > INVERSE_RTOL:
                raise NotARepresentationError(
                    f"{name} inverse residual {res:.3e} exceeds {INVERSE_RTOL:g}", res)
        rel = relation_residual(s1, s2)
        if rel > RELATION_RTOL:
            raise NotARepresentationError(
                f"braid relation violated: residual {rel:.3e} exceeds {RELATION_RTOL:g}", rel)
        for m in (s1, s2, i1, i2):
            m.setflags(write=False)
        object.__setattr__(self, "sigma1", s1)
        object.__setattr__(self, "sigma2", s2)
        object.__setattr__(self, "sigma1_inv", i1)
        object.__setattr__(self, "sigma2_inv", i2)
        object.__setattr__(self, "relation_residual", rel)
        object.__setattr__(self, "det", (det1, det2))

    @property
    def dim(self) -> int:
        return self.sigma1.shape[0]

    def image(self, generator: int, inverse: bool = False) -> np.ndarray:
        if generator == 1:
            return self.sigma1_inv if inverse else self.sigma1
        if generator == 2:
            return self.sigma2_inv if inverse else self.sigma2
        raise ValueError(f"generator index {generator} outside {{1, 2}}")

    def __call__(self, w: BraidWord) -> np.ndarray:
        return evaluate(self, w)

    def to_json(self) -> dict:
        return {
            "sigma1": mx.to_json(self.sigma1),
            "sigma2": mx.to_json(self.sigma2),
            "provenance": self.provenance,
            "residual": self.relation_residual,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Rep":
        """Rebuild from :meth:`to_json` output; full validation is rerun."""
        try:
            s1, s2 = obj["sigma1"], obj["sigma2"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed representation JSON: {exc}") from exc
        return cls(mx.from_json(s1), mx.from_json(s2), dict(obj.get("provenance", {})))


def make_block_rep(q: BlockQuad, tol: float = BLOCK_EQ_RTOL,
                   provenance: Optional[dict] = None) -> Rep:
    r1, r2 = q.eq1_residual(), q.eq2_residual()
    if r1 > tol:
        raise NotARepresentationError(
            f"first block equation violated: residual {r1:.3e} exceeds {tol:g}", r1)
    if r2 > tol:
        raise NotARepresentationError(
            f"second block equation violated: residual {r2:.3e} exceeds {tol:g}", r2)
    prov = {"kind": "blocks"} if provenance is None else dict(provenance)
    prov["block_residuals"] = [r1, r2]
    return Rep(mx.block_compose(q.A, q.B, q.C, q.D, +1),
               mx.block_compose(q.A, q.B, q.C, q.D, -1), prov)


def family_rep(p: RepParams) -> Rep:
    prov = {"kind": "family", **p.to_dict()}
    return make_block_rep(family_blocks(p), provenance=prov)


def lambda_rep(A, B, lam: complex) -> Rep:
    """Representation with D = lam*I, valid when lam is not an eigenvalue of A."""
    A, B = mx.as_matrix(A), mx.as_matrix(B)
    lam = complex(lam)
    if lam == 0:
        raise ParameterError("lambda must be nonzero")
    n = A.shape[0]
    shifted = A - lam * mx.identity(n)
    det_shift = mx.determinant(shifted)
    threshold = mx.SINGULAR_RTOL * max(mx.max_entry(A), abs(lam)) ** n
    if abs(det_shift) <= threshold:
        raise ParameterError(
            f"lambda = {lam} is an eigenvalue of A: |det(A - lambda I)| = "
            f"{abs(det_shift):.3e} below threshold {threshold:.3e}")
    Binv = mx.inverse(B, "B")
    C = Binv @ A @ A - lam * Binv @ A + lam ** 2 * Binv
    D = lam * mx.identity(n)
    prov = {"kind": "lambda", "lambda": [lam.real, lam.imag]}
    return make_block_rep(BlockQuad(A, B, C, D), provenance=prov)


def _lieven_matrices(p: complex) -> tuple[np.ndarray, np.ndarray]:
    s1 = [
        [p + 1, p - 1, p - 1, p - 1, -p + 1, -p + 1],
        [-2 * p - 1, -1, -2 * p - 1, 2 * p + 1, -2 * p - 1, 2 * p + 1],
        [p + 2, p + 2, -p, -p - 2, -p - 2, p + 2],
        [-p - 2, -3 * p, p + 2, -p + 2, 3 * p, -p - 2],
        [p - 1, -p + 1, 3 * p + 3, -p + 1, 3 * p + 1, -3 * p - 3],
        [-3, -2 * p - 1, 2 * p + 1, 3, 2 * p + 1, -2 * p - 3],
    ]
    s2 = [
        [p + 1, p - 1, p - 1, -p + 1, p - 1, p - 1],
        [-2 * p - 1, -1, -2 * p - 1, -2 * p - 1, 2 * p + 1, -2 * p - 1],
        [p + 2, p + 2, -p, p + 2, p + 2, -p - 2],
        [p + 2, 3 * p, -p - 2, -p + 2, 3 * p, -p - 2],
        [-p + 1, p - 1, -3 * p - 3, -p + 1, 3 * p + 1, -3 * p - 3],
        [3, 2 * p + 1, -2 * p - 1, 3, 2 * p + 1, -2 * p - 3],
    ]
    return np.array(s1, dtype=np.complex128), np.array(s2, dtype=np.complex128)


def builtin_lieven_rep() -> Rep:
    """The explicit 6x6 representation at p = exp(2 pi i / 3).

    Coincides with ``family_rep(RepParams(3, +1, P3 + 1, P3 + 2))``.
    """
    s1, s2 = _lieven_matrices(P3)
    return Rep(s1, s2, {"kind": "builtin", "name": "cube-root", "p": [P3.real, P3.imag]})


LIEVEN_BRANCH = 1


def verify_braid_relation(r: Rep) -> float:
    return relation_residual(r.sigma1, r.sigma2)


def evaluate(r: Rep, w: BraidWord) -> np.ndarray:
    """The image rho(w): product of syllable powers, left to right."""
    w = as_word(w)
    out = mx.identity(r.dim)
    for gen, exp in w.syllables:
        if exp > 0:
            out = out @ mx.power(r.image(gen), exp)
        else:
            out = out @ mx.power(r.image(gen, inverse=True), -exp)
    return out
