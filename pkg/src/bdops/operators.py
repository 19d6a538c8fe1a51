"""The genuine Bernstein-Durrmeyer operator and its blended variants.

All four families share the structure

    L_n(f; x) = boundary terms + (n-1) * sum_k w_k(x) * I_k,
    I_k = integral of p_{n-2,k-1}(t) f(t) dt over [0, 1],

and differ only in the weight blend w_k(x) and the boundary factors:

* classical:  w_k = p_{n,k}(x); boundary (1-x)^n f(0) + x^n f(1).
* u1:         w_k = a(x) p_{n-1,k}(x) + a(1-x) p_{n-1,k-1}(x) with
              a(y) = alpha1(n) y + alpha0(n); reproduces the classical
              operator for alpha0 = 1, alpha1 = -1.
* general2:   w_k = b(x) p_{n-2,k} + g(x) p_{n-2,k-1} + b(1-x) p_{n-2,k-2},
              b quadratic, g(y) = gamma0(n) y (1-y).  'tilde2' is the
              instance beta0 = 1, beta2 = n, beta1 = -n-1, gamma0 = 2n.
* tilde3:     five-term blend of p_{n-4,k-j}, j = 0..4, with quartic
              b and g and d(y) = delta0(n) (y(1-y))^2.

Every family admits an exact path (``apply_exact``) when f is a rational
polynomial and x rational; it is the oracle behind the moment lemmas.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Callable, Optional, Tuple

import numpy as np

from .basis import basis_monomial_integral, eval_basis_exact
from .functions import TestFunction, polynomial
from .quadrature import integrate_all_against_basis, make_plan
from . import backend

FAMILIES = ("classical", "u1", "general2", "tilde2", "tilde3")

_SEQ_TOL = 1e-12  # constraint tolerance for float-valued sequences


class ConstraintError(ValueError):
    """A parameter sequence violates its normalization constraint."""


def _check(condition_value, label, n):
    exact = isinstance(condition_value, Rational)
    bad = condition_value != 0 if exact else abs(condition_value) > _SEQ_TOL
    if bad:
        raise ConstraintError(f"{label} violated at n = {n}: residual {condition_value}")


@dataclass(frozen=True)
class AlphaSequences:
    """First-order blend sequences alpha0(n), alpha1(n).

    Normalization 2 alpha0(n) + alpha1(n) = 1 makes the operator reproduce
    constants.  ``limit0`` is the limit of alpha0(n), used by the asymptotic
    (Voronovskaja) checks.
    """

    alpha0: Callable[[int], float]
    alpha1: Callable[[int], float]
    limit0: Optional[float] = None

    def validate(self, n: int) -> None:
        _check(2 * self.alpha0(n) + self.alpha1(n) - 1, "2*alpha0 + alpha1 = 1", n)

    def is_positive_at(self, n: int) -> bool:
        a0 = self.alpha0(n)
        return a0 >= 0 and a0 + self.alpha1(n) >= 0


@dataclass(frozen=True)
class BetaGammaSequences:
    """Second-order blend sequences; constants reproduced iff
    2 beta2 = gamma0 and 2 beta0 + beta1 + beta2 = 1."""

    beta0: Callable[[int], float]
    beta1: Callable[[int], float]
    beta2: Callable[[int], float]
    gamma0: Callable[[int], float]

    def validate(self, n: int) -> None:
        _check(2 * self.beta2(n) - self.gamma0(n), "2*beta2 = gamma0", n)
        _check(2 * self.beta0(n) + self.beta1(n) + self.beta2(n) - 1,
               "2*beta0 + beta1 + beta2 = 1", n)


def default_alpha_sequences() -> AlphaSequences:
    """alpha0(n) = (n-1)/(2n), alpha1(n) = 1/n: the n-dependent positive pair
    used throughout the bundled error tables; alpha0 -> 1/2."""
    return AlphaSequences(
        alpha0=lambda n: Fraction(n - 1, 2 * n),
        alpha1=lambda n: Fraction(1, n),
        limit0=0.5,
    )


def classical_alpha_sequences() -> AlphaSequences:
    """alpha0 = 1, alpha1 = -1 collapses u1 to the classical operator."""
    return AlphaSequences(alpha0=lambda n: 1, alpha1=lambda n: -1, limit0=1.0)


def tilde2_sequences() -> BetaGammaSequences:
    return BetaGammaSequences(
        beta0=lambda n: 1,
        beta1=lambda n: -n - 1,
        beta2=lambda n: n,
        gamma0=lambda n: 2 * n,
    )


def classical_beta_sequences() -> BetaGammaSequences:
    """beta0 = beta2 = 1, beta1 = -2, gamma0 = 2 collapses general2 to the
    classical operator."""
    return BetaGammaSequences(
        beta0=lambda n: 1, beta1=lambda n: -2, beta2=lambda n: 1, gamma0=lambda n: 2
    )


def tilde3_coefficients(n: int):
    """The fixed third-order coefficient table: quartic beta/gamma rows and
    delta0, as exact rationals.  beta(1) = gamma(1) = 0 by construction."""
    beta = (
        Fraction(1),
        Fraction(-4) - Fraction(4 * n, 3),
        Fraction(5) + Fraction(10 * n, 3) + Fraction(n * n, 2),
        Fraction(-(n * n) - 2 * n - 2),
        Fraction(n * n, 2),
    )
    gamma = (
        Fraction(0),
        Fraction(4) + Fraction(7 * n, 3),
        Fraction(-19 * n, 3) - 2 * n * n - 8,
        Fraction(4 * n * n + 4 * n + 4),
        Fraction(-2 * n * n),
    )
    delta0 = Fraction(3 * n * n)
    if sum(beta) != 0 or sum(gamma) != 0:
        raise ConstraintError(f"third-order table broken at n = {n}")
    return beta, gamma, delta0


@dataclass(frozen=True)
class OperatorSpec:
    """One operator instance: family tag, degree, and its sequences."""

    family: str
    n: int
    alpha: Optional[AlphaSequences] = None
    beta_gamma: Optional[BetaGammaSequences] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        n_min = 5 if self.family == "tilde3" else 2
        if self.n < n_min:
            raise ConstraintError(f"{self.family} needs n >= {n_min}, got {self.n}")
        if self.family == "u1":
            if self.alpha is None:
                raise ValueError("u1 requires alpha sequences")
            self.alpha.validate(self.n)
        elif self.family in ("general2", "tilde2"):
            if self.beta_gamma is None:
                raise ValueError(f"{self.family} requires beta/gamma sequences")
            self.beta_gamma.validate(self.n)
        elif self.family == "tilde3":
            tilde3_coefficients(self.n)


def classical_genuine(n: int) -> OperatorSpec:
    return OperatorSpec("classical", n)


def modified1(n: int, alpha: AlphaSequences) -> OperatorSpec:
    return OperatorSpec("u1", n, alpha=alpha)


def general2(n: int, sequences: BetaGammaSequences) -> OperatorSpec:
    return OperatorSpec("general2", n, beta_gamma=sequences)


def tilde2(n: int) -> OperatorSpec:
    return OperatorSpec("tilde2", n, beta_gamma=tilde2_sequences())


def tilde3(n: int) -> OperatorSpec:
    return OperatorSpec("tilde3", n)


def is_positive(spec: OperatorSpec) -> bool:
    """Whether the u1 instance is a positive operator at its n (alpha0 >= 0
    and alpha0 + alpha1 >= 0)."""
    if spec.family != "u1":
        raise ValueError(f"positivity classification applies to u1 only, not {spec.family}")
    return spec.alpha.is_positive_at(spec.n)


def blended_weight_u1(spec: OperatorSpec, k: int, x: float) -> float:
    """The bracketed weight of the k-th integral term of u1:
    a(x) p_{n-1,k}(x) + a(1-x) p_{n-1,k-1}(x)."""
    if spec.family != "u1":
        raise ValueError("blended weights are defined for the u1 family")
    n = spec.n
    if not 1 <= k <= n - 1:
        raise IndexError(f"k = {k} outside 1..{n - 1}")
    a0 = float(spec.alpha.alpha0(n))
    a1 = float(spec.alpha.alpha1(n))
    row = backend.bernstein_rows(n - 1, np.array([float(x)]))[0]
    return (a1 * x + a0) * row[k] + (a1 * (1.0 - x) + a0) * row[k - 1]


# ---------------------------------------------------------------------------
# integral vectors I_k = integral p_{n-2,k-1} f, k = 1..n-1
# ---------------------------------------------------------------------------

def _poly_integral_vector(m: int, coeffs) -> np.ndarray:
    # I[j] = integral p_{m,j} * f for polynomial f, by the closed form
    # integral p_{m,j} t^s = (1/(m+1)) * prod_{i<=s} (j+i)/(m+1+i)
    js = np.arange(m + 1, dtype=float)
    term = np.full(m + 1, 1.0 / (m + 1))
    acc = float(coeffs[0]) * term.copy()
    for s in range(1, len(coeffs)):
        term *= (js + s) / (m + 1 + s)
        acc += float(coeffs[s]) * term
    return acc


@lru_cache(maxsize=128)
def _integral_vector_cached(n: int, f: TestFunction, backend_name: str) -> np.ndarray:
    m = n - 2
    if f.is_polynomial:
        out = _poly_integral_vector(m, f.poly_coeffs)
    else:
        out = integrate_all_against_basis(make_plan(m, f), m, f)
    out.flags.writeable = False
    return out


def _integral_vector(n: int, f: TestFunction) -> np.ndarray:
    return _integral_vector_cached(n, f, backend.backend_name())


# ---------------------------------------------------------------------------
# float path
# ---------------------------------------------------------------------------

def _f_ends(f: TestFunction) -> Tuple[float, float]:
    if f.is_polynomial:
        return float(f.poly_coeffs[0]), float(sum(f.poly_coeffs))
    return float(f(0.0)), float(f(1.0))


def _weights_grid(spec: OperatorSpec, xs: np.ndarray):
    """Blend weights w[i, k-1] for k = 1..n-1 plus boundary factors."""
    n = spec.n
    if spec.family == "classical":
        rows = backend.bernstein_rows(n, xs)
        return rows[:, 1:n], rows[:, 0], rows[:, n]
    if spec.family == "u1":
        a0 = float(spec.alpha.alpha0(n))
        a1 = float(spec.alpha.alpha1(n))
        rows = backend.bernstein_rows(n - 1, xs)
        ax = (a1 * xs + a0)[:, None]
        axr = (a1 * (1.0 - xs) + a0)[:, None]
        w = ax * rows[:, 1:n] + axr * rows[:, 0 : n - 1]
        return w, ax[:, 0] * rows[:, 0], axr[:, 0] * rows[:, n - 1]
    if spec.family in ("general2", "tilde2"):
        sq = spec.beta_gamma
        b0, b1, b2 = (float(sq.beta0(n)), float(sq.beta1(n)), float(sq.beta2(n)))
        g0 = float(sq.gamma0(n))
        bx = (b2 * xs + b1) * xs + b0
        bxr = (b2 * (1.0 - xs) + b1) * (1.0 - xs) + b0
        gx = g0 * xs * (1.0 - xs)
        rows = backend.bernstein_rows(n - 2, xs)
        pad = np.zeros((xs.shape[0], n + 1))
        pad[:, 1:n] = rows  # pad[:, j+1] = p_{n-2,j}
        k = np.arange(1, n)
        w = bx[:, None] * pad[:, k + 1] + gx[:, None] * pad[:, k] + bxr[:, None] * pad[:, k - 1]
        return w, bx * rows[:, 0], bxr * rows[:, n - 2]
    # tilde3
    beta, gamma, delta0 = tilde3_coefficients(n)
    bq = [float(c) for c in beta]
    gq = [float(c) for c in gamma]
    d0 = float(delta0)

    def quartic(c, y):
        return (((c[4] * y + c[3]) * y + c[2]) * y + c[1]) * y + c[0]

    bx, bxr = quartic(bq, xs), quartic(bq, 1.0 - xs)
    gx, gxr = quartic(gq, xs), quartic(gq, 1.0 - xs)
    dx = d0 * (xs * (1.0 - xs)) ** 2
    rows = backend.bernstein_rows(n - 4, xs)
    pad = np.zeros((xs.shape[0], n + 3))
    pad[:, 3 : n] = rows  # pad[:, j+3] = p_{n-4,j}; zero outside 0..n-4
    k = np.arange(1, n)
    w = (
        bx[:, None] * pad[:, k + 3]
        + gx[:, None] * pad[:, k + 2]
        + dx[:, None] * pad[:, k + 1]
        + gxr[:, None] * pad[:, k]
        + bxr[:, None] * pad[:, k - 1]
    )
    return w, bx * rows[:, 0], bxr * rows[:, n - 4]


def apply_grid(spec: OperatorSpec, f: TestFunction, xs) -> np.ndarray:
    """Operator values at every grid point (vectorized float path)."""
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < 0.0) or np.any(xs > 1.0):
        raise ValueError("grid points must lie in [0, 1]")
    integrals = _integral_vector(spec.n, f)
    w, left, right = _weights_grid(spec, xs)
    f0, f1 = _f_ends(f)
    return left * f0 + right * f1 + (spec.n - 1) * (w @ integrals)


def apply(spec: OperatorSpec, f: TestFunction, x: float) -> float:
    """Operator value at one point."""
    return float(apply_grid(spec, f, np.array([float(x)]))[0])


# ---------------------------------------------------------------------------
# exact rational path
# ---------------------------------------------------------------------------

def _as_fraction(v, what):
    if isinstance(v, Rational):
        return Fraction(v)
    raise TypeError(f"{what} must be rational on the exact path, got {type(v).__name__}")


def _weights_exact(spec: OperatorSpec, x: Fraction):
    n = spec.n
    p = eval_basis_exact
    if spec.family == "classical":
        return ([p(n, k, x) for k in range(1, n)], (1 - x) ** n, x**n)
    if spec.family == "u1":
        a0 = _as_fraction(spec.alpha.alpha0(n), "alpha0(n)")
        a1 = _as_fraction(spec.alpha.alpha1(n), "alpha1(n)")
        ax, axr = a1 * x + a0, a1 * (1 - x) + a0
        w = [ax * p(n - 1, k, x) + axr * p(n - 1, k - 1, x) for k in range(1, n)]
        return (w, ax * (1 - x) ** (n - 1), axr * x ** (n - 1))
    if spec.family in ("general2", "tilde2"):
        sq = spec.beta_gamma
        b0 = _as_fraction(sq.beta0(n), "beta0(n)")
        b1 = _as_fraction(sq.beta1(n), "beta1(n)")
        b2 = _as_fraction(sq.beta2(n), "beta2(n)")
        g0 = _as_fraction(sq.gamma0(n), "gamma0(n)")
        B = lambda y: (b2 * y + b1) * y + b0
        G = lambda y: g0 * y * (1 - y)
        w = [
            B(x) * p(n - 2, k, x) + G(x) * p(n - 2, k - 1, x) + B(1 - x) * p(n - 2, k - 2, x)
            for k in range(1, n)
        ]
        return (w, B(x) * (1 - x) ** (n - 2), B(1 - x) * x ** (n - 2))
    beta, gamma, delta0 = tilde3_coefficients(n)

    def quartic(c, y):
        return (((c[4] * y + c[3]) * y + c[2]) * y + c[1]) * y + c[0]

    B = lambda y: quartic(beta, y)
    G = lambda y: quartic(gamma, y)
    D = lambda y: delta0 * (y * (1 - y)) ** 2
    w = [
        B(x) * p(n - 4, k, x)
        + G(x) * p(n - 4, k - 1, x)
        + D(x) * p(n - 4, k - 2, x)
        + G(1 - x) * p(n - 4, k - 3, x)
        + B(1 - x) * p(n - 4, k - 4, x)
        for k in range(1, n)
    ]
    return (w, B(x) * (1 - x) ** (n - 4), B(1 - x) * x ** (n - 4))


def apply_exact(spec: OperatorSpec, f: TestFunction, x) -> Fraction:
    """Exact rational operator value; f must carry rational coefficients.

    This is the oracle the moment lemmas are verified against.
    """
    if not f.is_polynomial:
        raise ValueError(f"{f.name} has no rational-polynomial representation")
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} outside [0, 1]")
    n = spec.n
    coeffs = f.poly_coeffs
    ints = [
        sum((c * basis_monomial_integral(n - 2, k - 1, s) for s, c in enumerate(coeffs)),
            Fraction(0))
        for k in range(1, n)
    ]
    w, left, right = _weights_exact(spec, x)
    f0, f1 = coeffs[0], sum(coeffs)
    total = left * f0 + right * f1
    total += (n - 1) * sum((wk * ik for wk, ik in zip(w, ints)), Fraction(0))
    return total


def centered_polynomial(k: int, x) -> TestFunction:
    """(t - x)^k expanded as a rational polynomial in t."""
    x = Fraction(x)
    coeffs = [math.comb(k, j) * (-x) ** (k - j) for j in range(k + 1)]
    return polynomial(coeffs, name=f"(t-{x})^{k}")
