"""Bernstein fundamental polynomials p_{n,k}(x) = C(n,k) x^k (1-x)^(n-k).

Three evaluation paths with different contracts:

* ``eval_basis``        - float, correctly rounded (the float argument is a
                          dyadic rational, so the product can be formed
                          exactly and rounded once),
* ``eval_basis_exact``  - Fraction in, Fraction out, exact,
* ``backend.bernstein_rows`` - bulk rows for the operator kernels.

Out-of-range k returns 0 by convention; the blended operator sums index
p_{m,k-j} below 0 and above m at the boundary k and rely on it.
"""
import math
from fractions import Fraction

import numpy as np

from . import backend


def eval_basis(n: int, k: int, x: float) -> float:
    """Evaluate p_{n,k}(x) in double precision.

    The result is the exact value of C(n,k) * x^k * (1-x)^(n-k) at the
    binary64 number x, rounded once.  Returns 0.0 for k outside 0..n.
    Raises ValueError if x is outside [0, 1].
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x = {x} outside [0, 1]")
    if k < 0 or k > n:
        return 0.0
    if x == 0.0:
        return 1.0 if k == 0 else 0.0
    if x == 1.0:
        return 1.0 if k == n else 0.0
    # float -> exact dyadic rational: x = xn / 2**xd
    xn, xd = float(x).as_integer_ratio()
    num = math.comb(n, k) * xn**k * (xd - xn) ** (n - k)
    return float(Fraction(num, xd**n))


def eval_basis_exact(n: int, k: int, x: Fraction) -> Fraction:
    """Exact rational value of p_{n,k}(x); satisfies the degree recurrence
    p_{n,k} = (1-x) p_{n-1,k} + x p_{n-1,k-1} identically."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} outside [0, 1]")
    if k < 0 or k > n:
        return Fraction(0)
    return math.comb(n, k) * x**k * (1 - x) ** (n - k)


def basis_monomial_integral(m: int, j: int, s: int) -> Fraction:
    """Exact integral of p_{m,j}(t) * t^s over [0, 1].

    Beta-function closed form: C(m,j) (j+s)! (m-j)! / (m+s+1)!.
    """
    if not 0 <= j <= m:
        raise ValueError(f"index j = {j} outside 0..{m}")
    if s < 0:
        raise ValueError("monomial power must be nonnegative")
    return Fraction(
        math.comb(m, j) * math.factorial(j + s) * math.factorial(m - j),
        math.factorial(m + s + 1),
    )


def basis_row(m: int, x: float) -> np.ndarray:
    """All basis values of degree m at one point: row[j] = p_{m,j}(x)."""
    return backend.bernstein_rows(m, np.array([float(x)]))[0]


def basis_rows(m: int, xs) -> np.ndarray:
    """Basis values of degree m at many points: rows[i, j] = p_{m,j}(xs[i])."""
    return backend.bernstein_rows(m, np.asarray(xs, dtype=float))
