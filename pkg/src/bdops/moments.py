"""Closed-form moments and central moments, paired with the exact oracle.

Every closed form below was checked in exact rational arithmetic against
``operators.apply_exact``; ``verify_lemma`` re-runs that comparison on
demand and reports the gaps.  The type-generic arithmetic keeps one
implementation for both paths: Fractions in, Fraction out; floats in,
float out.

The fourth-and-higher central moments of the second- and third-order
variants only have leading terms: those functions return the leading term,
and the remainder is checked by scaling (``remainder_scaling``).  Orders
7..10 of the third-order variant have no closed form at all and are
exposed oracle-only (``central_moment_oracle`` plus ``decay_slope``).
"""
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .functions import monomial
from .operators import (
    AlphaSequences,
    OperatorSpec,
    apply_exact,
    centered_polynomial,
    modified1,
    tilde2,
    tilde3,
)

#: closed form vs oracle gap below which a float-path report is consistent
CONSISTENT_TOL = 1e-11


# ---------------------------------------------------------------------------
# closed forms (type-generic in x and alpha0)
# ---------------------------------------------------------------------------

def moment_u1_closed(n: int, alpha0, k: int, x):
    """Moments of the first-order variant applied to e_k, k <= 2."""
    if n < 2:
        raise ValueError("n >= 2 required")
    if k == 0:
        return 1 + 0 * x
    if k == 1:
        return (x * n + (1 - 2 * x) * (1 - alpha0)) / n
    if k == 2:
        return (
            x * x * n * n
            + (4 * alpha0 * x - 2 * alpha0 - 5 * x + 4) * x * n
            + 2 * (1 - x) * (1 - 2 * x) * (1 - alpha0)
        ) / (n * (n + 1))
    raise ValueError(f"no closed form for moment order {k}")


def central_moment_u1_closed(n: int, alpha0, k: int, x):
    """Central moments of the first-order variant, orders 1, 2 and 4."""
    if n < 2:
        raise ValueError("n >= 2 required")
    if k == 1:
        return (1 - 2 * x) * (1 - alpha0) / n
    if k == 2:
        return 2 * (x * (1 - x) * n + (2 * x - 1) ** 2 * (1 - alpha0)) / (n * (n + 1))
    if k == 4:
        return (
            12
            * (
                x * x * (1 - x) ** 2 * n * n
                - x * (1 - x) * n * (4 * alpha0 * (1 - 2 * x) ** 2 + 23 * x * (1 - x) - 6)
                + 2 * (1 - 2 * x) ** 4 * (1 - alpha0)
            )
            / (n * (n + 1) * (n + 2) * (n + 3))
        )
    raise ValueError(f"no closed form for central moment order {k}")


def moment_tilde2_closed(n: int, k: int, x):
    """Moments of the second-order variant applied to e_k, k <= 2."""
    if n < 2:
        raise ValueError("n >= 2 required")
    if k == 0:
        return 1 + 0 * x
    if k == 1:
        return x + 0 * x
    if k == 2:
        return x * x + 2 * x * (1 - x) / (n * (n + 1))
    raise ValueError(f"no closed form for moment order {k}")


def central_moment_tilde2_closed(n: int, k: int, x):
    """Central moments of the second-order variant.

    Orders 2 and 3 are exact; orders 4, 5, 6 return the leading term only,
    with remainders O(n^-3), O(n^-4), O(n^-4).
    """
    if n < 2:
        raise ValueError("n >= 2 required")
    if k == 2:
        return 2 * x * (1 - x) / (n * (n + 1))
    if k == 3:
        return -6 * x * (1 - x) * (1 - 2 * x) * (n - 2) / (n * (n + 1) * (n + 2))
    if k == 4:
        return -12 * x * x * (1 - x) ** 2 * n / ((n + 1) * (n + 2) * (n + 3))
    if k == 5:
        return (
            240 * x * x * (1 - x) ** 2 * (2 * x - 1) * n
            / ((n + 1) * (n + 2) * (n + 3) * (n + 4))
        )
    if k == 6:
        return (
            -240 * x**3 * (1 - x) ** 3 * n * n
            / ((n + 1) * (n + 2) * (n + 3) * (n + 4) * (n + 5))
        )
    raise ValueError(f"no closed form for central moment order {k}")


#: orders of tilde2 central moments whose closed form is exact
TILDE2_EXACT_ORDERS = (2, 3)


def central_moment_tilde3_closed(n: int, k: int, x):
    """Central moments of the third-order variant.

    Orders 1..3 vanish identically.  Orders 4, 5, 6 return the leading term
    with O(n^-4) remainders; the denominators are the rising products
    (n+1)...(n+j).  Orders 7..10 have no closed form (oracle only).
    """
    if n < 5:
        raise ValueError("n >= 5 required")
    if k in (1, 2, 3):
        return 0 * x
    if k == 4:
        return 4 * x * (1 - x) * (39 * x * x - 39 * x + 10) / ((n + 1) * (n + 2) * (n + 3))
    if k == 5:
        return (
            120 * (1 - 2 * x) * x * x * (1 - x) ** 2 * n
            / ((n + 1) * (n + 2) * (n + 3) * (n + 4))
        )
    if k == 6:
        return (
            120 * x**3 * (1 - x) ** 3 * n * n
            / ((n + 1) * (n + 2) * (n + 3) * (n + 4) * (n + 5))
        )
    raise ValueError(f"no closed form for central moment order {k}")


#: orders of tilde3 central moments whose closed form is exact
TILDE3_EXACT_ORDERS = (1, 2, 3)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def moment_oracle(spec: OperatorSpec, k: int, x) -> Fraction:
    """Exact operator moment: the operator applied to e_k at rational x."""
    return apply_exact(spec, monomial(k), Fraction(x))


def central_moment_oracle(spec: OperatorSpec, k: int, x) -> Fraction:
    """Exact central moment: the operator applied to (t - x)^k at rational x."""
    x = Fraction(x)
    return apply_exact(spec, centered_polynomial(k, x), x)


@dataclass(frozen=True)
class MomentReport:
    """Closed form against oracle at one (n, x)."""

    family: str
    n: int
    x: object
    order: int
    central: bool
    closed_form: object
    oracle: object

    @property
    def abs_gap(self):
        return abs(self.closed_form - self.oracle)

    @property
    def consistent(self) -> bool:
        if isinstance(self.abs_gap, Rational):
            return self.abs_gap == 0
        return self.abs_gap <= CONSISTENT_TOL


_LEMMAS = {
    # lemma id -> (family, central?, orders with exact closed forms)
    "u1-moments": ("u1", False, (0, 1, 2)),
    "u1-central": ("u1", True, (1, 2, 4)),
    "tilde2-moments": ("tilde2", False, (0, 1, 2)),
    "tilde2-central": ("tilde2", True, TILDE2_EXACT_ORDERS),
    "tilde3-central": ("tilde3", True, TILDE3_EXACT_ORDERS),
}


def _closed_form(lemma: str, n: int, k: int, x, alpha0):
    if lemma == "u1-moments":
        return moment_u1_closed(n, alpha0, k, x)
    if lemma == "u1-central":
        return central_moment_u1_closed(n, alpha0, k, x)
    if lemma == "tilde2-moments":
        return moment_tilde2_closed(n, k, x)
    if lemma == "tilde2-central":
        return central_moment_tilde2_closed(n, k, x)
    if lemma == "tilde3-central":
        return central_moment_tilde3_closed(n, k, x)
    raise ValueError(f"unknown lemma {lemma!r}")


def verify_lemma(lemma: str, n_values: Sequence[int], x_grid, alpha0=None) -> list:
    """Exact closed-form vs oracle comparison over a (n, x) grid.

    Returns one MomentReport per (n, x, order); every report from the exact
    lemmas should be consistent with gap exactly 0.
    """
    if lemma not in _LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}; choose from {sorted(_LEMMAS)}")
    family, central, orders = _LEMMAS[lemma]
    reports = []
    for n in n_values:
        if family == "u1":
            a0 = Fraction(alpha0) if alpha0 is not None else Fraction(n - 1, 2 * n)
            alpha = AlphaSequences(alpha0=lambda _n, v=a0: v,
                                   alpha1=lambda _n, v=a0: 1 - 2 * v)
            spec = modified1(n, alpha)
        elif family == "tilde2":
            a0, spec = None, tilde2(n)
        else:
            a0, spec = None, tilde3(n)
        for x in x_grid:
            xf = Fraction(x)
            for k in orders:
                closed = _closed_form(lemma, n, k, xf, a0)
                oracle = (central_moment_oracle(spec, k, xf) if central
                          else moment_oracle(spec, k, xf))
                reports.append(MomentReport(family, n, xf, k, central, closed, oracle))
    return reports


# ---------------------------------------------------------------------------
# asymptotic remainder helpers
# ---------------------------------------------------------------------------

def remainder_scaling(family: str, k: int, x, n_values: Sequence[int],
                      exponent: int) -> list:
    """n^exponent * |oracle - leading term| over n_values.

    Bounded output (max/min ratio staying small) confirms the stated
    remainder order of the leading-term central moments.
    """
    x = Fraction(x)
    out = []
    for n in n_values:
        if family == "tilde2":
            spec, lead = tilde2(n), central_moment_tilde2_closed(n, k, x)
        elif family == "tilde3":
            spec, lead = tilde3(n), central_moment_tilde3_closed(n, k, x)
        else:
            raise ValueError("remainder scaling applies to tilde2/tilde3")
        gap = abs(central_moment_oracle(spec, k, x) - Fraction(lead))
        out.append(float(n**exponent * gap))
    return out


def decay_slope(family: str, k: int, x, n_values: Sequence[int]) -> float:
    """Log-log slope of |oracle central moment| over n_values (for the
    orders that only carry an O-bound and no closed form)."""
    make = {"tilde2": tilde2, "tilde3": tilde3}[family]
    x = Fraction(x)
    vals = [abs(central_moment_oracle(make(n), k, x)) for n in n_values]
    if any(v == 0 for v in vals):
        raise ValueError("central moment vanishes on this grid; slope undefined")
    return float(np.polyfit(np.log(n_values), np.log([float(v) for v in vals]), 1)[0])
