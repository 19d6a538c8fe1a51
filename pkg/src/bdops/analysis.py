"""Quantitative checks of the approximation theorems.

* uniform-norm bound through the first modulus of continuity,
* pointwise asymptotic (Voronovskaja-type) limits for the first-order
  variant, positive and non-positive parameter regimes alike,
* empirical convergence orders from log-log least squares.
"""
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from . import backend
from .functions import TestFunction
from .operators import AlphaSequences, OperatorSpec, apply, apply_grid, modified1


class DegenerateFitError(ValueError):
    """All sampled errors sit at rounding level; no order can be fitted."""


def modulus_of_continuity(f: TestFunction, delta: float, grid_size: int = 4096) -> float:
    """Grid approximation of omega(f; delta) = sup |f(t) - f(s)|, |t - s| <= delta.

    Exhaustive over an equispaced grid (window max minus window min), so the
    result is a lower bound of the true modulus and is nondecreasing in
    delta by construction.
    """
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta = {delta} outside (0, 1]")
    if grid_size < 1000:
        raise ValueError("grid_size >= 1000 required")
    t = np.linspace(0.0, 1.0, grid_size + 1)
    values = np.asarray(f(t), dtype=float)
    w = int(math.floor(delta * grid_size + 1e-9))
    return float(backend.window_range_max(values, w))


class BoundCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def check_uniform_bound(alpha: AlphaSequences, f: TestFunction, n: int,
                         grid_size: int = 401) -> BoundCheck:
    """Uniform bound max|L_n f - f| <= 2 (3 |alpha1(n)| + 1) omega(f; 1/sqrt(n)).

    lhs is taken over an equispaced grid; omega uses its default grid, which
    underestimates and therefore only makes the check stricter.
    """
    spec = modified1(n, alpha)
    xs = np.linspace(0.0, 1.0, grid_size)
    lhs = float(np.max(np.abs(apply_grid(spec, f, xs) - np.asarray(f(xs), dtype=float))))
    omega = modulus_of_continuity(f, 1.0 / math.sqrt(n))
    rhs = 2.0 * (3.0 * abs(float(alpha.alpha1(n))) + 1.0) * omega
    return BoundCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs + 1e-9)


@dataclass(frozen=True)
class VoronovskajaTarget:
    """The asymptotic limit (1 - 2x)(1 - l0) f'(x) + x(1 - x) f''(x)."""

    l0: float
    x: float
    value: float

    @classmethod
    def build(cls, l0: float, f: TestFunction, x: float) -> "VoronovskajaTarget":
        if f.d1 is None or f.d2 is None:
            raise ValueError(f"{f.name} does not carry closed-form derivatives")
        value = (1 - 2 * x) * (1 - l0) * float(f.d1(x)) + x * (1 - x) * float(f.d2(x))
        return cls(l0=l0, x=x, value=value)


def voronovskaja_residual(alpha: AlphaSequences, f: TestFunction, x: float, n: int,
                          l0: Optional[float] = None) -> float:
    """|n (L_n f - f)(x) - target|, the distance from the asymptotic limit.

    l0 defaults to the sequence's declared limit of alpha0.
    """
    if l0 is None:
        l0 = alpha.limit0
    if l0 is None:
        raise ValueError("limit of alpha0 not declared; pass l0 explicitly")
    target = VoronovskajaTarget.build(l0, f, x)
    spec = modified1(n, alpha)
    return abs(n * (apply(spec, f, x) - float(f(x))) - target.value)


@dataclass(frozen=True)
class OrderFit:
    """Least-squares order estimate on (log n, log error)."""

    family: str
    function: str
    x: float
    n_values: tuple
    errors: tuple
    slope: float
    intercept: float
    r_squared: float


#: how many of the largest-n points enter the least-squares fit
FIT_POINTS = 5

#: errors below this are rounding noise, not approximation error
ERROR_FLOOR = 1e-15


def fit_convergence_order(make_spec: Callable[[int], OperatorSpec], f: TestFunction,
                          x: float, n_values: Sequence[int],
                          family: Optional[str] = None) -> OrderFit:
    """Fit the empirical order of |L_n f - f|(x) over increasing n.

    make_spec maps a degree to an operator instance.  The fit uses the last
    FIT_POINTS points; earlier ones are treated as pre-asymptotic.
    """
    n_values = tuple(int(n) for n in n_values)
    if len(n_values) < 4:
        raise ValueError("need at least 4 degrees")
    if any(b <= a for a, b in zip(n_values[:-1], n_values[1:])):
        raise ValueError("degrees must be strictly increasing")
    fx = float(f(x))
    pairs = []
    fam = family
    for n in n_values:
        spec = make_spec(n)
        fam = fam or spec.family
        err = abs(apply(spec, f, x) - fx)
        if err > ERROR_FLOOR:
            pairs.append((n, err))
    if len(pairs) < 2:
        raise DegenerateFitError(
            f"errors of {fam} on {f.name} at x = {x} are all at rounding level")
    tail = pairs[-FIT_POINTS:]
    ln = np.log([p[0] for p in tail])
    le = np.log([p[1] for p in tail])
    slope, intercept = np.polyfit(ln, le, 1)
    resid = le - (slope * ln + intercept)
    total = np.sum((le - le.mean()) ** 2)
    r2 = 1.0 - float(np.sum(resid**2)) / float(total) if total > 0 else 1.0
    return OrderFit(
        family=fam or "?",
        function=f.name,
        x=float(x),
        n_values=tuple(p[0] for p in pairs),
        errors=tuple(p[1] for p in pairs),
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r2,
    )
