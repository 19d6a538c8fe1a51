"""Composite Gauss-Legendre integration of f against Bernstein basis rows.

Nodes and weights come from scipy's Golub-Welsch implementation
(``scipy.special.roots_legendre``), mapped panel-by-panel onto [0, 1] split
at the integrand's declared kinks.  Polynomials with rational coefficients
never touch the quadrature: they are routed to the exact Beta-function
integrals in ``basis``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.special import roots_legendre

from . import backend
from .basis import basis_monomial_integral, eval_basis
from .functions import TestFunction

#: nodes per smooth panel for moderate degrees; doubled past degree 100
DEFAULT_NODES = 64


@dataclass(frozen=True)
class QuadraturePlan:
    """Immutable composite rule on [0, 1].

    nodes/weights concatenate the per-panel Gauss rules; breakpoints are the
    interior kink locations the panels were split at.
    """

    nodes: np.ndarray
    weights: np.ndarray
    breakpoints: Tuple[float, ...]
    nodes_per_panel: int

    def __post_init__(self):
        self.nodes.flags.writeable = False
        self.weights.flags.writeable = False
        total = float(np.sum(self.weights))
        if abs(total - 1.0) > 1e-14:
            raise ValueError(f"weights sum to {total!r}, not 1")
        edges = (0.0, *self.breakpoints, 1.0)
        for a, b in zip(edges[:-1], edges[1:]):
            inside = (self.nodes > a) & (self.nodes < b)
            if np.count_nonzero(inside) % self.nodes_per_panel:
                raise ValueError("nodes do not fill panels evenly")
        if np.any(self.nodes <= 0.0) or np.any(self.nodes >= 1.0):
            raise ValueError("nodes must lie strictly inside (0, 1)")


@lru_cache(maxsize=64)
def _gauss_unit(npts):
    x, w = roots_legendre(npts)
    return 0.5 * (x + 1.0), 0.5 * w


def _panel_nodes(max_poly_degree: int, resolution: int) -> int:
    npts = DEFAULT_NODES if max_poly_degree <= 100 else 2 * DEFAULT_NODES
    # keep the rule exact for the basis degree plus the declared
    # polynomial-equivalent resolution of the non-polynomial factor
    return max(npts, (max_poly_degree + resolution) // 2 + 1)


def make_plan(max_poly_degree: int, f_meta: TestFunction,
              nodes_per_panel: int = None) -> QuadraturePlan:
    """Composite plan able to integrate p_{m,j} * f for m <= max_poly_degree.

    One Gauss-Legendre panel per smooth piece of f, split at the declared
    kinks (deterministic, no adaptive subdivision).  nodes_per_panel
    overrides the degree-derived count (refinement studies).
    """
    if max_poly_degree < 0:
        raise ValueError("max_poly_degree must be nonnegative")
    npts = nodes_per_panel or _panel_nodes(max_poly_degree, f_meta.poly_resolution)
    xg, wg = _gauss_unit(npts)
    edges = (0.0, *sorted(f_meta.kinks), 1.0)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        nodes.append(a + (b - a) * xg)
        weights.append((b - a) * wg)
    return QuadraturePlan(
        nodes=np.concatenate(nodes),
        weights=np.concatenate(weights),
        breakpoints=tuple(sorted(f_meta.kinks)),
        nodes_per_panel=npts,
    )


def integrate_against_basis(plan: QuadraturePlan, m: int, j: int, f: TestFunction) -> float:
    """Integral of p_{m,j}(t) f(t) over [0, 1].

    Exact rational evaluation when f is a polynomial with rational
    coefficients, otherwise the plan's composite Gauss rule.
    """
    if not 0 <= j <= m:
        raise ValueError(f"index j = {j} outside 0..{m}")
    if f.is_polynomial:
        total = sum(
            (c * basis_monomial_integral(m, j, s) for s, c in enumerate(f.poly_coeffs)),
            Fraction(0),
        )
        return float(total)
    pvals = np.array([eval_basis(m, j, t) for t in plan.nodes])
    return float(np.dot(plan.weights * pvals, f(plan.nodes)))


def integrate_all_against_basis(plan: QuadraturePlan, m: int, f: TestFunction) -> np.ndarray:
    """Vector of integrals of p_{m,j}(t) f(t) for j = 0..m (quadrature path)."""
    rows = backend.bernstein_rows(m, plan.nodes)  # (Q, m+1)
    return (plan.weights * f(plan.nodes)) @ rows
