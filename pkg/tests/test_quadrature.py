import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdops.basis import basis_monomial_integral
from bdops.functions import G1, G2, G3, TestFunction, monomial, polynomial
from bdops.quadrature import integrate_against_basis, make_plan


def simpson_oracle(h, panels=2**20):
    """Brute-force refinement oracle on [0, 1]."""
    t = np.linspace(0.0, 1.0, panels + 1)
    v = h(t)
    return float((v[0] + v[-1] + 4 * v[1:-1:2].sum() + 2 * v[2:-1:2].sum()) * (1 / (3 * panels)))


def p83(t):
    return math.comb(8, 3) * t**3 * (1 - t) ** 5


class TestMakePlan:
    def test_smooth_degree8_single_panel(self):
        plan = make_plan(8, G1)
        assert plan.breakpoints == ()
        assert len(plan.nodes) >= 36
        assert plan.nodes_per_panel == 64

    def test_kinked_function_splits(self):
        plan = make_plan(8, G2)
        assert plan.breakpoints == (0.25,)
        assert len(plan.nodes) == 2 * plan.nodes_per_panel
        # nodes strictly inside the two panels
        assert not np.any(np.isclose(plan.nodes, 0.25, atol=1e-12))

    def test_weights_integrate_constants(self):
        plan = make_plan(0, monomial(0))
        assert abs(float(np.sum(plan.weights)) - 1.0) <= 1e-15

    def test_node_count_grows_with_degree(self):
        assert make_plan(150, G1).nodes_per_panel == 128
        assert make_plan(254, G3).nodes_per_panel == (254 + 64) // 2 + 1

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            make_plan(-1, G1)

    def test_plan_immutable(self):
        plan = make_plan(8, G1)
        with pytest.raises(ValueError):
            plan.nodes[0] = 0.5


class TestIntegrateAgainstBasis:
    def test_constant_function(self):
        plan = make_plan(8, monomial(0))
        assert integrate_against_basis(plan, 8, 3, monomial(0)) == pytest.approx(
            1.0 / 9.0, abs=1e-15
        )

    def test_linear_function_matches_exact(self):
        plan = make_plan(8, monomial(1))
        expected = float(basis_monomial_integral(8, 3, 1))
        assert integrate_against_basis(plan, 8, 3, monomial(1)) == pytest.approx(
            expected, abs=1e-16
        )

    def test_oscillatory_vs_refinement_oracle(self):
        plan = make_plan(8, G1)
        got = integrate_against_basis(plan, 8, 3, G1)
        ref = simpson_oracle(lambda t: p83(t) * G1(t))
        assert got == pytest.approx(ref, abs=1e-12)

    def test_kinked_vs_refinement_oracle(self):
        plan = make_plan(8, G2)
        got = integrate_against_basis(plan, 8, 3, G2)
        # split the brute-force rule at the kink as well
        t1 = np.linspace(0.0, 0.25, 2**18 + 1)
        t2 = np.linspace(0.25, 1.0, 2**18 + 1)

        def simpson_on(t):
            v = p83(t) * G2(t)
            h = t[1] - t[0]
            return (v[0] + v[-1] + 4 * v[1:-1:2].sum() + 2 * v[2:-1:2].sum()) * h / 3

        ref = float(simpson_on(t1) + simpson_on(t2))
        assert got == pytest.approx(ref, abs=1e-12)

    def test_index_out_of_range(self):
        plan = make_plan(8, G1)
        with pytest.raises(ValueError):
            integrate_against_basis(plan, 8, 9, G1)

    @given(
        m=st.integers(0, 12),
        data=st.data(),
        coeffs=st.lists(st.fractions(-3, 3), min_size=1, max_size=13),
    )
    @settings(max_examples=40, deadline=None)
    def test_polynomial_exactness_of_quadrature(self, m, data, coeffs):
        # force the quadrature path by hiding the coefficients
        j = data.draw(st.integers(0, m))
        poly = polynomial(coeffs)
        opaque = TestFunction(name="opaque", fn=poly.fn, poly_resolution=len(coeffs))
        plan = make_plan(m, opaque)
        got = integrate_against_basis(plan, m, j, opaque)
        exact = sum(
            (c * basis_monomial_integral(m, j, s) for s, c in enumerate(poly.poly_coeffs)),
            F(0),
        )
        if exact != 0:
            assert abs(got - float(exact)) <= 1e-13 * abs(float(exact)) + 1e-15
        else:
            assert abs(got) <= 1e-15

    @pytest.mark.parametrize("f", [G1, G2, G3], ids=lambda f: f.name)
    def test_refinement_stability(self, f):
        # doubling the node count moves the integrals by <= 1e-12
        for m, j in [(8, 3), (18, 11)]:
            base = make_plan(m, f)
            fine = make_plan(m, f, nodes_per_panel=2 * base.nodes_per_panel)
            a = integrate_against_basis(base, m, j, f)
            b = integrate_against_basis(fine, m, j, f)
            assert abs(a - b) <= 1e-12
