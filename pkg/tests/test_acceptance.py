"""Acceptance suite: one check per release criterion, one printed line each.

Criteria 1-3 compare recomputed error tables against the published digits at
|delta| <= 5e-7 per cell, and criterion 6 pins log-log slopes at x = 0.3.
Four of those checks FAIL against the published values, and the failures are
intentional: the recomputed numbers are verified here against independent
oracles (two quadrature methods agreeing to 1e-11, exact rational identities,
and an operator identity the published digits themselves violate).  The
failing assertions carry the full per-cell diagnostics.  See README
("Validation status") for the analysis.
"""
import time
from fractions import Fraction as F

import numpy as np
import pytest

from bdops.analysis import (
    check_uniform_bound,
    fit_convergence_order,
    voronovskaja_residual,
    VoronovskajaTarget,
)
from bdops.experiments import (
    _OPERATORS,
    nonpositive_alpha_sequences,
    reproduce_table,
)
from bdops.functions import G1, G2, G3, monomial, polynomial
from bdops.moments import remainder_scaling, verify_lemma
from bdops.operators import (
    apply_exact,
    apply_grid,
    classical_alpha_sequences,
    classical_genuine,
    default_alpha_sequences,
    is_positive,
    modified1,
    tilde2,
    tilde3,
)

X_GRID = (F(0), F(1, 7), F(1, 3), F(1, 2), F(2, 3), F(6, 7), F(1))


def report(criterion, ok, detail=""):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}"
          + (f" - {detail}" if detail else ""))


def table_failures(table):
    return [
        f"x={c.x} {c.column}: computed {c.computed:.10f} vs published "
        f"{c.published_text} (|delta| {c.abs_delta:.2e})"
        for c in table.failed_cells
    ]


# --------------------------------------------------------------------------
# criteria 1-3: published table reproduction
# --------------------------------------------------------------------------

class TestCriterion1Table1:
    def test_cells_match_published(self):
        table = reproduce_table(1)
        flagged = [c for c in table.cells if c.flagged]
        assert len(table.cells) == 44
        assert len(flagged) == 1 and (flagged[0].x, flagged[0].column) == ("0.95", "eps2")
        bad = table_failures(table)
        detail = (f"flagged eps2(0.95) computed {flagged[0].computed:.10f} "
                  f"(leading-zero hypothesis value would be 0.0194510818); "
                  f"{len(bad)} unflagged cells beyond 5e-7")
        report("1 (table 1 cells)", not bad, detail)
        assert not bad, (
            "Table 1: recomputed cells (verified against two independent "
            "50-digit quadratures; see README) deviate from the published "
            "digits beyond 5e-7:\n  " + "\n  ".join(bad)
        )

    def test_runtime_under_2s(self):
        t0 = time.perf_counter()
        reproduce_table(1)
        dt = time.perf_counter() - t0
        report("1 (table 1 runtime)", dt <= 2.0, f"{dt:.3f}s")
        assert dt <= 2.0


class TestCriterion2Table2:
    def test_cells_match_published(self):
        table = reproduce_table(2)
        assert len(table.cells) == 36
        flagged = [c for c in table.cells if c.flagged]
        assert [(c.x, c.column) for c in flagged] == [("0.90", "eps3")]
        bad = table_failures(table)
        detail = (f"kink-split quadrature at t=1/4; flagged eps3(0.90) computed "
                  f"{flagged[0].computed:.10f}; {len(bad)} unflagged cells beyond 5e-7")
        report("2 (table 2 cells)", not bad, detail)
        assert not bad, (
            "Table 2: recomputed cells deviate from the published digits "
            "beyond 5e-7:\n  " + "\n  ".join(bad)
        )


class TestCriterion3Tables3to6:
    def test_cells_match_published(self):
        bad = []
        for tid in (3, 4, 5, 6):
            bad += [f"table {tid} {line}" for line in table_failures(reproduce_table(tid))]
        report("3 (tables 3-6 cells)", not bad, f"{len(bad)} cells beyond 5e-7")
        assert not bad, (
            "Tables 3-6: recomputed cells deviate from the published digits "
            "beyond 5e-7:\n  " + "\n  ".join(bad)
        )

    def test_total_runtime_under_10s(self):
        t0 = time.perf_counter()
        for tid in (1, 2, 3, 4, 5, 6):
            reproduce_table(tid)
        dt = time.perf_counter() - t0
        report("3 (six tables runtime)", dt <= 10.0, f"{dt:.3f}s")
        assert dt <= 10.0


# --------------------------------------------------------------------------
# criterion 4: exact lemma oracle suite
# --------------------------------------------------------------------------

class TestCriterion4LemmaOracles:
    def test_exact_gaps_are_zero(self):
        t0 = time.perf_counter()
        gaps = 0
        total = 0
        for alpha0 in (F(0), F(1, 3), F(9, 20), F(1)):
            for lemma in ("u1-moments", "u1-central"):
                reports = verify_lemma(lemma, range(2, 21), X_GRID, alpha0=alpha0)
                total += len(reports)
                gaps += sum(r.abs_gap != 0 for r in reports)
        for lemma in ("tilde2-moments", "tilde2-central"):
            reports = verify_lemma(lemma, range(2, 21), X_GRID)
            total += len(reports)
            gaps += sum(r.abs_gap != 0 for r in reports)
        reports = verify_lemma("tilde3-central", range(5, 17), X_GRID)
        total += len(reports)
        gaps += sum(r.abs_gap != 0 for r in reports)
        dt = time.perf_counter() - t0
        ok = gaps == 0 and dt <= 30.0
        report("4 (lemma oracle suite)", ok,
               f"{total} exact comparisons, {gaps} nonzero gaps, {dt:.2f}s")
        assert gaps == 0
        assert dt <= 30.0


# --------------------------------------------------------------------------
# criterion 5: asymptotic remainders and the denominator reading
# --------------------------------------------------------------------------

class TestCriterion5Remainders:
    def test_remainder_scaling_bounded(self):
        ns = (8, 16, 32, 64)
        details = []
        ok = True
        for x in (F(1, 3), F(2, 5)):
            v2 = remainder_scaling("tilde2", 4, x, ns, exponent=3)
            v3 = remainder_scaling("tilde3", 4, x, ns, exponent=4)
            r2, r3 = max(v2) / min(v2), max(v3) / min(v3)
            ok &= r2 < 10 and r3 < 10
            details.append(f"x={x}: mu4~2 ratio {r2:.2f}, mu4~3 ratio {r3:.2f}")
        # the additive (sum) reading of the third-order denominators fails
        # the same bound by orders of magnitude
        x = F(1, 3)
        from bdops.moments import central_moment_oracle

        add = []
        for n in ns:
            lead = 4 * x * (1 - x) * (39 * x * x - 39 * x + 10) / F(3 * n + 6)
            gap = abs(central_moment_oracle(tilde3(n), 4, x) - lead)
            add.append(float(n**4 * gap))
        r_add = max(add) / min(add)
        details.append(f"additive-reading ratio {r_add:.0f}")
        report("5 (remainder scaling)", ok, "; ".join(details))
        assert ok
        assert r_add > 10  # adjudicates the reading


# --------------------------------------------------------------------------
# criterion 6: convergence orders at x = 0.3
# --------------------------------------------------------------------------

NS_ORDER = (16, 32, 64, 128, 256)


@pytest.fixture(scope="module")
def order_fits():
    t0 = time.perf_counter()
    fits = {
        family: fit_convergence_order(_OPERATORS[family], G3, 0.3, NS_ORDER,
                                      family=family)
        for family in ("u1", "tilde2", "tilde3")
    }
    fits["elapsed"] = time.perf_counter() - t0
    return fits


class TestCriterion6ConvergenceOrders:
    def check(self, fits, family, expected, tol):
        fit = fits[family]
        ok = abs(fit.slope - expected) <= tol
        report(f"6 ({family} order)", ok,
               f"slope {fit.slope:.3f} vs {expected} +/- {tol}; "
               f"errors {['%.3e' % e for e in fit.errors]}")
        assert ok, (
            f"{family}: measured slope {fit.slope:.3f} outside {expected} +/- {tol} "
            f"over n = {NS_ORDER} at x = 0.3 with g3.  The pointwise errors "
            f"{['%.3e' % e for e in fit.errors]} are quadrature-verified "
            f"(refinement-stable to 1e-12); the window is pre-asymptotic at "
            f"this x (see README, Validation status)."
        )

    def test_u1_first_order(self, order_fits):
        self.check(order_fits, "u1", -1.0, 0.2)

    def test_tilde2_second_order(self, order_fits):
        self.check(order_fits, "tilde2", -2.0, 0.25)

    def test_tilde3_third_order(self, order_fits):
        self.check(order_fits, "tilde3", -3.0, 0.35)

    def test_runtime_under_60s(self, order_fits):
        report("6 (order-fit runtime)", order_fits["elapsed"] <= 60.0,
               f"{order_fits['elapsed']:.2f}s")
        assert order_fits["elapsed"] <= 60.0


# --------------------------------------------------------------------------
# criterion 7: modulus-of-continuity bound
# --------------------------------------------------------------------------

class TestCriterion7UniformBound:
    def test_bound_holds_everywhere(self):
        seq = default_alpha_sequences()
        worst = 0.0
        for f in (G1, G2, G3):
            for n in (5, 10, 25, 100):
                res = check_uniform_bound(seq, f, n, grid_size=401)
                worst = max(worst, res.lhs / res.rhs)
                assert res.holds, (f.name, n, res)
        report("7 (uniform bound)", True, f"worst lhs/rhs = {worst:.3f}")


# --------------------------------------------------------------------------
# criterion 8: asymptotic limit for a degree-5 polynomial
# --------------------------------------------------------------------------

QUINTIC = polynomial([1, 1, 0, -2, 0, 1], name="quintic")


class TestCriterion8Voronovskaja:
    @pytest.mark.parametrize(
        "seq,label",
        [
            (default_alpha_sequences(), "positive pair, l0=1/2"),
            (nonpositive_alpha_sequences(), "non-positive pair, l0=0"),
        ],
        ids=["positive", "nonpositive"],
    )
    def test_limit_reached(self, seq, label):
        margins = []
        for x in (0.2, 0.3, 0.7):
            target = VoronovskajaTarget.build(seq.limit0, QUINTIC, x).value
            residuals = [voronovskaja_residual(seq, QUINTIC, x, n)
                         for n in (2**8, 2**10, 2**12)]
            assert residuals[0] > residuals[1] > residuals[2], (label, x, residuals)
            assert residuals[-1] <= 0.05 * abs(target), (label, x, residuals[-1], target)
            margins.append(residuals[-1] / (0.05 * abs(target)))
        report(f"8 (asymptotic limit, {label})", True,
               f"residual/allowance at n=4096: {['%.3f' % m for m in margins]}")

    def test_nonpositive_pair_is_nonpositive(self):
        seq = nonpositive_alpha_sequences()
        assert not is_positive(modified1(64, seq))


# --------------------------------------------------------------------------
# criterion 9: cross-module invariants
# --------------------------------------------------------------------------

class TestCriterion9Invariants:
    GRID = np.linspace(0.0, 1.0, 101)

    def test_invariant_suite(self):
        from bdops.basis import basis_rows

        violations = []

        # partition of unity
        for n in range(0, 51):
            gap = np.abs(basis_rows(n, self.GRID).sum(axis=1) - 1.0).max()
            if gap > 1e-13:
                violations.append(f"partition of unity n={n}: {gap:.2e}")

        # normalization of every family
        e0 = monomial(0)
        for name, make in _OPERATORS.items():
            lo = 5 if name == "tilde3" else 2
            for n in range(lo, 21):
                gap = np.abs(apply_grid(make(n), e0, self.GRID) - 1.0).max()
                if gap > 1e-12:
                    violations.append(f"normalization {name} n={n}: {gap:.2e}")

        # classical reduction of the first-order blend
        for f in (G1, G3):
            gap = np.abs(
                apply_grid(modified1(9, classical_alpha_sequences()), f, self.GRID)
                - apply_grid(classical_genuine(9), f, self.GRID)
            ).max()
            if gap > 1e-12:
                violations.append(f"classical reduction on {f.name}: {gap:.2e}")

        # endpoint interpolation
        for name in ("classical", "tilde2", "tilde3"):
            spec = _OPERATORS[name](8)
            for f in (monomial(0), monomial(2), monomial(4), G1, G3):
                for x, fx in ((0.0, float(f(0.0))), (1.0, float(f(1.0)))):
                    gap = abs(apply_grid(spec, f, [x])[0] - fx)
                    if gap > 1e-12:
                        violations.append(f"endpoint {name} {f.name} x={x}: {gap:.2e}")

        # positivity on nonnegative functions
        spec = modified1(10, default_alpha_sequences())
        assert is_positive(spec)
        for f in (polynomial([F(1, 4), -1, 1]), polynomial([0, 0, F(1, 4), -1, 1])):
            low = apply_grid(spec, f, self.GRID).min()
            if low < -1e-12:
                violations.append(f"positivity {f.name}: min {low:.2e}")

        # linear reproduction
        for name in ("tilde2", "tilde3"):
            spec = _OPERATORS[name](9)
            if apply_exact(spec, monomial(1), F(3, 7)) != F(3, 7):
                violations.append(f"linear reproduction {name} (exact)")
            gap = np.abs(apply_grid(spec, monomial(1), self.GRID) - self.GRID).max()
            if gap > 1e-12:
                violations.append(f"linear reproduction {name}: {gap:.2e}")

        report("9 (invariant suite)", not violations,
               f"{len(violations)} violations")
        assert not violations, violations
