"""Reproduction of the published error tables and figure data series.

The six tables ship embedded at full printed precision (decimal strings).
``reproduce_table`` recomputes every cell through the library and reports
per-cell deviations; two cells with suspect printed digits are flagged
KNOWN-DISCREPANCY and never fail a run (their computed value and deviation
are still reported).  See the README for the measured accuracy of the
reference values themselves.

Figures are emitted as deterministic CSV/JSON data series (no rendering).
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from .analysis import (
    VoronovskajaTarget,
    check_uniform_bound,
    fit_convergence_order,
    voronovskaja_residual,
)
from .functions import G1, G2, G3, from_name, polynomial
from .moments import verify_lemma
from .operators import (
    AlphaSequences,
    ConstraintError,
    apply_grid,
    classical_genuine,
    default_alpha_sequences,
    modified1,
    tilde2,
    tilde3,
)

#: absolute tolerance for published-value comparison; the reference digits
#: themselves are the dominant uncertainty, not this library's quadrature
TABLE_TOL = 5e-7

TABLE_IDS = (1, 2, 3, 4, 5, 6)
FIGURE_IDS = tuple(range(1, 13))


def nonpositive_alpha_sequences() -> AlphaSequences:
    """alpha0(n) = -1/n, alpha1(n) = 1 + 2/n: normalized but not positive
    (alpha0 < 0); exercises the non-positive asymptotic regime, l0 = 0."""
    return AlphaSequences(
        alpha0=lambda n: Fraction(-1, n),
        alpha1=lambda n: 1 + Fraction(2, n),
        limit0=0.0,
    )


def _u1(n):
    return modified1(n, default_alpha_sequences())


_OPERATORS = {
    "classical": classical_genuine,
    "u1": _u1,
    "tilde2": tilde2,
    "tilde3": tilde3,
}

# published cells: {x string: (eps_n, eps1, eps2, eps3)} or per-n columns
_TABLE1 = {
    "0.10": ("0.6945330253", "0.5295762286", "0.4330397338", "0.2812687901"),
    "0.15": ("0.6942110247", "0.5933130652", "0.4833262822", "0.4529855958"),
    "0.25": ("0.1580679909", "0.2097384650", "0.1632564535", "0.1344025490"),
    "0.30": ("0.6879044013", "0.7312808277", "0.6136368403", "0.2177095258"),
    "0.40": ("0.9681814067", "0.9948377556", "0.8683959826", "0.5352250570"),
    "0.50": ("0.0213435310", "0.0213436470", "0.0022170860", "0.0000572989"),
    "0.55": ("0.6243511367", "0.6381381849", "0.5355754034", "0.3459331618"),
    "0.70": ("0.7234749900", "0.7601315856", "0.6172299990", "0.2177088936"),
    "0.75": ("0.1896839607", "0.2308635388", "0.1663414950", "0.1338132004"),
    "0.90": ("0.6796558035", "0.5415051330", "0.4322424640", "0.2822400676"),
    "0.95": ("0.3964880751", "0.1546334112", "0.194510818", "0.0192152324"),
}
_TABLE2 = {
    "0.10": ("0.0864633606", "0.0482073753", "0.0367065261", "0.0067324201"),
    "0.20": ("0.1103333385", "0.0961865298", "0.0594456124", "0.0191120699"),
    "0.25": ("0.0518922812", "0.0436031934", "0.0158446516", "0.0031661470"),
    "0.50": ("0.2575784301", "0.2575784294", "0.2685059808", "0.1312442040"),
    "0.55": ("0.2614871004", "0.2604287058", "0.3049134784", "0.1915072058"),
    "0.65": ("0.1006465455", "0.0976735308", "0.0362205580", "0.0365602345"),
    "0.70": ("0.3587223234", "0.3466837357", "0.1760351064", "0.1049635359"),
    "0.85": ("0.3901466578", "0.2963782143", "0.1888707949", "0.0267144753"),
    "0.90": ("0.1458116388", "0.0029193836", "0.0022766453", "0.1211619468"),
}
_TABLE3 = {
    "0.10": ("0.0684403678", "0.0678031572", "0.0622151561"),
    "0.15": ("0.0499431989", "0.0531270433", "0.0521857868"),
    "0.25": ("0.0578940551", "0.0463235563", "0.0334294267"),
    "0.30": ("0.1212531914", "0.1072975170", "0.0886731506"),
    "0.40": ("0.1969741168", "0.1851488999", "0.1634615511"),
    "0.65": ("0.1391012080", "0.1078116400", "0.0816688494"),
    "0.70": ("0.2391101684", "0.1978330494", "0.1589711006"),
    "0.85": ("0.3328374955", "0.2808786960", "0.2265106612"),
    "0.90": ("0.2644985309", "0.2206728121", "0.1747401754"),
}
_TABLE4 = {
    "0.25": ("0.0759640671", "0.0559388716", "0.0362644403"),
    "0.30": ("0.1371072386", "0.1171805319", "0.0932932589"),
    "0.35": ("0.1844145994", "0.1666950554", "0.1413524766"),
    "0.40": ("0.2057325249", "0.1923019252", "0.1687116616"),
    "0.50": ("0.1448255593", "0.1453442003", "0.1349064978"),
    "0.60": ("0.0366918591", "0.0179868291", "0.0057986703"),
    "0.70": ("0.2402023843", "0.2045318798", "0.1686629702"),
    "0.80": ("0.3245837174", "0.2807124726", "0.2325391597"),
    "0.90": ("0.1835617165", "0.1497215453", "0.1155690815"),
}
_TABLE5 = {
    "0.10": ("0.0764438176", "0.0624790953", "0.0432951373"),
    "0.25": ("0.0345024248", "0.0130565516", "0.0000245123"),
    "0.30": ("0.0990500279", "0.0650077665", "0.0375060681"),
    "0.40": ("0.1914411452", "0.1449016157", "0.0994953904"),
    "0.50": ("0.1740970203", "0.1380269700", "0.0987547084"),
    "0.60": ("0.0439765069", "0.0388439363", "0.0284303826"),
    "0.70": ("0.1215101036", "0.0874936435", "0.0605939578"),
    "0.80": ("0.2110574499", "0.1488955530", "0.0977772009"),
    "0.90": ("0.1561838905", "0.0989074740", "0.0557077924"),
}
_TABLE6 = {
    "0.10": ("0.130304351", "0.060532301", "0.020830446"),
    "0.20": ("0.141691111", "0.080159674", "0.039173543"),
    "0.30": ("0.061291162", "0.037462997", "0.020686153"),
    "0.40": ("0.024416705", "0.017774084", "0.010936011"),
    "0.45": ("0.043687998", "0.031315020", "0.019471529"),
    "0.50": ("0.040509305", "0.029993035", "0.019169082"),
    "0.60": ("0.024027791", "0.011127560", "0.004477202"),
    "0.70": ("0.110487435", "0.062167445", "0.031839458"),
    "0.80": ("0.136082209", "0.064976021", "0.026722598"),
    "0.90": ("0.069748506", "0.012020135", "0.006394035"),
}

# table id -> (test function, published rows, column keys, operator per column)
_TABLE_SETUP = {
    1: (G1, _TABLE1, ("eps_n", "eps1", "eps2", "eps3"),
        {"eps_n": ("classical", 10), "eps1": ("u1", 10),
         "eps2": ("tilde2", 10), "eps3": ("tilde3", 10)}),
    2: (G2, _TABLE2, ("eps_n", "eps1", "eps2", "eps3"),
        {"eps_n": ("classical", 10), "eps1": ("u1", 10),
         "eps2": ("tilde2", 10), "eps3": ("tilde3", 10)}),
    3: (G3, _TABLE3, ("n5", "n7", "n10"),
        {"n5": ("classical", 5), "n7": ("classical", 7), "n10": ("classical", 10)}),
    4: (G3, _TABLE4, ("n5", "n7", "n10"),
        {"n5": ("u1", 5), "n7": ("u1", 7), "n10": ("u1", 10)}),
    5: (G3, _TABLE5, ("n5", "n7", "n10"),
        {"n5": ("tilde2", 5), "n7": ("tilde2", 7), "n10": ("tilde2", 10)}),
    6: (G3, _TABLE6, ("n5", "n7", "n10"),
        {"n5": ("tilde3", 5), "n7": ("tilde3", 7), "n10": ("tilde3", 10)}),
}

#: cells whose printed digits are suspect; reported, never failed
KNOWN_DISCREPANCIES = {
    (1, "0.95", "eps2"): "9 printed digits; a dropped leading zero (0.0194510818) is plausible",
    (2, "0.90", "eps3"): "printed value exceeds eps2 in the same row",
}


@dataclass(frozen=True)
class CellReport:
    x: str
    column: str
    computed: float
    published_text: str
    abs_delta: float
    within_tol: bool
    flagged: bool
    note: str = ""

    @property
    def published(self) -> float:
        return float(self.published_text)

    @property
    def acceptable(self) -> bool:
        return self.within_tol or self.flagged


@dataclass(frozen=True)
class ErrorTable:
    table_id: int
    function: str
    columns: Tuple[str, ...]
    cells: Tuple[CellReport, ...]
    tolerance: float

    @property
    def failed_cells(self) -> Tuple[CellReport, ...]:
        return tuple(c for c in self.cells if not c.acceptable)

    @property
    def ok(self) -> bool:
        return not self.failed_cells


def published_table(table_id: int) -> Dict[str, tuple]:
    if table_id not in _TABLE_SETUP:
        raise ValueError(f"unknown table id {table_id}")
    return dict(_TABLE_SETUP[table_id][1])


def reproduce_table(table_id: int, tolerance: float = TABLE_TOL) -> ErrorTable:
    """Recompute one published table and compare cell by cell."""
    if table_id not in _TABLE_SETUP:
        raise ValueError(f"unknown table id {table_id}")
    f, rows, columns, colspec = _TABLE_SETUP[table_id]
    xs = np.array([float(x) for x in rows])
    fx = np.asarray(f(xs), dtype=float)
    computed: Dict[str, np.ndarray] = {}
    for col in columns:
        family, n = colspec[col]
        computed[col] = np.abs(fx - apply_grid(_OPERATORS[family](n), f, xs))
    cells = []
    for i, (x, published) in enumerate(rows.items()):
        for col, text in zip(columns, published):
            value = float(computed[col][i])
            delta = abs(value - float(text))
            key = (table_id, x, col)
            cells.append(
                CellReport(
                    x=x,
                    column=col,
                    computed=value,
                    published_text=text,
                    abs_delta=delta,
                    within_tol=delta <= tolerance,
                    flagged=key in KNOWN_DISCREPANCIES,
                    note=KNOWN_DISCREPANCIES.get(key, ""),
                )
            )
    return ErrorTable(
        table_id=table_id,
        function=f.name,
        columns=columns,
        cells=tuple(cells),
        tolerance=tolerance,
    )


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FigureSeries:
    figure_id: int
    columns: Tuple[str, ...]
    data: Tuple[Tuple[float, ...], ...]  # column-major, aligned with columns


def _convergence_series(f, specs, labels, grid):
    cols = ["x", f.name] + labels
    series = [grid, np.asarray(f(grid), dtype=float)]
    series += [apply_grid(s, f, grid) for s in specs]
    return cols, series


def _error_series(f, specs, labels, grid):
    fx = np.asarray(f(grid), dtype=float)
    cols = ["x"] + labels
    series = [grid] + [np.abs(fx - apply_grid(s, f, grid)) for s in specs]
    return cols, series


def figure_series(figure_id: int, grid_points: int) -> FigureSeries:
    """Data series behind one published figure (no rendering)."""
    if figure_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {figure_id}")
    if grid_points < 51:
        raise ValueError("grid_points >= 51 required")
    grid = np.linspace(0.0, 1.0, grid_points)
    n = 10
    if figure_id in (1, 2, 3, 4):
        f = G1 if figure_id in (1, 2) else G2
        specs = [_u1(n), tilde2(n), tilde3(n)]
        labels = ["u1_n10", "tilde2_n10", "tilde3_n10"]
        if figure_id in (1, 3):
            cols, series = _convergence_series(f, specs, labels, grid)
        else:
            especs = [classical_genuine(n)] + specs
            elabels = ["eps_n", "eps1", "eps2", "eps3"]
            cols, series = _error_series(f, especs, elabels, grid)
    else:
        family = {5: "classical", 6: "classical", 7: "u1", 8: "u1",
                  9: "tilde2", 10: "tilde2", 11: "tilde3", 12: "tilde3"}[figure_id]
        make = _OPERATORS[family]
        specs = [make(5), make(7), make(10)]
        if figure_id in (5, 7, 9, 11):
            labels = [f"{family}_n{k}" for k in (5, 7, 10)]
            cols, series = _convergence_series(G3, specs, labels, grid)
        else:
            labels = ["eps5", "eps7", "eps10"]
            cols, series = _error_series(G3, specs, labels, grid)
    return FigureSeries(
        figure_id=figure_id,
        columns=tuple(cols),
        data=tuple(tuple(float(v) for v in col) for col in series),
    )


def emit_figure(figure_id: int, grid_points: int, output_path, fmt: str = "csv") -> None:
    """Write one figure's data series as CSV or JSON (deterministic bytes)."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    fig = figure_series(figure_id, grid_points)
    rows = list(zip(*fig.data))
    if fmt == "csv":
        lines = [",".join(fig.columns)]
        lines += [",".join(format(v, ".10g") for v in row) for row in rows]
        payload = "\n".join(lines) + "\n"
    else:
        doc = {
            "figure_id": fig.figure_id,
            "columns": list(fig.columns),
            "rows": [dict(zip(fig.columns, row)) for row in rows],
        }
        payload = json.dumps(doc, indent=1) + "\n"
    with open(output_path, "w", newline="\n") as fh:
        fh.write(payload)


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------

class SuiteConfigError(ValueError):
    """Malformed suite configuration (carries line diagnostics when parsing)."""


_DEFAULT_X_GRID = ("0", "1/7", "1/3", "1/2", "2/3", "6/7", "1")

#: degree-5 polynomial with known derivatives used by asymptotic tasks
DEFAULT_QUINTIC = (1, 1, 0, -2, 0, 1)

_SEQUENCE_CHOICES = {
    "default": default_alpha_sequences,
    "nonpositive": nonpositive_alpha_sequences,
}


def _run_table_task(task):
    table = reproduce_table(int(task["id"]), float(task.get("tolerance", TABLE_TOL)))
    worst = max((c.abs_delta for c in table.cells), default=0.0)
    return table.ok, {
        "cells": len(table.cells),
        "failed_cells": [f"x={c.x} {c.column} |delta|={c.abs_delta:.3e}"
                         for c in table.failed_cells],
        "flagged": [f"x={c.x} {c.column} computed={c.computed:.10g}"
                    for c in table.cells if c.flagged],
        "worst_delta": worst,
    }


def _run_figure_task(task):
    emit_figure(int(task["id"]), int(task.get("points", 201)), task["out"],
                task.get("format", "csv"))
    return True, {"out": task["out"]}


def _run_lemma_task(task):
    lemma = task["id"]
    if "n" in task:
        n_values = [int(v) for v in task["n"]]
    else:
        n_values = list(range(5, 17)) if lemma.startswith("tilde3") else list(range(2, 21))
    x_grid = [Fraction(s) for s in task.get("x", _DEFAULT_X_GRID)]
    alpha0 = Fraction(task["alpha0"]) if "alpha0" in task else None
    reports = verify_lemma(lemma, n_values, x_grid, alpha0=alpha0)
    bad = [r for r in reports if not r.consistent]
    return not bad, {
        "reports": len(reports),
        "inconsistent": [f"n={r.n} x={r.x} k={r.order} gap={float(r.abs_gap):.3e}"
                         for r in bad[:20]],
    }


def _run_order_task(task):
    family = task["family"]
    f = from_name(task.get("function", "g3"))
    make = _OPERATORS[family]
    fit = fit_convergence_order(make, f, float(task["x"]),
                                [int(n) for n in task["n_list"]], family=family)
    expected = float(task["expected_slope"])
    tol = float(task.get("tolerance", 0.5))
    return abs(fit.slope - expected) <= tol, {
        "slope": fit.slope,
        "expected": expected,
        "tolerance": tol,
        "errors": list(fit.errors),
    }


def _run_bound_task(task):
    f = from_name(task["function"])
    res = check_uniform_bound(default_alpha_sequences(), f, int(task["n"]))
    return res.holds, {"lhs": res.lhs, "rhs": res.rhs}


def _run_voronovskaja_task(task):
    seq = _SEQUENCE_CHOICES[task.get("sequences", "default")]()
    coeffs = task.get("coeffs", DEFAULT_QUINTIC)
    f = polynomial([Fraction(str(c)) for c in coeffs], name="suite-poly")
    x = float(task["x"])
    n = int(task["n"])
    rtol = float(task.get("rtol", 0.05))
    target = VoronovskajaTarget.build(seq.limit0, f, x)
    residual = voronovskaja_residual(seq, f, x, n)
    ok = residual <= rtol * abs(target.value)
    return ok, {"residual": residual, "target": target.value, "rtol": rtol}


_TASK_RUNNERS = {
    "table": _run_table_task,
    "figure": _run_figure_task,
    "lemma": _run_lemma_task,
    "order": _run_order_task,
    "bound": _run_bound_task,
    "voronovskaja": _run_voronovskaja_task,
}


@dataclass
class SuiteResult:
    items: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item["passed"] for item in self.items)

    def to_json(self) -> str:
        doc = {
            "passed": self.passed,
            "counts": {
                "total": len(self.items),
                "failed": sum(not item["passed"] for item in self.items),
            },
            "items": self.items,
        }
        return json.dumps(doc, indent=1, default=str) + "\n"


def run_suite(config_path) -> SuiteResult:
    """Execute the task list of a JSON config; see README for the schema."""
    try:
        with open(config_path) as fh:
            config = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SuiteConfigError(
            f"{config_path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    except OSError as exc:
        raise SuiteConfigError(f"{config_path}: {exc}") from exc
    if not isinstance(config, dict) or not isinstance(config.get("tasks", None), list):
        raise SuiteConfigError(f"{config_path}: expected an object with a 'tasks' array")
    result = SuiteResult()
    for idx, task in enumerate(config["tasks"]):
        kind = task.get("kind")
        item = {"index": idx, "kind": kind, "task": task}
        if kind not in _TASK_RUNNERS:
            raise SuiteConfigError(f"task {idx}: unknown kind {kind!r}")
        try:
            ok, detail = _TASK_RUNNERS[kind](task)
            item["passed"] = bool(ok)
            item["detail"] = detail
        except (ConstraintError, ValueError, KeyError) as exc:
            item["passed"] = False
            item["error"] = f"{type(exc).__name__}: {exc}"
        result.items.append(item)
    return result
