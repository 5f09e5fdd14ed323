"""Experiment drivers behind the command-line interface.

Each driver returns a list of :class:`ExperimentRow`, sorted by ``(n, k)``.
Rows are serialized with every digit of the working precision so that a CSV
file can be read back and written again byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal

import mpmath
import numpy as np

from .chebyshev import adaptive_fit
from .diffcorr import differential_correction
from .models import (
    HALPHEN_INVERSE,
    even_reduction,
    exp_halfline_error,
    halfline_chart,
    halfline_grid,
    halphen_model,
    lemma2_gap,
    transplanted_error,
)
from .poly_remez import RemezConvergenceError, newman_rivlin, remez_poly
from .precision import bits_for_target, get_precision_bits, validate_bits, working_precision
from .rational_remez import RationalMinimaxError, rational_remez
from .targets import Power

CSV_HEADER = ("experiment", "n", "k", "computed_error", "model_error", "ratio", "status")

#: Degrees that reproduce x^n to 1e-15 in the reference Chebyshev computation.
TABLE1_DEGREES = {1: 1, 4: 4, 16: 16, 64: 44, 256: 91, 1024: 178, 4096: 349}

OK, PASS, FAIL = "ok", "pass", "fail"
SUCCESS = frozenset({OK, PASS})


@dataclass(frozen=True)
class ExperimentRow:
    experiment: str
    n: float
    k: int
    computed_error: object
    model_error: object
    ratio: object
    status: str

    @classmethod
    def make(cls, experiment, n, k, computed, model, status=OK):
        ratio = computed / model if model else math.nan
        return cls(experiment, n, k, computed, model, ratio, status)

    def astuple(self):
        return tuple(getattr(self, f) for f in CSV_HEADER)


@dataclass
class RunConfig:
    """Settings shared by all experiments.

    ``tol=None`` selects each experiment's own default: the Remez levelling
    tolerance for ``figure1``, the certificate tolerance for ``figure2``, and the
    chopping tolerance for ``table1``.
    """

    precision_bits: int = field(default_factory=get_precision_bits)
    grid_size: int = 4096
    tol: float | None = None
    out: str | None = None
    format: str = "csv"
    plot: bool = False
    jobs: int = 1

    def __post_init__(self):
        self.precision_bits = validate_bits(self.precision_bits)
        if self.grid_size < 257:
            raise ValueError(f"grid_size must be at least 257, got {self.grid_size}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be 'csv' or 'json', got {self.format!r}")
        if self.tol is not None and not 0 < self.tol < 1:
            raise ValueError("tol must lie in (0, 1)")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")


def sort_rows(rows):
    return sorted(rows, key=lambda r: (float(r.n), r.k, r.experiment))


def _run_cells(fn, cells, config: RunConfig):
    """Evaluate ``fn(*cell, bits)`` for every cell, possibly in a worker pool."""
    args = [(*cell, config.precision_bits) for cell in cells]
    if config.jobs == 1 or len(args) <= 1:
        out = [fn(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            out = list(pool.map(fn, *zip(*args)))
    rows = []
    for r in out:
        rows.extend(r if isinstance(r, list) else [r])
    return sort_rows(rows)


# --- figure1: polynomial errors against the erfc model ------------------------

def default_kmax_poly(n, floor: float = 1e-10) -> int:
    """Largest k whose erfc model value is still above ``floor``."""
    x = 0.0
    lo, hi = 0.0, 20.0
    for _ in range(100):
        x = (lo + hi) / 2
        if math.erfc(x) / 2 >= floor:
            lo = x
        else:
            hi = x
    return int(math.floor(lo * math.sqrt(n)))


def _figure1_cell(n, k, tol, bits):
    model = newman_rivlin(k, n)
    with working_precision(bits_for_target(float(model)) if bits == 53 else bits):
        try:
            res = remez_poly(Power(n), k, (0.0, 1.0), tol=tol)
            status = OK
            err = res.error
        except RemezConvergenceError as exc:
            status = "stagnated"
            err = exc.best.error if exc.best is not None else math.nan
        model = newman_rivlin(k, n)
    return ExperimentRow.make("figure1", n, k, err, model, status)


def run_figure1(n_list=(250, 1000), k_max=None, config: RunConfig | None = None):
    config = config or RunConfig()
    tol = 1e-12 if config.tol is None else config.tol
    cells = []
    for n in n_list:
        km = default_kmax_poly(n) if k_max is None else k_max
        cells.extend((n, k, tol) for k in range(km + 1))
    return _run_cells(_figure1_cell, cells, config)


# --- figure2: rational errors against the geometric model ----------------------

def _figure2_cell(n, k, tol, grid_size, bits):
    model = halphen_model(k)
    with working_precision(bits_for_target(float(model)) if bits == 53 else bits):
        try:
            res = rational_remez(Power(n), k, (0.0, 1.0), tol=tol, grid_size=grid_size)
            err, status = res.error, (OK if res.converged else res.status)
        except RationalMinimaxError:
            err, status = math.nan, "failed"
        model = halphen_model(k)
    return ExperimentRow.make("figure2", n, k, err, model, status)


def halphen_slope(rows):
    """Least-squares slope of log E against k over the rows with k >= 1."""
    pts = [(r.k, float(r.computed_error)) for r in rows
           if r.experiment == "figure2" and r.k >= 1 and float(r.computed_error) > 0]
    if len(pts) < 2:
        return math.nan
    ks, es = np.array(pts).T
    return float(np.polyfit(ks, np.log(es), 1)[0])


def run_figure2(n=1000, k_max=8, config: RunConfig | None = None, slope_tol: float = 0.05):
    config = config or RunConfig()
    tol = 1e-3 if config.tol is None else config.tol
    cells = [(n, k, tol, config.grid_size) for k in range(k_max + 1)]
    rows = _run_cells(_figure2_cell, cells, config)
    slope = halphen_slope(rows)
    target = -math.log(float(HALPHEN_INVERSE))
    ok = abs(slope - target) <= slope_tol * abs(target)
    rows.append(ExperimentRow.make("figure2_slope", n, k_max, slope, target,
                                   PASS if ok else FAIL))
    return rows


# --- table1: adaptive Chebyshev degrees ---------------------------------------

def _table1_status(n, k):
    ref = TABLE1_DEGREES.get(n)
    if ref is None:
        return OK
    if n <= 16:
        return PASS if k == ref else FAIL
    return PASS if abs(k - ref) <= 0.1 * ref else FAIL


def _table1_cell(n, tol, bits):
    with working_precision(bits):
        k = adaptive_fit(Power(n), (0.0, 1.0), tol=tol).degree
    ref = TABLE1_DEGREES.get(n, math.nan)
    return ExperimentRow.make("table1", n, k, k, ref, _table1_status(n, k))


def run_table1(config: RunConfig | None = None, n_list=tuple(TABLE1_DEGREES)):
    config = config or RunConfig()
    tol = 1e-15 if config.tol is None else config.tol
    return _run_cells(_table1_cell, [(n, tol) for n in n_list], config)


# --- checks --------------------------------------------------------------------

def _rel(a, b):
    return abs(float(a) - float(b)) / abs(float(b))


def _check_lemma2(n, bits):
    with working_precision(bits):
        res = lemma2_gap(n)
    ok = res.within_bound and res.all_positive and res.identity_rel_err <= 1e-10
    return ExperimentRow.make("lemma2", n, 0, res.scan_max, float(res.bound),
                              PASS if ok else FAIL)


def _check_lemma1(n, k, grid_size, bits):
    with working_precision(bits):
        e_x = rational_remez(Power(n), k, grid_size=grid_size).error
        e_s = transplanted_error(n, k, grid_size=grid_size)
    ok = _rel(e_x, e_s) <= 1e-6
    return ExperimentRow.make("lemma1", n, k, e_x, e_s, PASS if ok else FAIL)


def _check_limit(n, k, grid_size, bits):
    with working_precision(bits):
        e = rational_remez(Power(n), k, grid_size=grid_size).error
        f = exp_halfline_error(k, grid_size=grid_size)
    bound = 1 / (math.e * n)
    diff = abs(float(e) - float(f))
    return ExperimentRow.make("limit", n, k, diff, bound, PASS if diff <= bound else FAIL)


def _check_even(n, k, grid_size, bits):
    n_half, k_half = even_reduction(n, k)
    with working_precision(bits):
        e_full = rational_remez(Power(n), k, (-1.0, 1.0), grid_size=grid_size).error
        e_half = rational_remez(Power(n_half), k_half, grid_size=grid_size).error
    ok = _rel(e_full, e_half) <= 1e-6
    return ExperimentRow.make("even_reduction", n, k, e_full, e_half, PASS if ok else FAIL)


def _check_oracle(n, k, grid_size, bits):
    with working_precision(bits):
        e = rational_remez(Power(n), k, grid_size=grid_size).error
    grid = halfline_grid(n, 2049)
    d = differential_correction(Power(n), k, grid, chart=halfline_chart(n))
    ok = _rel(d, e) <= 1e-3 and d <= float(e) * (1 + 1e-9)
    return ExperimentRow.make("oracle", n, k, e, d, PASS if ok else FAIL)


def _check_poly_exact(bits):
    with working_precision(bits):
        e = remez_poly(Power(2), 1).error
    return ExperimentRow.make("poly_x2", 2, 1, e, 0.125,
                              PASS if abs(float(e) - 0.125) <= 1e-12 else FAIL)


def _check_cell(kind, args, bits):
    try:
        return _CHECKS[kind](*args, bits)
    except (RemezConvergenceError, RationalMinimaxError) as exc:
        n, k = (args + (0, 0))[:2]
        return ExperimentRow(kind, n, k, math.nan, math.nan, math.nan, f"failed: {exc}")


_CHECKS = {
    "lemma2": _check_lemma2,
    "lemma1": _check_lemma1,
    "limit": _check_limit,
    "even_reduction": _check_even,
    "oracle": _check_oracle,
    "poly_x2": _check_poly_exact,
}


def check_cells(grid_size: int = 4096):
    cells = [("lemma2", (n,)) for n in (1, 10, 100, 1000, 10000)]
    cells += [("lemma1", (n, k, grid_size)) for n, k in ((100, 2), (1000, 3))]
    cells += [("limit", (n, k, grid_size)) for n in (100, 1000, 10000) for k in (1, 2, 3)]
    cells += [("even_reduction", (100, k, grid_size)) for k in (4, 5)]
    cells += [("oracle", (n, k, grid_size)) for n, k in ((100, 2), (1000, 3), (1000, 5))]
    cells += [("poly_x2", ())]
    return cells


def run_checks(config: RunConfig | None = None):
    config = config or RunConfig()
    return _run_cells(_check_cell, check_cells(config.grid_size), config)


# --- single solve --------------------------------------------------------------

def run_solve(n, k, kind="rational", config: RunConfig | None = None):
    """One minimax solve of x^n on [0, 1]; ``kind`` is ``"poly"`` or ``"rational"``."""
    config = config or RunConfig()
    if kind == "poly":
        tol = 1e-12 if config.tol is None else config.tol
        with working_precision(config.precision_bits):
            res = remez_poly(Power(n), k, tol=tol)
            model = newman_rivlin(k, n)
        return [ExperimentRow.make("solve_poly", n, k, res.error, model, OK)]
    if kind != "rational":
        raise ValueError(f"unknown solve kind {kind!r}")
    tol = 1e-3 if config.tol is None else config.tol
    with working_precision(config.precision_bits):
        res = rational_remez(Power(n), k, tol=tol, grid_size=config.grid_size)
        model = halphen_model(k)
    return [ExperimentRow.make("solve_rational", n, k, res.error, model,
                               OK if res.converged else res.status)]


def all_ok(rows) -> bool:
    return all(r.status in SUCCESS for r in rows)


# --- serialization -------------------------------------------------------------

_INT = re.compile(r"-?\d+")


def format_value(v) -> str:
    """Shortest exact text for floats, every working digit for mpf values."""
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, Decimal):
        return format(v, "e")
    if isinstance(v, mpmath.mpf):
        dps = mpmath.libmp.prec_to_dps(get_precision_bits())
        return format(Decimal(mpmath.nstr(v, dps, min_fixed=1, max_fixed=0)), "e")
    return repr(float(v))


def parse_value(s: str):
    """Inverse of :func:`format_value` on numeric fields; other text passes through."""
    if _INT.fullmatch(s):
        return int(s)
    try:
        x = float(s)
    except ValueError:
        return s
    if repr(x) == s:
        return x
    try:
        return Decimal(s)
    except ArithmeticError:
        return s


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([format_value(v) for v in r.astuple()])
    return buf.getvalue()


def rows_from_csv(text: str):
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    return [ExperimentRow(*(parse_value(v) for v in rec)) for rec in reader]


def _json_value(v):
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return v
    if isinstance(v, (float, np.floating)) and math.isfinite(v):
        return float(v)
    # extended-precision and non-finite values are kept as text
    return format_value(v)


def rows_to_json(rows) -> str:
    recs = [{f: _json_value(v) for f, v in zip(CSV_HEADER, r.astuple())} for r in rows]
    return json.dumps(recs, indent=2) + "\n"


def rows_from_json(text: str):
    rows = []
    for rec in json.loads(text):
        vals = [rec[f] for f in CSV_HEADER]
        vals[1:6] = [parse_value(v) if isinstance(v, str) else v for v in vals[1:6]]
        rows.append(ExperimentRow(*vals))
    return rows


def write_rows(rows, config: RunConfig, stream=None) -> str:
    text = rows_to_json(rows) if config.format == "json" else rows_to_csv(rows)
    if config.out:
        os.makedirs(os.path.dirname(os.path.abspath(config.out)), exist_ok=True)
        with open(config.out, "w", newline="") as fh:
            fh.write(text)
    elif stream is not None:
        stream.write(text)
    return text
