"""Parameter-grid evaluation over one series.

Cells are independent and may be evaluated concurrently; the merged
result is sorted by the objective (descending) with a lexicographic
tie-break on the parameter assignment, so output never depends on
evaluation order or worker count.
"""
from __future__ import annotations

import copy
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .backtest import run
from .config import SweepSpec, set_leaf, strategy_from_dict
from .errors import EmptyGridAfterFilter, EngineError
from .market_data import OhlcvSeries
from .metrics import MetricReport, build_report
from .strategies import generate_signals


@dataclass(frozen=True)
class SweepRow:
    params: tuple[tuple[str, Any], ...]
    buy_count: int
    objective_value: float
    report: MetricReport

    def param_dict(self) -> dict:
        return dict(self.params)


def _objective_value(report: MetricReport, objective: str) -> Optional[float]:
    if objective == "sharpe_annual":
        return report.sr
    if objective == "ir_annual":
        return report.ir
    return report.rr_whole


def _evaluate_cell(
    series: OhlcvSeries,
    spec: SweepSpec,
    benchmark_closes: Sequence[float],
    trading_days: int,
    assignment: tuple[tuple[str, Any], ...],
) -> Optional[SweepRow]:
    tree = copy.deepcopy(spec.base_tree)
    for path, value in assignment:
        set_leaf(tree, path, value)
    try:
        config = strategy_from_dict(tree)
        signals = generate_signals(series, config)
        result = run(series, signals)
        report = build_report(result.equity, benchmark_closes, result.buy_count, trading_days)
    except EngineError:
        return None  # cell is invalid or degenerate for this series; drop it
    value = _objective_value(report, spec.objective)
    if value is None:
        return None
    return SweepRow(assignment, report.buy_count, value, report)


def run_sweep(
    series: OhlcvSeries,
    spec: SweepSpec,
    benchmark_closes: Sequence[float] | None = None,
    trading_days: int = 252,
    jobs: int = 1,
) -> list[SweepRow]:
    """Evaluate every grid cell, filter by min_trades, rank by objective."""
    benchmark = list(benchmark_closes) if benchmark_closes is not None else series.closes
    names = [path for path, _ in spec.axes]
    value_lists = [values for _, values in spec.axes]
    assignments = [
        tuple(zip(names, combo)) for combo in itertools.product(*value_lists)
    ] or [()]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cells = list(
                pool.map(
                    lambda a: _evaluate_cell(series, spec, benchmark, trading_days, a),
                    assignments,
                )
            )
    else:
        cells = [
            _evaluate_cell(series, spec, benchmark, trading_days, a) for a in assignments
        ]

    rows = [
        row
        for row in cells
        if row is not None and row.buy_count >= spec.min_trades
    ]
    if not rows:
        raise EmptyGridAfterFilter(
            f"no grid cell survived evaluation with min_trades={spec.min_trades}"
        )
    rows.sort(key=lambda row: (-row.objective_value, _param_key(row.params)))
    return rows


def _param_key(params: tuple[tuple[str, Any], ...]) -> str:
    return ",".join(f"{path}={value!r}" for path, value in params)


def sweep_to_csv(rows: list[SweepRow], spec: SweepSpec, target) -> None:
    """One row per surviving cell: parameter columns, then the metrics."""
    from pathlib import Path as _Path

    own = isinstance(target, (str, _Path))
    handle = open(target, "w", encoding="utf-8", newline="") if own else target
    param_names = [path for path, _ in spec.axes]
    try:
        header = param_names + ["buy_count", "rr_whole", "sharpe_annual", "ir_annual", "objective"]
        handle.write(",".join(header) + "\n")
        for row in rows:
            values = dict(row.params)
            cells = [repr(values[name]) for name in param_names]
            cells.append(str(row.buy_count))
            cells.append(repr(row.report.rr_whole))
            cells.append("" if row.report.sr is None else repr(row.report.sr))
            cells.append("" if row.report.ir is None else repr(row.report.ir))
            cells.append(repr(row.objective_value))
            handle.write(",".join(cells) + "\n")
    finally:
        if own:
            handle.close()
