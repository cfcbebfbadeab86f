"""Performance measures: returns, drawdown, Sharpe/information ratio,
yearly rates of return, and a Gaussian fit of the return distribution.

Standard deviations are population (N divisor) throughout. Annualization
uses a configurable trading-day count, 252 by default. Everything is
stdlib-only so outputs are bit-stable across platforms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .backtest import EquityCurve
from .errors import LengthMismatch, NonPositivePrice, TooShort, ZeroVolatility
from .market_data import slice_years

TRADING_DAYS_PER_YEAR = 252


def daily_returns(values: Sequence[float]) -> list[float]:
    """Fractional day-over-day changes; length is len(values) - 1."""
    if len(values) < 2:
        raise TooShort("need at least two values for returns")
    out: list[float] = []
    for i in range(1, len(values)):
        prev, cur = values[i - 1], values[i]
        if prev <= 0 or cur <= 0 or not (math.isfinite(prev) and math.isfinite(cur)):
            raise NonPositivePrice(f"non-positive price at index {i}")
        out.append(cur / prev - 1.0)
    return out


def max_drawdown(values: Sequence[float]) -> float:
    """Largest peak-to-trough fractional decline, single pass, floored at 0."""
    if len(values) < 1:
        raise TooShort("need at least one value")
    peak = values[0]
    worst = 0.0
    for v in values:
        if v <= 0:
            raise NonPositivePrice("drawdown expects positive values")
        if v > peak:
            peak = v
        drawdown = (peak - v) / peak
        if drawdown > worst:
            worst = drawdown
    return worst


def _mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs)


def _population_std(xs: Sequence[float]) -> float:
    mean = _mean(xs)
    return math.sqrt(sum((x - mean) ** 2 for x in xs) / len(xs))


def _require_dispersion(xs: Sequence[float], what: str) -> None:
    # an all-equal series has zero dispersion by definition, even when the
    # rounded mean makes the computed std a denormal instead of 0.0
    if min(xs) == max(xs):
        raise ZeroVolatility(f"{what} have zero standard deviation")


def sharpe_annual(
    returns: Sequence[float],
    rf_daily: float = 0.0,
    trading_days: int = TRADING_DAYS_PER_YEAR,
) -> float:
    """Annualized excess return per unit of return volatility."""
    if len(returns) < 2:
        raise TooShort("need at least two returns")
    _require_dispersion(returns, "returns")
    std = _population_std(returns)
    if std == 0.0:
        raise ZeroVolatility("returns have zero standard deviation")
    return (_mean(returns) - rf_daily) / std * math.sqrt(trading_days)


def information_ratio_annual(
    returns: Sequence[float],
    benchmark_returns: Sequence[float],
    trading_days: int = TRADING_DAYS_PER_YEAR,
) -> float:
    """Annualized mean/std of the daily difference against a benchmark."""
    if len(returns) != len(benchmark_returns):
        raise LengthMismatch(f"{len(returns)} returns vs {len(benchmark_returns)} benchmark returns")
    if len(returns) < 2:
        raise TooShort("need at least two returns")
    diff = [r - b for r, b in zip(returns, benchmark_returns)]
    _require_dispersion(diff, "excess returns")
    std = _population_std(diff)
    if std == 0.0:
        raise ZeroVolatility("excess returns have zero standard deviation")
    return _mean(diff) / std * math.sqrt(trading_days)


def yearly_rr(equity: EquityCurve | Sequence[float], ranges: Sequence[tuple[int, int]],
              initial_price: Optional[float] = None) -> list[float]:
    """Per-range growth ratios; their product telescopes to final/initial."""
    if isinstance(equity, EquityCurve):
        values = equity.values
        start_value = equity.initial_price
    else:
        values = list(equity)
        start_value = values[0] if initial_price is None else initial_price
    out: list[float] = []
    prev = start_value
    for _, end in ranges:
        current = values[end - 1]
        out.append(current / prev)
        prev = current
    return out


def gaussian_fit(returns: Sequence[float]) -> tuple[float, float]:
    """Sample mean and population standard deviation of daily returns."""
    if len(returns) < 2:
        raise TooShort("need at least two returns")
    return _mean(returns), _population_std(returns)


@dataclass(frozen=True)
class MetricReport:
    """The full per-backtest measure block."""

    initial_price: float
    final_price: float
    rr_whole: float
    rr_per_year: float
    rr_by_year: list[float]
    buy_count: int
    max_rate: float
    min_rate: float
    mdd: float
    sr: Optional[float]
    ir: Optional[float]
    vol_annual: float
    return_fit_mean: float
    return_fit_std: float

    def to_dict(self) -> dict:
        return {
            "initial_price": self.initial_price,
            "final_price": self.final_price,
            "rr_whole": self.rr_whole,
            "rr_per_year": self.rr_per_year,
            "rr_by_year": list(self.rr_by_year),
            "buy_count": self.buy_count,
            "max_rate": self.max_rate,
            "min_rate": self.min_rate,
            "mdd": self.mdd,
            "sr": self.sr,
            "ir": self.ir,
            "vol_annual": self.vol_annual,
            "return_fit_mean": self.return_fit_mean,
            "return_fit_std": self.return_fit_std,
        }


def build_report(
    equity: EquityCurve,
    benchmark_closes: Sequence[float],
    buy_count: int,
    trading_days: int = TRADING_DAYS_PER_YEAR,
) -> MetricReport:
    """Assemble the measure block for an equity curve and its benchmark.

    Sharpe and information ratios degrade to None instead of failing
    when the relevant volatility is zero (e.g. a flat, trade-free curve).
    """
    values = equity.values
    returns = daily_returns(values)
    bench_returns = daily_returns(benchmark_closes)
    rr_whole = equity.final_price / equity.initial_price
    years = len(values) / trading_days
    rr_per_year = rr_whole ** (1.0 / years)
    ranges = slice_years(len(values), trading_days)
    rr_by_year = yearly_rr(equity, ranges)
    try:
        sr = sharpe_annual(returns, 0.0, trading_days)
    except ZeroVolatility:
        sr = None
    try:
        ir = information_ratio_annual(returns, bench_returns, trading_days)
    except ZeroVolatility:
        ir = None
    fit_mean, fit_std = gaussian_fit(returns)
    return MetricReport(
        initial_price=equity.initial_price,
        final_price=equity.final_price,
        rr_whole=rr_whole,
        rr_per_year=rr_per_year,
        rr_by_year=rr_by_year,
        buy_count=buy_count,
        max_rate=max(rr_by_year),
        min_rate=min(rr_by_year),
        mdd=max_drawdown(values),
        sr=sr,
        ir=ir,
        vol_annual=fit_std * math.sqrt(trading_days),
        return_fit_mean=fit_mean,
        return_fit_std=fit_std,
    )
