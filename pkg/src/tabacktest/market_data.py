"""Daily OHLCV series: CSV parsing, validation, serialization, year slicing.

Canonical CSV columns are ``date,open,high,low,close,adj_close,volume``
with ``adj_close`` optional. Dates are ISO-8601 and must be strictly
increasing. All values are immutable after construction.
"""
from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    EmptySeries,
    InvariantViolation,
    MissingColumn,
    MissingInput,
    NonMonotonicDates,
    UnparsableRow,
)

STRICT = "strict"
LENIENT = "lenient"

_REQUIRED_COLUMNS = ("date", "open", "high", "low", "close", "volume")


@dataclass(frozen=True)
class Bar:
    """One trading day. Prices are finite and strictly positive; low <= high."""

    date: dt.date
    open: float
    high: float
    low: float
    close: float
    volume: int

    def __post_init__(self):
        for price in (self.open, self.high, self.low, self.close):
            if not math.isfinite(price) or price <= 0.0:
                raise ValueError(f"prices must be finite and positive, got {price}")
        if self.low > self.high:
            raise ValueError(f"low {self.low} > high {self.high}")
        if self.volume < 0:
            raise ValueError(f"volume must be non-negative, got {self.volume}")


@dataclass(frozen=True)
class OhlcvSeries:
    symbol: str
    bars: tuple[Bar, ...]

    def __post_init__(self):
        if not self.bars:
            raise ValueError("a series needs at least one bar")
        for prev, cur in zip(self.bars, self.bars[1:]):
            if cur.date <= prev.date:
                raise ValueError(f"dates must strictly increase: {prev.date} -> {cur.date}")

    def __len__(self) -> int:
        return len(self.bars)

    @property
    def closes(self) -> list[float]:
        return [b.close for b in self.bars]

    @property
    def highs(self) -> list[float]:
        return [b.high for b in self.bars]

    @property
    def lows(self) -> list[float]:
        return [b.low for b in self.bars]

    @property
    def dates(self) -> list[dt.date]:
        return [b.date for b in self.bars]


@dataclass(frozen=True)
class ParseResult:
    series: OhlcvSeries
    warnings: int


def _parse_price(cell: str) -> float:
    value = float(cell)
    if not math.isfinite(value):
        raise ValueError(f"non-finite price {cell!r}")
    return value


def _parse_volume(cell: str) -> int:
    value = float(cell)
    if not math.isfinite(value) or value != int(value):
        raise ValueError(f"volume is not an integer count: {cell!r}")
    return int(value)


def parse_csv(
    path: str | Path,
    mode: str = STRICT,
    use_adjusted: bool = False,
    symbol: str | None = None,
) -> ParseResult:
    """Parse a daily OHLCV CSV file.

    In strict mode any invariant violation aborts with the offending
    1-based data row number. In lenient mode open/close are clamped into
    [low, high], a swapped low/high pair is re-ordered, and rows whose
    prices cannot be repaired (empty, non-finite, non-positive) are
    dropped; each remedy increments the returned warning count.

    With ``use_adjusted`` the optional ``adj_close`` column replaces
    ``close`` before validation.
    """
    if mode not in (STRICT, LENIENT):
        raise ValueError(f"unknown parse mode {mode!r}")
    path = Path(path)
    if not path.exists():
        raise MissingInput(f"no such file: {path}")
    with path.open("r", encoding="utf-8", newline="") as handle:
        return _parse_stream(handle, mode, use_adjusted, symbol or path.stem)


def parse_csv_text(
    text: str,
    mode: str = STRICT,
    use_adjusted: bool = False,
    symbol: str = "series",
) -> ParseResult:
    return _parse_stream(io.StringIO(text), mode, use_adjusted, symbol)


def _parse_stream(handle, mode: str, use_adjusted: bool, symbol: str) -> ParseResult:
    reader = csv.reader(handle)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptySeries("file has no header row") from None
    columns = [cell.strip().lower() for cell in header]
    missing = [name for name in _REQUIRED_COLUMNS if name not in columns]
    if missing:
        raise MissingColumn(f"missing column(s): {', '.join(missing)}")
    if use_adjusted and "adj_close" not in columns:
        raise MissingColumn("missing column(s): adj_close (required by use_adjusted)")
    index = {name: columns.index(name) for name in columns}
    close_col = index["adj_close"] if use_adjusted else index["close"]

    strict = mode == STRICT
    bars: list[Bar] = []
    warnings = 0
    prev_date: dt.date | None = None

    for row_no, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        price_cells = [row[index[k]].strip() if index[k] < len(row) else ""
                       for k in ("open", "high", "low")]
        price_cells.append(row[close_col].strip() if close_col < len(row) else "")
        if all(not cell for cell in price_cells):
            if strict:
                raise UnparsableRow(row_no, "all price cells empty")
            warnings += 1
            continue
        try:
            date = dt.date.fromisoformat(row[index["date"]].strip())
            open_, high, low, close = (_parse_price(cell) for cell in price_cells)
            volume = _parse_volume(row[index["volume"]].strip())
        except (ValueError, IndexError) as exc:
            if strict:
                raise UnparsableRow(row_no, str(exc)) from None
            warnings += 1
            continue

        if prev_date is not None and date <= prev_date:
            raise NonMonotonicDates(row_no, f"{date} does not follow {prev_date}")
        prev_date = date

        if min(open_, high, low, close) <= 0.0:
            if strict:
                raise InvariantViolation(row_no, "prices must be strictly positive")
            warnings += 1
            continue
        if low > high:
            if strict:
                raise InvariantViolation(row_no, f"low {low} > high {high}")
            low, high = high, low
            warnings += 1
        if not low <= open_ <= high:
            if strict:
                raise InvariantViolation(row_no, f"open {open_} outside [{low}, {high}]")
            open_ = min(max(open_, low), high)
            warnings += 1
        if not low <= close <= high:
            if strict:
                raise InvariantViolation(row_no, f"close {close} outside [{low}, {high}]")
            close = min(max(close, low), high)
            warnings += 1
        if volume < 0:
            if strict:
                raise InvariantViolation(row_no, f"negative volume {volume}")
            volume = 0
            warnings += 1

        bars.append(Bar(date, open_, high, low, close, volume))

    if not bars:
        raise EmptySeries("no valid data rows")
    return ParseResult(OhlcvSeries(symbol, tuple(bars)), warnings)


def serialize_csv(series: OhlcvSeries, target) -> None:
    """Write a series in canonical column order; parse(serialize(s)) == s."""
    own = isinstance(target, (str, Path))
    handle = open(target, "w", encoding="utf-8", newline="") if own else target
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["date", "open", "high", "low", "close", "volume"])
        for bar in series.bars:
            writer.writerow([
                bar.date.isoformat(),
                repr(bar.open),
                repr(bar.high),
                repr(bar.low),
                repr(bar.close),
                bar.volume,
            ])
    finally:
        if own:
            handle.close()


def serialize_csv_text(series: OhlcvSeries) -> str:
    buffer = io.StringIO()
    serialize_csv(series, buffer)
    return buffer.getvalue()


def slice_years(series_or_length, bars_per_year: int) -> list[tuple[int, int]]:
    """Split [0, len) into consecutive half-open ranges of bars_per_year.

    The final range holds the remainder and may be shorter; together the
    ranges partition the whole series.
    """
    if bars_per_year < 1:
        raise ValueError("bars_per_year must be >= 1")
    length = series_or_length if isinstance(series_or_length, int) else len(series_or_length)
    if length < 0:
        raise ValueError("length must be non-negative")
    ranges: list[tuple[int, int]] = []
    start = 0
    while start < length:
        end = min(start + bars_per_year, length)
        ranges.append((start, end))
        start = end
    return ranges
