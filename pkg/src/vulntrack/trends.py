"""Trend analysis: time-bucketed report counts and spike detection.

Counts are distinct-document counts per calendar period (year or month),
zero-filled so the series is contiguous over the requested range. A
bucket spikes when its count exceeds the trailing moving average by more
than a configured number of trailing standard deviations.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Sequence

from .errors import (
    InsufficientDataError,
    InvalidDateRangeError,
    InvalidParameterError,
)

GRANULARITY_YEAR = "year"
GRANULARITY_MONTH = "month"
GRANULARITIES = (GRANULARITY_YEAR, GRANULARITY_MONTH)


@dataclass
class TrendSeries:
    topic_name: str
    granularity: str
    buckets: list[tuple[str, int]]  # (period, count), periods ascending

    def counts(self) -> list[int]:
        return [count for _, count in self.buckets]


@dataclass
class SpikeConfig:
    window: int = 4
    threshold: float = 2.0
    sigma_floor: float = 1e-9

    def validate(self) -> None:
        if self.window < 2:
            raise InvalidParameterError("spike window must be >= 2")
        if self.threshold <= 0:
            raise InvalidParameterError("spike threshold must be positive")
        if self.sigma_floor <= 0:
            raise InvalidParameterError("sigma floor must be positive")

    def to_payload(self) -> dict:
        return {
            "window": self.window,
            "threshold": self.threshold,
            "sigma_floor": self.sigma_floor,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "SpikeConfig":
        return cls(
            window=int(payload["window"]),
            threshold=float(payload["threshold"]),
            sigma_floor=float(payload["sigma_floor"]),
        )


def period_of(day: date, granularity: str) -> str:
    if granularity == GRANULARITY_YEAR:
        return f"{day.year:04d}"
    if granularity == GRANULARITY_MONTH:
        return f"{day.year:04d}-{day.month:02d}"
    raise InvalidParameterError(
        f"granularity must be year or month, got {granularity!r}")


def periods_between(from_date: date, to_date: date,
                    granularity: str) -> list[str]:
    """Contiguous period labels covering [from_date, to_date]."""
    if from_date > to_date:
        raise InvalidDateRangeError(
            f"range start {from_date} is after end {to_date}")
    if granularity == GRANULARITY_YEAR:
        return [f"{y:04d}" for y in range(from_date.year, to_date.year + 1)]
    if granularity != GRANULARITY_MONTH:
        raise InvalidParameterError(
            f"granularity must be year or month, got {granularity!r}")
    out = []
    year, month = from_date.year, from_date.month
    while (year, month) <= (to_date.year, to_date.month):
        out.append(f"{year:04d}-{month:02d}")
        month += 1
        if month == 13:
            year, month = year + 1, 1
    return out


def bucket_counts(doc_dates: Iterable[date], topic_name: str,
                  granularity: str, from_date: date,
                  to_date: date) -> TrendSeries:
    """Bucket distinct documents by period; dates outside the range are
    dropped, empty periods appear with count zero."""
    labels = periods_between(from_date, to_date, granularity)
    counts = dict.fromkeys(labels, 0)
    for day in doc_dates:
        if from_date <= day <= to_date:
            counts[period_of(day, granularity)] += 1
    return TrendSeries(
        topic_name=topic_name,
        granularity=granularity,
        buckets=[(label, counts[label]) for label in labels],
    )


def detect_spikes(series: TrendSeries,
                  config: SpikeConfig) -> list[tuple[str, float]]:
    """Flag buckets whose z-score against the trailing window exceeds the
    threshold.

    For bucket t >= window: MA = mean of the w preceding counts, sigma =
    their sample standard deviation floored at sigma_floor, z = (count -
    MA) / sigma. Buckets earlier than one full window are never flagged.
    """
    config.validate()
    counts = series.counts()
    w = config.window
    if len(counts) < w + 1:
        raise InsufficientDataError(
            f"series has {len(counts)} buckets; spike window {w} needs "
            f"at least {w + 1}")
    spikes = []
    for t in range(w, len(counts)):
        tail = counts[t - w:t]
        ma = statistics.fmean(tail)
        sigma = max(statistics.stdev(tail), config.sigma_floor)
        z = (counts[t] - ma) / sigma
        if z > config.threshold:
            spikes.append((series.buckets[t][0], z))
    return spikes
