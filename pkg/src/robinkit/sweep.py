"""Certified range sweeps of ``num(n)/den(n) < rhs(n)``.

A sweep first evaluates ``rhs`` once per block of consecutive n, on the
interval hull of the block; the block's lower bound is a valid bound for
every member, and exact int64 comparisons settle most of them. Members the
screen cannot settle are re-checked one by one with escalating precision.
Both stages are rigorous; the screen only trades tightness for speed.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .errors import DomainError
from .numerics import (
    DEFAULT_MAX_PRECISION,
    Comparison,
    Ordering3,
    RealInterval,
    compare_detail,
)

T = TypeVar("T")

SCREEN_PRECISION = 64
_SCALE_BITS = 20
_INT64_SAFE = 1 << 62

RhsFn = Callable[[object, int], RealInterval]


@dataclass(frozen=True)
class SweepFailure:
    """An n whose inequality was not certified (violated or undecided)."""

    n: int
    comparison: Comparison

    @property
    def order(self) -> Ordering3:
        return self.comparison.order


def _block_bounds(ns: np.ndarray, rhs: RhsFn, block: int) -> list[int | None]:
    out: list[int | None] = []
    for i0 in range(0, len(ns), block):
        i1 = min(i0 + block, len(ns)) - 1
        try:
            r = rhs(RealInterval.hull(int(ns[i0]), int(ns[i1]), SCREEN_PRECISION), SCREEN_PRECISION)
        except DomainError:
            out.append(None)
            continue
        num, den = r.lo.as_integer_ratio()
        out.append((num << _SCALE_BITS) // den)
    return out


def certify_below(ns: np.ndarray, num: np.ndarray, den: np.ndarray, rhs: RhsFn, *,
                  block: int = 64, max_precision: int = DEFAULT_MAX_PRECISION) -> list[SweepFailure]:
    """Check ``num[i]/den[i] < rhs(ns[i])`` for every i; return the uncertified ones.

    ``rhs(x, prec)`` must accept either an int or a RealInterval ``x`` and
    return an enclosure valid for every n in ``x``.
    """
    if len(ns) == 0:
        return []
    bounds = _block_bounds(ns, rhs, block)
    settled = np.zeros(len(ns), dtype=bool)
    for bi, r in enumerate(bounds):
        if r is None:
            continue
        sl = slice(bi * block, min((bi + 1) * block, len(ns)))
        bnum, bden = num[sl], den[sl]
        if int(bnum.max()) << _SCALE_BITS < _INT64_SAFE and int(bden.max()) * abs(r) < _INT64_SAFE:
            settled[sl] = (bnum << _SCALE_BITS) < bden * r
        else:
            settled[sl] = [(int(a) << _SCALE_BITS) < int(b) * r for a, b in zip(bnum, bden)]
    failures = []
    for i in np.flatnonzero(~settled).tolist():
        n = int(ns[i])
        comp = compare_detail(Fraction(int(num[i]), int(den[i])), lambda p, n=n: rhs(n, p), max_precision)
        if comp.order is not Ordering3.LESS:
            failures.append(SweepFailure(n, comp))
    return failures


def chunk_ranges(start: int, stop: int, size: int) -> list[tuple[int, int]]:
    """Split [start, stop] into consecutive closed ranges of at most ``size``."""
    return [(a, min(a + size - 1, stop)) for a in range(start, stop + 1, size)]


def run_chunks(fn: Callable[..., T], args: Sequence[tuple], workers: int = 1) -> list[T]:
    """Apply ``fn(*a)`` to every argument tuple, in order, optionally in processes.

    Results come back in input order regardless of worker scheduling.
    """
    if workers <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    workers = min(workers, len(args), os.cpu_count() or 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *a) for a in args]
        return [f.result() for f in futures]


def flatten(parts: Iterable[list[T]]) -> list[T]:
    out: list[T] = []
    for p in parts:
        out.extend(p)
    return out
