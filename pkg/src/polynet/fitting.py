"""Series analysis of exact walk counts.

Fits the growth model ``c_N ~ A mu^N N^(g-1)`` to a census and returns the
growth constant and the entropic exponent g (a configuration exponent
gamma), or fits ``R^2 ~ N^(2 nu)`` for nu.  Two independent estimators are
provided for g; the spreads are heuristics, not confidence intervals.

Censuses where only every other length is populated (polygons, or parity
constrained ensembles) are analysed on the populated sub-sequence.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .exact import Radical

__all__ = [
    "FitMethod",
    "FitResult",
    "InsufficientData",
    "NonPositiveCount",
    "fit_entropic",
    "fit_nu",
    "stable",
    "fit_report_csv",
    "fit_report_text",
]

MIN_POINTS = 8
TAIL = 5


class InsufficientData(ValueError):
    pass


class NonPositiveCount(ValueError):
    pass


class FitMethod(enum.Enum):
    THREE_POINT = "three_point"
    RATIO = "ratio"
    NU_WINDOW = "nu_window"


@dataclass(frozen=True)
class FitResult:
    mu_estimate: float
    exponent_estimate: float
    exponent_spread: float
    method: FitMethod
    window: tuple[int, int]
    sequence: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        if self.window[1] - self.window[0] < 4:
            raise ValueError("fit window must span at least 4 lengths")
        if not self.exponent_spread >= 0:
            raise ValueError("spread must be non-negative")


def _log(value) -> float:
    """Natural log of an exact count, safe beyond float range."""
    if isinstance(value, Radical):
        value = float(value)
    if isinstance(value, (int, Fraction)):
        if value <= 0:
            raise NonPositiveCount(f"count {value} is not positive")
        if isinstance(value, Fraction):
            return _log(value.numerator) - _log(value.denominator)
        bits = value.bit_length()
        if bits > 1000:
            shift = bits - 64
            return math.log(value >> shift) + shift * math.log(2)
        return math.log(value)
    value = float(value)
    if not value > 0:
        raise NonPositiveCount(f"count {value} is not positive")
    return math.log(value)


def _counts_of(census) -> Mapping[int, object]:
    return census.counts if hasattr(census, "counts") else census


def _series(counts: Mapping[int, object]) -> dict[int, float]:
    """Log counts of the longest run of positive counts ending at the top length.

    A run may advance in steps of 1 or, for censuses populated on one parity
    only, in steps of 2.
    """
    ns = sorted(n for n in counts if n >= 1)
    if not ns:
        raise InsufficientData("census is empty")
    for n in ns:
        c = counts[n]
        if c < 0:
            raise NonPositiveCount(f"count at N={n} is negative")
    positive = [n for n in ns if counts[n] != 0]
    if not positive:
        raise NonPositiveCount("no positive counts")
    top = positive[-1]
    step = 1 if counts.get(top - 1, 0) != 0 else 2
    seq = [top]
    while counts.get(seq[-1] - step, 0) != 0:
        seq.append(seq[-1] - step)
    if len(seq) < MIN_POINTS:
        raise InsufficientData(
            f"need {MIN_POINTS} consecutive positive counts, found {len(seq)} ending at N={top}")
    return {n: _log(counts[n]) for n in sorted(seq)}


def _linear_in_inverse(ns: Sequence[int], values: Sequence[float]) -> tuple[float, float]:
    """Least-squares fit value = a + b/N; returns (a, b)."""
    x = np.array([1.0 / n for n in ns])
    A = np.vstack([np.ones_like(x), x]).T
    sol, *_ = np.linalg.lstsq(A, np.array(values, dtype=float), rcond=None)
    return float(sol[0]), float(sol[1])


# Every estimator below only combines lengths of equal parity (N, N-2, N-4).
# Bipartite lattices carry an alternating correction from the singularity at
# -mu, which cancels within a parity class but not between neighbours.
_STRIDE = 2


def _three_point(logs: dict[int, float]) -> FitResult:
    gs = []
    logmu = []
    for n in logs:
        ks = (n - 2 * _STRIDE, n - _STRIDE, n)
        if not all(k in logs for k in ks):
            continue
        A = np.array([[k, math.log(k), 1.0] for k in ks])
        sol = np.linalg.solve(A, np.array([logs[k] for k in ks]))
        logmu.append((n, float(sol[0])))
        gs.append((n, float(sol[1]) + 1.0))
    if len(gs) < TAIL:
        raise InsufficientData("too few lengths for the three-point fit")
    tail = gs[-TAIL:]
    intercept, _ = _linear_in_inverse([n for n, _ in tail], [g for _, g in tail])
    spread = max(abs(g - intercept) for _, g in tail)
    mu0, _ = _linear_in_inverse([n for n, _ in logmu[-TAIL:]], [m for _, m in logmu[-TAIL:]])
    window = (tail[0][0] - 2 * _STRIDE, tail[-1][0])
    return FitResult(math.exp(mu0), intercept, spread, FitMethod.THREE_POINT, window, tuple(gs))


def _neville(seq: dict[int, float], levels: int) -> dict[int, float]:
    """Neville table in x = 1/N, extrapolated to x = 0; entry N uses N, N-2, ..., N-2*levels."""
    for k in range(1, levels + 1):
        h = k * _STRIDE
        seq = {n: (n * v - (n - h) * seq[n - _STRIDE]) / h
               for n, v in seq.items() if n - _STRIDE in seq}
    return seq


def _ratio(logs: dict[int, float]) -> FitResult:
    # r_N = (c_N / c_{N-2})^(1/2) ~ mu (1 + (g-1)/N + ...)
    rs = {n: math.exp((v - logs[n - _STRIDE]) / _STRIDE)
          for n, v in logs.items() if n - _STRIDE in logs}
    mus = _neville(rs, 2)
    if len(mus) < 2:
        raise InsufficientData("too few lengths for the ratio fit")
    last = sorted(mus)[-2:]
    mu_hat = sum(mus[n] for n in last) / len(last)
    gs = {n: 1.0 + n * (r / mu_hat - 1.0) for n, r in rs.items()}
    ext = sorted(_neville(gs, 1).items())
    if len(ext) < TAIL:
        raise InsufficientData("too few lengths for the ratio fit")
    tail = ext[-TAIL:]
    vals = [g for _, g in tail]
    estimate = sum(vals[-2:]) / 2
    spread = max(vals) - min(vals)
    window = (tail[0][0] - 2 * _STRIDE, tail[-1][0])
    return FitResult(mu_hat, estimate, spread, FitMethod.RATIO, window, tuple(ext))


def fit_entropic(census, method: Union[FitMethod, str] = FitMethod.THREE_POINT) -> FitResult:
    """Fit c_N ~ A mu^N N^(g-1); the exponent estimate is g.

    ``census`` may be a WalkCensus, a CSV census, or a plain mapping N -> count.
    """
    method = FitMethod(method)
    logs = _series(_counts_of(census))
    if method is FitMethod.THREE_POINT:
        return _three_point(logs)
    if method is FitMethod.RATIO:
        return _ratio(logs)
    raise ValueError(f"{method} is not an entropic fit method")


def fit_nu(census, r2_sums: Optional[Mapping[int, object]] = None) -> FitResult:
    """Fit R^2(N) = r2_sum / count ~ N^(2 nu).

    Local slopes of log R^2 against log N over 3-point windows, halved, then
    extrapolated linearly in 1/N over the last five.
    """
    counts = _counts_of(census)
    if r2_sums is None:
        r2_sums = getattr(census, "r2_sums", None)
    if r2_sums is None:
        raise InsufficientData("census has no end-to-end moments")
    ns = sorted(n for n in counts if n >= 1 and counts[n] != 0 and n in r2_sums)
    if len(ns) < MIN_POINTS:
        raise InsufficientData(f"need {MIN_POINTS} lengths with moments, found {len(ns)}")
    logR = {}
    for n in ns:
        logR[n] = _log(r2_sums[n]) - _log(counts[n])
    nus = []
    for i in range(2, len(ns)):
        w = ns[i - 2: i + 1]
        x = np.log(np.array(w, dtype=float))
        y = np.array([logR[k] for k in w])
        slope = np.polyfit(x, y, 1)[0]
        nus.append((ns[i], 0.5 * float(slope)))
    tail = nus[-TAIL:]
    intercept, _ = _linear_in_inverse([n for n, _ in tail], [v for _, v in tail])
    spread = max(abs(v - intercept) for _, v in tail)
    window = (ns[len(ns) - TAIL - 2], ns[-1])
    mu = float("nan")
    try:
        mu = fit_entropic(counts, FitMethod.THREE_POINT).mu_estimate
    except (InsufficientData, NonPositiveCount):
        pass
    return FitResult(mu, intercept, spread, FitMethod.NU_WINDOW, window, tuple(nus))


def stable(a: FitResult, b: FitResult) -> bool:
    """Two estimates agree within their combined spreads."""
    return abs(a.exponent_estimate - b.exponent_estimate) <= a.exponent_spread + b.exponent_spread


def fit_report_csv(rows: Sequence[tuple[str, FitResult]]) -> str:
    lines = ["quantity,estimate,spread,method,window"]
    for name, r in rows:
        lines.append(f"{name},{r.exponent_estimate:.6f},{r.exponent_spread:.6f},"
                     f"{r.method.value},{r.window[0]}-{r.window[1]}")
    return "\n".join(lines) + "\n"


def fit_report_text(rows: Sequence[tuple[str, FitResult]]) -> str:
    lines = []
    for name, r in rows:
        lines.append(f"{name:>10} = {r.exponent_estimate:.5f} +- {r.exponent_spread:.5f}"
                     f"  [{r.method.value}, N={r.window[0]}..{r.window[1]}, mu={r.mu_estimate:.5f}]")
    return "\n".join(lines) + "\n"
