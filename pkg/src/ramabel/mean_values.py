"""Empirical means and exact period averages for the sieve correlations.

Every report carries a ten-checkpoint convergence trace, and periodic
summands additionally carry the exact one-period average computed in
integer/rational arithmetic, which is the finite-N-free value of the
corresponding limit.  All float reductions run over fixed-size contiguous
blocks combined in ascending order, so results are independent of the
worker count.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import singular
from .ramanujan import cq_int, cq_int_over_n
from .sieve import SieveTables

_BLOCK = 1 << 20


@dataclass
class MeanValueReport:
    label: str
    N: int
    empirical: float
    predicted: float | None
    abs_gap: float | None
    rel_gap: float | None
    trace: list[tuple[int, float]]
    exact_mean: Fraction | None = None
    extra: dict = field(default_factory=dict)

    def csv_rows(self) -> list[list]:
        rows = []
        for n_i, mean_i in self.trace:
            rows.append(
                [
                    self.label,
                    n_i,
                    mean_i,
                    "" if self.predicted is None else self.predicted,
                    "" if self.predicted is None else abs(mean_i - self.predicted),
                ]
            )
        return rows

    def to_json_dict(self) -> dict:
        d = {
            "label": self.label,
            "N": self.N,
            "empirical": self.empirical,
            "predicted": self.predicted,
            "abs_gap": self.abs_gap,
            "rel_gap": self.rel_gap,
            "trace": [[n, v] for n, v in self.trace],
        }
        if self.exact_mean is not None:
            d["exact_mean"] = str(self.exact_mean)
        d.update(self.extra)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _checkpoint_ns(N: int) -> list[int]:
    return sorted({max(1, (k * N) // 10) for k in range(1, 10)} | {N})


def _block_sums(vals: np.ndarray, threads: int) -> list[float]:
    starts = range(0, len(vals), _BLOCK)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda s: float(np.sum(vals[s : s + _BLOCK])), starts))
    return [float(np.sum(vals[s : s + _BLOCK])) for s in starts]


def _report_from_values(
    label: str,
    vals: np.ndarray,
    N: int,
    predicted: float | None,
    exact: Fraction | None = None,
    threads: int = 1,
    extra: dict | None = None,
) -> MeanValueReport:
    """Build a report from the summand array for n = 1..N.

    Block sums use a fixed block size regardless of thread count, and are
    combined in ascending order, so the result is bit-identical for any
    ``threads``.
    """
    assert len(vals) == N
    trace = []
    sums: list[float] = []
    prev = 0
    for n_i in _checkpoint_ns(N):
        sums.extend(_block_sums(vals[prev:n_i], threads))
        prev = n_i
        trace.append((n_i, math.fsum(sums) / n_i))
    empirical = trace[-1][1]
    abs_gap = None if predicted is None else abs(empirical - predicted)
    rel_gap = (
        abs_gap / abs(predicted)
        if predicted is not None and predicted != 0.0
        else None
    )
    return MeanValueReport(
        label=label,
        N=N,
        empirical=empirical,
        predicted=predicted,
        abs_gap=abs_gap,
        rel_gap=rel_gap,
        trace=trace,
        exact_mean=exact,
        extra=extra or {},
    )


def _periodic_report(
    label: str,
    period_vals: Sequence[int],
    N: int,
    predicted: float | None,
    exact: Fraction,
    extra: dict | None = None,
) -> MeanValueReport:
    """Report for a summand that is periodic in n with period len(period_vals).

    period_vals[i] is the summand at n = i + 1.  All partial sums are exact
    integers; only the final division is floating point.
    """
    L = len(period_vals)
    period_sum = sum(period_vals)
    prefix = [0]
    for v in period_vals:
        prefix.append(prefix[-1] + v)

    def total(n: int) -> int:
        return (n // L) * period_sum + prefix[n % L]

    trace = [(n_i, total(n_i) / n_i) for n_i in _checkpoint_ns(N)]
    empirical = trace[-1][1]
    abs_gap = None if predicted is None else abs(empirical - predicted)
    rel_gap = (
        abs_gap / abs(predicted)
        if predicted is not None and predicted != 0.0
        else None
    )
    return MeanValueReport(
        label=label,
        N=N,
        empirical=empirical,
        predicted=predicted,
        abs_gap=abs_gap,
        rel_gap=rel_gap,
        trace=trace,
        exact_mean=exact,
        extra=extra or {},
    )


def cq_mean(tables: SieveTables, q: int, N: int) -> MeanValueReport:
    """Mean of c_q(n) over n <= N; the limit is 1 for q = 1, else 0.

    exact_mean is the one-period average, which equals the limit exactly.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    period = [cq_int(tables, q, n) for n in range(1, q + 1)]
    exact = Fraction(sum(period), q)
    predicted = 1.0 if q == 1 else 0.0
    return _periodic_report(f"cq_mean(q={q})", period, N, predicted, exact)


def cq_orthogonality(
    tables: SieveTables, r: int, s: int, m: int, N: int
) -> MeanValueReport:
    """Mean of c_r(n) c_s(n+m); the limit is c_r(m) when r = s, else 0."""
    if r < 1 or s < 1:
        raise ValueError(f"need r, s >= 1, got r={r}, s={s}")
    L = math.lcm(r, s)
    period = [
        cq_int(tables, r, n) * cq_int(tables, s, n + m) for n in range(1, L + 1)
    ]
    exact = Fraction(sum(period), L)
    predicted = float(cq_int(tables, r, m)) if r == s else 0.0
    return _periodic_report(
        f"cq_orthogonality(r={r},s={s},m={m})", period, N, predicted, exact
    )


def polynomial_cq_mean(
    tables: SieveTables, q: int, poly: Sequence[int], N: int
) -> MeanValueReport:
    """Mean of c_q(f(n)) for integer-coefficient f; poly lists coefficients
    from the constant term upward.

    The summand is q-periodic, so the exact one-period average is the limit
    and doubles as the predicted value.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if q > tables.bound:
        raise ValueError(f"q={q} beyond table bound {tables.bound}")
    coeffs = list(poly)

    def f_mod(n: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * n + c) % q
        return acc

    by_residue = [cq_int(tables, q, f_mod(r)) for r in range(q)]
    period = [by_residue[n % q] for n in range(1, q + 1)]
    exact = Fraction(sum(by_residue), q)
    return _periodic_report(
        f"polynomial_cq_mean(q={q},poly={coeffs})", period, N, float(exact), exact
    )


def _pair_values(tables: SieveTables, h: int, N: int, weight: str) -> np.ndarray:
    if N + h > tables.bound:
        raise ValueError(f"N + h = {N + h} beyond table bound {tables.bound}")
    w = tables.lam if weight == "lambda" else tables.lam1
    return w[1 : N + 1] * w[1 + h : N + 1 + h]


def pair_autocorrelation(
    tables: SieveTables,
    h2: int,
    N: int,
    P: int = 10**6,
    weight: str = "lambda1",
    threads: int = 1,
) -> MeanValueReport:
    """Shifted autocorrelation mean at an even gap against the pair constant.

    Odd gaps are not an error; they route to the zero-limit variant.
    """
    if h2 < 1:
        raise ValueError(f"gap must be >= 1, got {h2}")
    if h2 % 2 == 1:
        return odd_gap_mean(tables, h2, N, weight=weight, threads=threads)
    predicted = singular.pair_constant(h2, P).value
    vals = _pair_values(tables, h2, N, weight)
    return _report_from_values(
        f"pair_autocorrelation(h={h2},w={weight})", vals, N, predicted, threads=threads
    )


def odd_gap_mean(
    tables: SieveTables,
    h: int,
    N: int,
    weight: str = "lambda1",
    threads: int = 1,
) -> MeanValueReport:
    """Autocorrelation mean at an odd gap; the limit is zero."""
    if h < 1 or h % 2 == 0:
        raise ValueError(f"gap must be a positive odd integer, got {h}")
    vals = _pair_values(tables, h, N, weight)
    return _report_from_values(
        f"odd_gap_mean(h={h},w={weight})", vals, N, 0.0, threads=threads
    )


def conjecture_d_mean(
    tables: SieveTables,
    a: int,
    b: int,
    l: int,
    N: int,
    P: int = 10**6,
    weight: str = "lambda1",
    threads: int = 1,
) -> MeanValueReport:
    """Mean over n <= N, restricted to a | (b n + l), of the product of
    weights at n and (b n + l)/a.

    The divisibility filter is the direct modular test; it coincides with
    the root-of-unity indicator average.
    """
    singular.validate_linear_pair(a, b, l)
    if (b * N + l) // a > tables.bound:
        raise ValueError(
            f"(b*N + l)/a = {(b * N + l) // a} beyond table bound {tables.bound}"
        )
    predicted = singular.conjecture_d_constant(a, b, l, P).value
    w = tables.lam if weight == "lambda" else tables.lam1
    ns = np.arange(1, N + 1, dtype=np.int64)
    t = b * ns + l
    hit = t % a == 0
    vals = np.zeros(N, dtype=np.float64)
    vals[hit] = w[ns[hit]] * w[t[hit] // a]
    return _report_from_values(
        f"conjecture_d_mean(a={a},b={b},l={l},w={weight})",
        vals,
        N,
        predicted,
        threads=threads,
    )


@dataclass(frozen=True)
class TupleSpec:
    """Offset tuple 0 = a_0 < a_1 < ... < a_m with its admissibility flag."""

    offsets: tuple[int, ...]
    admissible: bool
    obstructing_prime: int | None = None

    @classmethod
    def from_offsets(cls, offsets: Sequence[int]) -> "TupleSpec":
        offs = tuple(int(o) for o in offsets)
        if not offs or offs[0] != 0:
            raise ValueError(f"offsets must begin with 0, got {offs}")
        if any(o < 0 for o in offs):
            raise ValueError(f"offsets must be non-negative, got {offs}")
        if any(y <= x for x, y in zip(offs, offs[1:])):
            raise ValueError(f"offsets must be strictly increasing, got {offs}")
        bad = singular.check_admissible(offs)
        return cls(offsets=offs, admissible=bad is None, obstructing_prime=bad)

    @property
    def m(self) -> int:
        return len(self.offsets) - 1


@dataclass
class TupleMeanReport:
    """Both weightings of the tuple correlation against one predicted constant."""

    spec: TupleSpec
    lambda_weighted: MeanValueReport
    lambda1_weighted: MeanValueReport


def tuple_mean(
    tables: SieveTables,
    spec: TupleSpec,
    N: int,
    P: int = 10**6,
    threads: int = 1,
) -> TupleMeanReport:
    """Mean of the product of von Mangoldt weights over the offset tuple.

    The raw and phi(n)/n-weighted products are both reported; the raw one
    dominates the weighted one term by term, which makes the lower-bound
    chain checkable.
    """
    if not spec.admissible:
        raise ValueError(
            f"offsets {spec.offsets} inadmissible: prime "
            f"{spec.obstructing_prime} covers every residue class"
        )
    if N + spec.offsets[-1] > tables.bound:
        raise ValueError(
            f"N + max offset = {N + spec.offsets[-1]} beyond table bound {tables.bound}"
        )
    predicted = singular.tuple_constant(spec.offsets, P).value
    reports = {}
    for weight, w in (("lambda", tables.lam), ("lambda1", tables.lam1)):
        vals = np.ones(N, dtype=np.float64)
        for off in spec.offsets:
            vals *= w[1 + off : N + 1 + off]
        reports[weight] = _report_from_values(
            f"tuple_mean(offsets={spec.offsets},w={weight})",
            vals,
            N,
            predicted,
            threads=threads,
        )
    return TupleMeanReport(
        spec=spec,
        lambda_weighted=reports["lambda"],
        lambda1_weighted=reports["lambda1"],
    )


def pnt_mean(tables: SieveTables, N: int, threads: int = 1) -> MeanValueReport:
    """Mean of the weighted von Mangoldt function; the limit is 1."""
    if N > tables.bound:
        raise ValueError(f"N={N} beyond table bound {tables.bound}")
    vals = tables.lam1[1 : N + 1]
    return _report_from_values("pnt_mean", vals, N, 1.0, threads=threads)


def goldbach_correlation(tables: SieveTables, N: int, q1: int, q2: int) -> int:
    """Exact finite sum over n = 1..2N of c_{q1}(n) * c_{q2}(2N - n)."""
    if N < 1 or q1 < 1 or q2 < 1:
        raise ValueError(f"need N, q1, q2 >= 1, got N={N}, q1={q1}, q2={q2}")
    ns = np.arange(1, 2 * N + 1, dtype=np.int64)
    c1 = cq_int_over_n(tables, q1, ns)
    c2 = cq_int_over_n(tables, q2, 2 * N - ns)
    return int(np.sum(c1 * c2))
