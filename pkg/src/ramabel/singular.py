"""Hardy-Littlewood singular-series constants via truncated Euler products.

All products are evaluated in log space with exact (fsum) compensation over
the prime factors up to a truncation bound P, and each result carries a
rigorous estimate of the omitted factors' log-contribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .sieve import SieveTables, primes_up_to

TWIN_CONSTANT_REFERENCE = 0.6601618158


@dataclass(frozen=True)
class SingularConstant:
    value: float
    truncation_prime: int
    tail_estimate: float
    form: str
    extra: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        d = {
            "form": self.form,
            "value": self.value,
            "truncation_prime": self.truncation_prime,
            "tail_estimate": self.tail_estimate,
        }
        d.update(self.extra)
        return d


def twin_constant(P: int) -> SingularConstant:
    """prod over odd primes p <= P of (1 - 1/(p-1)^2).

    Tail: sum over p > P of 1/(p-1)^2 is below 1/(P-1).
    """
    if P < 3:
        raise ValueError(f"P must be >= 3, got {P}")
    p = primes_up_to(P)[1:].astype(np.float64)  # drop p = 2
    logs = np.log1p(-1.0 / (p - 1.0) ** 2)
    value = math.exp(math.fsum(logs.tolist()))
    return SingularConstant(
        value=value, truncation_prime=P, tail_estimate=1.0 / (P - 1), form="C2"
    )


def _odd_prime_factors(n: int) -> list[int]:
    out = []
    n = abs(n)
    while n % 2 == 0:
        n //= 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        out.append(n)
    return out


def pair_constant(h2: int, P: int) -> SingularConstant:
    """2 C2 * prod over odd primes p | h2 of (p-1)/(p-2); even gaps only."""
    if h2 < 2 or h2 % 2 != 0:
        raise ValueError(f"pair constant is defined for even gaps, got {h2}")
    c2 = twin_constant(P)
    value = 2.0 * c2.value
    for p in _odd_prime_factors(h2):
        value *= (p - 1.0) / (p - 2.0)
    return SingularConstant(
        value=value,
        truncation_prime=P,
        tail_estimate=c2.tail_estimate,
        form=f"pair({h2})",
    )


def validate_linear_pair(a: int, b: int, l: int) -> None:
    """Hypotheses for the a*p - b*p' = l prime-pair family.

    Positive, pairwise coprime, exactly one even.  Distinctness is not
    enforced: the classical twin (1, 1, 2) and Sophie Germain (1, 2, 1)
    special cases repeat a value.
    """
    if min(a, b, l) < 1:
        raise ValueError(f"(a, b, l) must be positive, got ({a}, {b}, {l})")
    for u, v, names in ((a, b, "(a, b)"), (a, l, "(a, l)"), (b, l, "(b, l)")):
        if math.gcd(u, v) != 1:
            raise ValueError(f"{names} must be coprime, got ({a}, {b}, {l})")
    evens = sum(1 for v in (a, b, l) if v % 2 == 0)
    if evens != 1:
        raise ValueError(
            f"exactly one of (a, b, l) must be even, got ({a}, {b}, {l})"
        )


def conjecture_d_constant(a: int, b: int, l: int, P: int) -> SingularConstant:
    """(2 C2 / a) * prod over odd primes p dividing a, b, or l of (p-1)/(p-2)."""
    validate_linear_pair(a, b, l)
    c2 = twin_constant(P)
    value = 2.0 * c2.value / a
    ps = sorted(set(_odd_prime_factors(a)) | set(_odd_prime_factors(b)) | set(_odd_prime_factors(l)))
    for p in ps:
        value *= (p - 1.0) / (p - 2.0)
    return SingularConstant(
        value=value,
        truncation_prime=P,
        tail_estimate=c2.tail_estimate,
        form=f"conjD({a},{b},{l})",
    )


def distinct_residues(offsets: Sequence[int], p: int) -> int:
    """Number of distinct residues of the offset tuple mod p."""
    return len({o % p for o in offsets})


def check_admissible(offsets: Sequence[int]) -> int | None:
    """Return the obstructing prime if some p covers every residue, else None."""
    for p in primes_up_to(max(offsets) + 1 if max(offsets) >= 1 else 2):
        p = int(p)
        if distinct_residues(offsets, p) == p:
            return p
    return None


def tuple_constant(offsets: Sequence[int], P: int) -> SingularConstant:
    """prod over p <= P of (p/(p-1))^m * (p - nu)/(p - 1) for an offset tuple.

    offsets must be strictly increasing and start at 0; m counts the
    offsets beyond the leading 0.  nu is the number of distinct residues
    of the tuple mod p, which equals m + 1 once p exceeds every offset.
    """
    offsets = tuple(offsets)
    if not offsets or offsets[0] != 0:
        raise ValueError(f"offsets must start with 0, got {offsets}")
    if any(b <= a for a, b in zip(offsets, offsets[1:])):
        raise ValueError(f"offsets must be strictly increasing, got {offsets}")
    bad = check_admissible(offsets)
    if bad is not None:
        raise ValueError(
            f"offsets {offsets} are inadmissible: prime {bad} covers every residue"
        )
    m = len(offsets) - 1
    if m == 0:
        return SingularConstant(
            value=1.0, truncation_prime=P, tail_estimate=0.0, form="tuple(0,)"
        )
    small_cut = max(offsets[-1], m + 1)
    if P < small_cut:
        raise ValueError(f"P={P} too small; need P >= {small_cut}")
    ps = primes_up_to(P)
    logs = []
    for p in ps[ps <= small_cut]:
        p = int(p)
        nu = distinct_residues(offsets, p)
        logs.append(
            m * math.log(p / (p - 1.0)) + math.log((p - nu) / (p - 1.0))
        )
    big = ps[ps > small_cut].astype(np.float64)
    if big.size:
        vec = m * np.log(big / (big - 1.0)) + np.log((big - (m + 1.0)) / (big - 1.0))
        logs.extend(vec.tolist())
    value = math.exp(math.fsum(logs))
    tail = 2.0 * m * (m + 1) / (P - 1)
    return SingularConstant(
        value=value,
        truncation_prime=P,
        tail_estimate=tail,
        form=f"tuple{offsets}",
    )


def series_constant(
    h: int,
    P: int,
    tables: SieveTables | None = None,
    raw_Q: int = 0,
) -> SingularConstant:
    """Value of the mu(q)/phi(q)-weighted Ramanujan series at gap h.

    The q-ordered series is only conditionally convergent, so the value is
    computed through the absolutely convergent diagonal rearrangement
        prod_p (1 + c_p(h) / (p-1)^2),
    which equals the pair constant at even h and vanishes at odd h.  The
    literal prime-by-prime product of the raw coefficients,
    prod_p (1 + mu(p) c_p(h) / phi(p)), does not converge to the series'
    value (its p = 2 factor vanishes at even h); it is reported in
    ``extra["naive_product"]`` as a finding.  A truncated raw q-sum is
    attached as a diagnostic when ``raw_Q`` > 0 and tables are supplied.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    ps = primes_up_to(P)
    logs = []
    naive_logs = []
    value_is_zero = False
    naive_is_zero = False
    for p in ps:
        p = int(p)
        cp = p - 1 if h % p == 0 else -1
        diag = 1.0 + cp / (p - 1.0) ** 2
        if diag == 0.0:
            value_is_zero = True
        else:
            logs.append(math.log(diag))
        naive = 1.0 - cp / (p - 1.0)  # mu(p) = -1
        if naive == 0.0:
            naive_is_zero = True
        else:
            naive_logs.append(math.log(naive))
    value = 0.0 if value_is_zero else math.exp(math.fsum(logs))
    naive = 0.0 if naive_is_zero else math.exp(math.fsum(naive_logs))
    extra = {"naive_product": naive}
    if raw_Q > 0:
        if tables is None or tables.bound < raw_Q:
            raise ValueError(f"raw diagnostic needs sieve tables covering q <= {raw_Q}")
        from .ramanujan import cq_int_over_q

        qs = np.arange(1, raw_Q + 1, dtype=np.int64)
        c = cq_int_over_q(tables, qs, h).astype(np.float64)
        coef = tables.mu[1 : raw_Q + 1].astype(np.float64) / tables.phi[1 : raw_Q + 1]
        extra["raw_sum"] = math.fsum((coef * c).tolist())
        extra["raw_Q"] = raw_Q
    return SingularConstant(
        value=value,
        truncation_prime=P,
        tail_estimate=2.0 / (P - 1),
        form=f"series({h})",
        extra=extra,
    )


def series_wk(tables: SieveTables, h: int, Q: int) -> SingularConstant:
    """Direct q-sum of the squared-coefficient series sum mu(q)^2/phi(q)^2 c_q(h).

    Absolutely convergent, so the plain truncation is meaningful; the tail
    estimate scales sigma(h) by an empirical bound on sum_{q>Q} 1/phi(q)^2.
    """
    if h < 1 or Q < 1:
        raise ValueError(f"need h >= 1 and Q >= 1, got h={h}, Q={Q}")
    if Q > tables.bound:
        raise ValueError(f"Q={Q} beyond table bound {tables.bound}")
    from .ramanujan import cq_int_over_q

    qs = np.arange(1, Q + 1, dtype=np.int64)
    c = cq_int_over_q(tables, qs, h).astype(np.float64)
    musq = (tables.mu[1 : Q + 1].astype(np.float64)) ** 2
    phisq = tables.phi[1 : Q + 1].astype(np.float64) ** 2
    value = math.fsum((musq / phisq * c).tolist())
    sigma_h = sum(d for d in range(1, h + 1) if h % d == 0)
    # sum_{q>Q} 1/phi(q)^2 ~ 2.2/Q; doubled for slack.
    tail = sigma_h * 4.4 / Q
    return SingularConstant(
        value=value,
        truncation_prime=Q,
        tail_estimate=tail,
        form=f"series_wk({h})",
    )
