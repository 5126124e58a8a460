"""Conjugacy growth series of Sym, Alt and the alternating wreath products.

``alt_series`` is ``(1/2) prod (1-q^n)^-2 + (1/2) prod (1-q^(2n))^-1``,
``wreath_alt_series(M)`` is its ``M``-th power, and ``f_M_series`` re-indexes
that power as ``(1/2 eta(12z)^-2 + 1/2 eta(24z)^-1)^M`` so that
``b_M(12 nu - M) = gamma(nu)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Literal

from . import eta as E
from . import series as S
from .operators import v_op
from .series import ZZ, CoefficientRing, QSeries, SeriesError

PARTITION_BUDGET = 60


class OracleBudgetError(ValueError):
    """An exhaustive oracle was asked for more than it is allowed to enumerate."""


@dataclass(frozen=True)
class GrowthSeriesSpec:
    family: Literal["sym", "alt", "wreath-alt"]
    prec: int
    M: int = 1

    def __post_init__(self):
        if self.family not in ("sym", "alt", "wreath-alt"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.M < 1:
            raise ValueError("M must be >= 1")

    def build(self, ring: CoefficientRing = ZZ) -> QSeries:
        if self.family == "sym":
            return partition_series(self.prec, ring)
        if self.family == "alt":
            return alt_series(self.prec, ring)
        return wreath_alt_series(self.M, self.prec, ring)


def _halving(ring: CoefficientRing, build):
    """Run ``build(r)`` in a ring where the result can be halved exactly, then halve.

    Over an even modulus ``m`` the doubled series is computed mod ``2m``.
    """
    m = ring.modulus
    if m is None or m % 2:
        return S.scalar_div_exact(build(ring), 2)
    doubled = build(S.residues(2 * m))
    odd = [c for c in doubled.coeffs if c % 2]
    if odd:
        raise SeriesError("doubled series is not even; cannot halve")
    return QSeries(doubled.grain, doubled.offset, [c // 2 for c in doubled.coeffs], ring)


def partition_series(prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``sum p(n) q^n``."""
    return S.invert(E.euler_product(prec, ring))


def even_parts_series(prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``sum p_e(m) q^m`` via ``(1/2)[prod (1-q^n)^-1 + prod (1+q^n)^-1]``."""

    def doubled(r):
        p = partition_series(prec, r)
        # prod (1+q^n)^-1 = prod (1-q^n) / prod (1-q^(2n))
        inv_plus = S.mul(E.euler_product(prec, r), v_op_trunc(partition_series(-(-prec // 2), r), 2, prec))
        return S.add(p, inv_plus)

    return _halving(ring, doubled)


def v_op_trunc(f: QSeries, t: int, prec: int) -> QSeries:
    return S.truncate(v_op(f, t), prec)


def alt_series(prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """Product closed form of the Alt conjugacy growth series."""

    def doubled(r):
        p = partition_series(prec, r)
        return S.add(S.mul(p, p), v_op_trunc(partition_series(-(-prec // 2), r), 2, prec))

    return _halving(ring, doubled)


def alt_series_convolution(prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``(sum p(n) q^n)(sum p_e(m) q^m)``."""
    return S.mul(partition_series(prec, ring), even_parts_series(prec, ring))


def alt_series_eta_form(prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``q^(1/12)(1/2 eta(z)^-2 + 1/2 eta(2z)^-1)`` computed on grain 24."""
    p24 = 24 * prec

    def doubled(r):
        # each eta-quotient starts at q^(-1/12): expand to p24 - 2, then shift by +2
        x = E.eta_quotient_expansion(E.EtaQuotient([(1, -2)]), p24 - 2, r)
        y = E.eta_quotient_expansion(E.EtaQuotient([(2, -1)]), p24 - 2, r)
        return S.shift(S.add(x, y), 2)

    return S.to_integral(_halving(ring, doubled))


def wreath_alt_series(M: int, prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``gamma_{W'_M}(n)``: the ``M``-th power of ``alt_series``."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return S.power(alt_series(prec, ring), M)


def f_M_series(M: int, prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``F_M = sum b_M(n) q^n`` from ``q^-M`` up to ``q^prec`` (exclusive)."""
    if M < 1:
        raise ValueError("M must be >= 1")
    if prec <= -M:
        raise SeriesError(f"precision must exceed the offset {-M}")
    w = wreath_alt_series(M, -(-(prec + M) // 12), ring)
    return S.truncate(S.shift(v_op(w, 12), -M), prec)


def f_M_k_quotient(M: int, k: int, level: int = 576) -> E.EtaQuotient:
    """``eta(12z)^(-2(M-k)) eta(24z)^(-k)``."""
    if not 0 <= k <= M:
        raise ValueError(f"k must satisfy 0 <= k <= M, got k={k}, M={M}")
    return E.EtaQuotient([(12, -2 * (M - k)), (24, -k)], level)


def f_M_k_term(M: int, k: int, prec: int, ring: CoefficientRing = ZZ, level: int = 576) -> QSeries:
    """Grain-1 expansion of ``F_{M,k}`` from ``q^-M`` up to ``q^prec``."""
    eq = f_M_k_quotient(M, k, level)
    return S.to_integral(E.eta_quotient_expansion(eq, 24 * prec, ring))


def f_M_binomial_sum(M: int, prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``2^-M sum_k C(M,k) F_{M,k}``, checked to be exactly divisible over Z."""
    total = None
    for k in range(M + 1):
        term = S.scalar_mul(f_M_k_term(M, k, prec, ring), comb(M, k))
        total = term if total is None else S.add(total, term)
    return S.scalar_div_exact(total, 2 ** M)


# -- exhaustive partition oracle ------------------------------------------


def iter_partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in iter_partitions(n - first, first):
            yield (first,) + rest


def oracle_partition_count(n: int, predicate: Literal["all", "even-part-count"] = "all") -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > PARTITION_BUDGET:
        raise OracleBudgetError(f"n = {n} exceeds the enumeration budget {PARTITION_BUDGET}")
    if predicate == "all":
        return sum(1 for _ in iter_partitions(n))
    if predicate in ("even", "even-part-count"):
        return sum(1 for lam in iter_partitions(n) if len(lam) % 2 == 0)
    raise ValueError(f"unknown predicate {predicate!r}")
