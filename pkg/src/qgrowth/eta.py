"""Dedekind eta, eta-quotients and their q-expansions.

Expansions of eta-quotients are returned on grain 24 so that the
``q^(delta/24)`` prefactors are exact.  The infinite product part is built on
grain 1 and then embedded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import series as S
from .series import ZZ, CoefficientRing, QSeries, SeriesError


class EtaQuotientError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def pentagonal_exponents(limit: int):
    """Yield ``(k, sign)`` for generalized pentagonal ``k < limit`` in increasing order."""
    yield 0, 1
    j = 1
    while True:
        k1 = j * (3 * j - 1) // 2
        if k1 >= limit:
            return
        sign = -1 if j % 2 else 1
        yield k1, sign
        k2 = j * (3 * j + 1) // 2
        if k2 < limit:
            yield k2, sign
        j += 1


def euler_product(prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``prod_{n>=1} (1 - q^n)`` on grain 1 to ``q^prec``.

    Uses Euler's pentagonal number theorem, which is exact; the direct product
    expansion is kept as a test oracle.
    """
    if prec < 1:
        raise SeriesError("precision must be >= 1")
    c = [0] * prec
    for k, sign in pentagonal_exponents(prec):
        c[k] = sign
    return QSeries(1, 0, c, ring)


def eta_expansion(prec_grain24: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``eta(z) = q^(1/24) prod (1 - q^n)`` on grain 24, known below ``prec_grain24``."""
    if prec_grain24 < 2:
        raise SeriesError("precision must exceed the q^(1/24) offset")
    return _embed24(euler_product(-(-(prec_grain24 - 1) // 24), ring), 1, prec_grain24)


def _embed24(integral: QSeries, offset24: int, prec24: int) -> QSeries:
    """Place ``q^(offset24/24) * integral(q)`` on grain 24, truncated at ``prec24``."""
    g = S.rescale(integral, 24)
    return S.truncate(S.shift(g, offset24), prec24)


@dataclass(frozen=True)
class EtaQuotient:
    """``prod eta(delta z)^r`` as sorted ``(delta, r)`` pairs, with a level."""

    factors: tuple[tuple[int, int], ...]
    level: int

    def __init__(self, factors, level: int | None = None):
        merged: dict[int, int] = {}
        for delta, r in factors:
            delta, r = int(delta), int(r)
            if delta < 1:
                raise EtaQuotientError(f"delta must be positive, got {delta}")
            merged[delta] = merged.get(delta, 0) + r
        fs = tuple(sorted((d, r) for d, r in merged.items() if r))
        if level is None:
            level = lcm(*(d for d, _ in fs)) if fs else 1
        bad = [d for d, _ in fs if level % d]
        if bad:
            raise EtaQuotientError(f"deltas {bad} do not divide level {level}")
        object.__setattr__(self, "factors", fs)
        object.__setattr__(self, "level", int(level))

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        return EtaQuotient(self.factors + other.factors, lcm(self.level, other.level))

    def __pow__(self, e: int) -> "EtaQuotient":
        return EtaQuotient([(d, r * e) for d, r in self.factors], self.level)

    @property
    def offset24(self) -> int:
        """Order at infinity in units of q^(1/24)."""
        return sum(d * r for d, r in self.factors)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"eta({d})^{r}" for d, r in self.factors)


_TERM = re.compile(r"^eta\((\d+)\)(?:\^\(?([+-]?\d+)\)?)?$")


def parse_eta_quotient(text: str, level: int | None = None) -> EtaQuotient:
    """Parse ``"eta(1)^24 * eta(25)^-1"`` (whitespace-insensitive)."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise EtaQuotientError("empty eta-quotient expression")
    factors = []
    for term in compact.split("*"):
        m = _TERM.match(term)
        if not m:
            raise EtaQuotientError(f"malformed eta factor {term!r}")
        factors.append((int(m.group(1)), int(m.group(2) or 1)))
    return EtaQuotient(factors, level)


def eta_product_integral(eq: EtaQuotient, prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """``prod (prod_n (1 - q^(delta n)))^r`` on grain 1, without the q-prefactor."""
    result = S.one(prec, 1, ring)
    for delta, r in eq.factors:
        base = euler_product(-(-prec // delta), ring)
        factor = S.power(S.invert(base) if r < 0 else base, abs(r))
        if delta > 1:
            factor = _dilate(factor, delta, prec)
        result = S.mul(result, factor)
    return result


def _dilate(f: QSeries, t: int, prec: int) -> QSeries:
    # q -> q^t on a grain-1 power series, truncated to prec
    out = [0] * prec
    for i, c in enumerate(f.coeffs):
        k = t * (f.offset + i)
        if k >= prec:
            break
        out[k] = c
    return QSeries(1, 0, out, f.ring)


def eta_quotient_expansion(eq: EtaQuotient, prec_grain24: int, ring: CoefficientRing = ZZ) -> QSeries:
    """Grain-24 expansion of ``eq`` known below ``q^(prec_grain24/24)``."""
    off = eq.offset24
    if prec_grain24 <= off:
        raise SeriesError(f"precision {prec_grain24} does not exceed the offset {off} (grain 24)")
    n_int = -(-(prec_grain24 - off) // 24)
    integral = eta_product_integral(eq, n_int, ring)
    return _embed24(integral, off, prec_grain24)


@dataclass(frozen=True)
class ModularityVerdict:
    weight_times_2: int
    cond_A: bool
    cond_B: bool
    character_top: int

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight_times_2, 2)

    @property
    def is_half_integral(self) -> bool:
        return self.weight_times_2 % 2 == 1

    @property
    def holds(self) -> bool:
        return self.cond_A and self.cond_B


def modularity_check(eq: EtaQuotient) -> ModularityVerdict:
    """The two 24-divisibility conditions, the weight and the character datum.

    The character is ``d -> kronecker(character_top, d)``.  ``s = prod delta^r``
    may be a fraction; for ``d`` coprime to the level ``(a/b | d) = (a*b | d)``,
    so the numerator times the denominator stands in for ``s``.  For
    half-integral weight the sign ``(-1)^k`` is not defined and is omitted.
    """
    w2 = sum(r for _, r in eq.factors)
    N = eq.level
    cond_a = sum(d * r for d, r in eq.factors) % 24 == 0
    cond_b = sum((N // d) * r for d, r in eq.factors) % 24 == 0
    s = Fraction(1)
    for d, r in eq.factors:
        s *= Fraction(d) ** r
    top = s.numerator * s.denominator
    if w2 % 2 == 0 and (w2 // 2) % 2:
        top = -top
    return ModularityVerdict(w2, cond_a, cond_b, top)


def f_p_quotient(p: int) -> EtaQuotient:
    """Eta-quotient congruent to 1 mod ``p``: ``eta^(p^2)(z)/eta(p^2 z)``, or
    ``eta^27(z)/eta^3(9z)`` when ``p = 3``."""
    if p % 2 == 0 or not is_prime(p):
        raise EtaQuotientError(f"p must be an odd prime, got {p}")
    if p == 3:
        return EtaQuotient([(1, 27), (9, -3)], 9)
    return EtaQuotient([(1, p * p), (p * p, -1)], p * p)


def f_p_expansion(p: int, prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """Grain-1 expansion of the ``f_p_quotient`` (its support is integral)."""
    return S.to_integral(eta_quotient_expansion(f_p_quotient(p), 24 * prec, ring))
