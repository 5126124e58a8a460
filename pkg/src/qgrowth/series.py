"""Truncated Laurent q-series with exact coefficients.

A :class:`QSeries` stores the coefficients of ``q^(n/grain)`` for
``offset <= n < prec``.  Everything below ``offset`` is zero; everything at or
above ``prec`` is unknown, and asking for it raises :class:`PrecisionError`.
Coefficients are Python integers, either exact or canonical residues.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .kernels import inv_trunc, mul_trunc


class SeriesError(ValueError):
    """Invalid series construction or incompatible operands."""


class PrecisionError(SeriesError):
    """A coefficient beyond the known precision was requested."""


@dataclass(frozen=True)
class CoefficientRing:
    """Exact integers (``modulus is None``) or residues modulo ``modulus``."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise SeriesError(f"residue modulus must be >= 2, got {self.modulus}")

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def reduce(self, x: int) -> int:
        return x if self.modulus is None else x % self.modulus

    def is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return gcd(x, self.modulus) == 1

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"

    def to_json(self):
        return "Z" if self.modulus is None else {"mod": self.modulus}

    @classmethod
    def from_json(cls, obj) -> "CoefficientRing":
        if obj == "Z":
            return ZZ
        if isinstance(obj, dict) and set(obj) == {"mod"}:
            return cls(int(obj["mod"]))
        raise SeriesError(f"unrecognised ring {obj!r}")


ZZ = CoefficientRing()


def residues(m: int) -> CoefficientRing:
    return CoefficientRing(m)


class QSeries:
    """Immutable truncated Laurent series in ``q^(1/grain)``."""

    __slots__ = ("grain", "offset", "coeffs", "ring")

    def __init__(self, grain: int, offset: int, coeffs: Iterable[int], ring: CoefficientRing = ZZ):
        if grain < 1:
            raise SeriesError(f"grain must be >= 1, got {grain}")
        cs = tuple(ring.reduce(int(c)) for c in coeffs)
        if not cs:
            raise SeriesError("a series needs at least one known coefficient")
        object.__setattr__(self, "grain", int(grain))
        object.__setattr__(self, "offset", int(offset))
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @property
    def prec(self) -> int:
        return self.offset + len(self.coeffs)

    @property
    def prec_exponent(self) -> Fraction:
        """Precision as an exponent of q (coefficients below it are known)."""
        return Fraction(self.prec, self.grain)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return (f"QSeries(grain={self.grain}, offset={self.offset}, prec={self.prec}, "
                f"ring={self.ring}, coeffs=[{head}{more}])")

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                e = Fraction(self.offset + i, self.grain)
                terms.append(f"{c}*q^{e}" if e else str(c))
        body = " + ".join(terms[:12]) or "0"
        if len(terms) > 12:
            body += " + ..."
        return f"{body} + O(q^{self.prec_exponent})"

    def __getitem__(self, n: int) -> int:
        return coefficient_at(self, n)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scalar_mul(other, -1))

    def __neg__(self):
        return scalar_mul(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return scalar_mul(self, other)
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return power(self, e)

    def __eq__(self, other):
        # representational equality; use equal_up_to for value comparisons
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.grain, self.offset, self.coeffs, self.ring) == (
            other.grain, other.offset, other.coeffs, other.ring)

    def __hash__(self):
        return hash((self.grain, self.offset, self.coeffs, self.ring))

    def nonzero_terms(self) -> list[tuple[int, int]]:
        """``(index, coefficient)`` pairs with a nonzero coefficient, grain units."""
        v = self.offset
        return [(v + i, c) for i, c in enumerate(self.coeffs) if c]

    def to_json(self) -> dict:
        return {
            "grain": self.grain,
            "offset": self.offset,
            "prec": self.prec,
            "ring": self.ring.to_json(),
            "coeffs": [str(c) for c in self.coeffs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict) -> "QSeries":
        s = cls(int(obj["grain"]), int(obj["offset"]), [int(c) for c in obj["coeffs"]],
                CoefficientRing.from_json(obj["ring"]))
        if "prec" in obj and int(obj["prec"]) != s.prec:
            raise SeriesError(f"prec {obj['prec']} inconsistent with {len(s.coeffs)} coefficients")
        return s

    @classmethod
    def loads(cls, text: str) -> "QSeries":
        return cls.from_json(json.loads(text))


def make_series(grain: int, offset: int, coeffs: Sequence[int], ring: CoefficientRing = ZZ) -> QSeries:
    return QSeries(grain, offset, coeffs, ring)


def monomial(exponent: int, prec: int, grain: int = 1, coefficient: int = 1,
             ring: CoefficientRing = ZZ) -> QSeries:
    """``coefficient * q^(exponent/grain)`` known up to ``prec`` grain units."""
    if prec <= exponent:
        raise SeriesError("precision must exceed the monomial exponent")
    return QSeries(grain, exponent, [coefficient] + [0] * (prec - exponent - 1), ring)


def zero(prec: int, offset: int = 0, grain: int = 1, ring: CoefficientRing = ZZ) -> QSeries:
    return QSeries(grain, offset, [0] * (prec - offset), ring)


def one(prec: int, grain: int = 1, ring: CoefficientRing = ZZ) -> QSeries:
    return monomial(0, prec, grain, 1, ring)


def _check_ring(a: QSeries, b: QSeries) -> CoefficientRing:
    if a.ring != b.ring:
        raise SeriesError(f"ring mismatch: {a.ring} vs {b.ring}")
    return a.ring


def rescale(a: QSeries, grain: int) -> QSeries:
    """Re-express ``a`` on a finer grain that is a multiple of its own."""
    if grain % a.grain:
        raise SeriesError(f"grain {grain} is not a multiple of {a.grain}")
    f = grain // a.grain
    if f == 1:
        return a
    out = [0] * (len(a.coeffs) * f)
    out[::f] = a.coeffs
    return QSeries(grain, a.offset * f, out, a.ring)


def regrain(a: QSeries, grain: int) -> QSeries:
    """Move ``a`` to any grain; raises if a nonzero term has no exponent there."""
    if grain == a.grain:
        return a
    if grain % a.grain == 0:
        return rescale(a, grain)
    d, e = a.grain, grain
    for n, c in a.nonzero_terms():
        if (n * e) % d:
            raise SeriesError(f"term at q^{Fraction(n, d)} is not representable on grain {grain}")
    lo = -((-a.offset * e) // d)
    hi = -((-a.prec * e) // d)
    out = []
    for k in range(lo, hi):
        num = k * d
        out.append(a.coeffs[num // e - a.offset] if num % e == 0 else 0)
    return QSeries(grain, lo, out, a.ring)


def to_integral(a: QSeries) -> QSeries:
    """Grain-1 view of a series whose support is integral."""
    return regrain(a, 1)


def _unify(a: QSeries, b: QSeries) -> tuple[QSeries, QSeries]:
    g = lcm(a.grain, b.grain)
    return rescale(a, g), rescale(b, g)


def add(a: QSeries, b: QSeries) -> QSeries:
    ring = _check_ring(a, b)
    a, b = _unify(a, b)
    lo = min(a.offset, b.offset)
    hi = min(a.prec, b.prec)
    out = [0] * (hi - lo)
    for s in (a, b):
        for i, c in enumerate(s.coeffs[: max(0, hi - s.offset)]):
            out[s.offset - lo + i] += c
    return QSeries(a.grain, lo, out, ring)


def mul(a: QSeries, b: QSeries) -> QSeries:
    ring = _check_ring(a, b)
    a, b = _unify(a, b)
    n = min(len(a.coeffs), len(b.coeffs))
    out = mul_trunc(list(a.coeffs), list(b.coeffs), n, ring.modulus or 0)
    return QSeries(a.grain, a.offset + b.offset, out, ring)


def invert(a: QSeries, out_prec: int | None = None) -> QSeries:
    """Reciprocal of ``a``; the coefficient at ``a.offset`` must be a unit.

    The result starts at ``-a.offset``; its precision is ``a.prec - 2*a.offset``
    unless ``out_prec`` asks for less.
    """
    lead = a.coeffs[0]
    if not a.ring.is_unit(lead):
        raise SeriesError(f"leading coefficient {lead} is not a unit in {a.ring}")
    n = len(a.coeffs)
    if out_prec is not None:
        n = min(n, out_prec + a.offset)
        if n < 1:
            raise PrecisionError("requested precision is below the reciprocal's offset")
    out = inv_trunc(list(a.coeffs), n, a.ring.modulus or 0)
    return QSeries(a.grain, -a.offset, out, a.ring)


def power(a: QSeries, e: int) -> QSeries:
    """``a**e`` by binary exponentiation; negative ``e`` inverts first."""
    if e < 0:
        return power(invert(a), -e)
    if e == 0:
        # precision of a^0 follows the same rule as a^e: N + (e-1)v
        return one(a.prec - a.offset, a.grain, a.ring)
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if not e:
            return result
        base = mul(base, base)


def truncate(a: QSeries, prec: int) -> QSeries:
    """Drop coefficients at or above ``prec`` grain units."""
    if prec > a.prec:
        raise PrecisionError(f"cannot extend precision {a.prec} to {prec}")
    if prec <= a.offset:
        raise PrecisionError(f"precision {prec} does not exceed offset {a.offset}")
    return QSeries(a.grain, a.offset, a.coeffs[: prec - a.offset], a.ring)


def shift(a: QSeries, k: int) -> QSeries:
    """Multiply by ``q^(k/grain)``."""
    return QSeries(a.grain, a.offset + k, a.coeffs, a.ring)


def scalar_mul(a: QSeries, c: int) -> QSeries:
    return QSeries(a.grain, a.offset, [c * x for x in a.coeffs], a.ring)


def scalar_div_exact(a: QSeries, c: int) -> QSeries:
    if c == 0:
        raise ZeroDivisionError("division by zero")
    m = a.ring.modulus
    if m is None:
        bad = next((x for x in a.coeffs if x % c), None)
        if bad is not None:
            raise SeriesError(f"coefficient {bad} is not divisible by {c}")
        return QSeries(a.grain, a.offset, [x // c for x in a.coeffs], a.ring)
    if gcd(c, m) != 1:
        raise SeriesError(f"{c} is not invertible modulo {m}")
    return scalar_mul(a, pow(c, -1, m))


def reduce_mod(a: QSeries, m: int) -> QSeries:
    """Reduce integer coefficients (or residues mod a multiple of ``m``) mod ``m``."""
    if m < 2:
        raise SeriesError(f"modulus must be >= 2, got {m}")
    if a.ring.modulus is not None and a.ring.modulus % m:
        raise SeriesError(f"cannot reduce {a.ring} to Z/{m}")
    return QSeries(a.grain, a.offset, a.coeffs, residues(m))


def coefficient_at(a: QSeries, n: int) -> int:
    """Coefficient of ``q^(n/grain)``; zero below the offset."""
    if n >= a.prec:
        raise PrecisionError(f"index {n} is beyond precision {a.prec} (grain {a.grain})")
    if n < a.offset:
        return 0
    return a.coeffs[n - a.offset]


def coefficient_of_exponent(a: QSeries, e: Fraction | int) -> int:
    """Coefficient of ``q^e`` for a rational exponent ``e``."""
    e = Fraction(e)
    n = e * a.grain
    if n.denominator != 1:
        if e >= a.prec_exponent:
            raise PrecisionError(f"exponent {e} is beyond precision {a.prec_exponent}")
        return 0
    return coefficient_at(a, int(n))


def _common_ring(a: QSeries, b: QSeries) -> tuple[QSeries, QSeries]:
    ma, mb = a.ring.modulus, b.ring.modulus
    if ma == mb:
        return a, b
    if ma is None:
        return reduce_mod(a, mb), b
    if mb is None:
        return a, reduce_mod(b, ma)
    g = gcd(ma, mb)
    if g in (ma, mb):
        return reduce_mod(a, g), reduce_mod(b, g)
    raise SeriesError(f"incompatible rings {a.ring} and {b.ring}")


def equal_up_to(a: QSeries, b: QSeries, n_max) -> bool:
    """True iff every coefficient of ``q^e`` with ``e < n_max`` agrees.

    ``n_max`` is an exponent of q (int or Fraction), not grain units.
    """
    a, b = _common_ring(a, b)
    a, b = _unify(a, b)
    bound = Fraction(n_max) * a.grain
    if bound > a.prec or bound > b.prec:
        raise PrecisionError(
            f"comparison to q^{n_max} needs precision {Fraction(n_max)}, have "
            f"{a.prec_exponent} and {b.prec_exponent}")
    hi = -((-bound.numerator) // bound.denominator)
    lo = min(a.offset, b.offset)
    return all(coefficient_at(a, n) == coefficient_at(b, n) for n in range(lo, hi))


def is_zero_up_to(a: QSeries, n_max) -> bool:
    return equal_up_to(a, zero(a.prec, a.offset, a.grain, a.ring), n_max)
