"""U, V and Hecke operators as exact coefficient transforms.

Hecke operators and progression extraction want integral exponents (grain 1);
convert eta-grain series with :func:`qgrowth.series.to_integral` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .eta import is_prime
from .series import CoefficientRing, PrecisionError, QSeries, SeriesError

INTEGER_WEIGHT = "integer-weight"
HALF_INTEGRAL = "half-integral"


class OperatorError(ValueError):
    pass


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a/n)``, extended to every integer ``n``."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol by reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class HeckeParams:
    """Weight data and real character ``d -> kronecker(character_top, d)``.

    ``weight`` is ``k`` for integer weight and ``lambda`` for weight
    ``lambda + 1/2``.
    """

    kind: Literal["integer-weight", "half-integral"]
    weight: int
    character_top: int = 1
    level: int = 1

    def __post_init__(self):
        if self.kind not in (INTEGER_WEIGHT, HALF_INTEGRAL):
            raise OperatorError(f"unknown Hecke kind {self.kind!r}")
        if self.level < 1:
            raise OperatorError("level must be positive")

    @classmethod
    def integer(cls, k: int, character_top: int = 1, level: int = 1) -> "HeckeParams":
        return cls(INTEGER_WEIGHT, k, character_top, level)

    @classmethod
    def half_integral(cls, lam: int, character_top: int = 1, level: int = 1) -> "HeckeParams":
        return cls(HALF_INTEGRAL, lam, character_top, level)


def _require_grain1(f: QSeries, what: str):
    if f.grain != 1:
        raise OperatorError(f"{what} needs integral exponents (grain 1), got grain {f.grain}")


def u_op(f: QSeries, t: int) -> QSeries:
    """``sum a(t n) q^n``."""
    if t < 1:
        raise OperatorError(f"U_t needs t >= 1, got {t}")
    if t == 1:
        return f
    lo = -(-f.offset // t)
    hi = -(-f.prec // t)
    if hi <= lo:
        raise PrecisionError(f"U_{t} leaves no known coefficients (offset {f.offset}, prec {f.prec})")
    out = [f.coeffs[t * n - f.offset] for n in range(lo, hi)]
    return QSeries(f.grain, lo, out, f.ring)


def v_op(f: QSeries, t: int) -> QSeries:
    """``sum a(n) q^(t n)``."""
    if t < 1:
        raise OperatorError(f"V_t needs t >= 1, got {t}")
    if t == 1:
        return f
    out = [0] * (len(f.coeffs) * t - (t - 1))
    out[::t] = f.coeffs
    # trailing zeros between the last stored index and t*prec are known zeros
    out.extend([0] * (t - 1))
    return QSeries(f.grain, f.offset * t, out, f.ring)


def _power_in_ring(ring: CoefficientRing, base: int, e: int) -> int:
    if e >= 0:
        return base ** e
    m = ring.modulus
    if m is None:
        raise OperatorError(f"{base}^{e} is not integral; reduce the series mod m first")
    return pow(base, e, m)


def hecke_constants(ring: CoefficientRing, prime: int, params: HeckeParams) -> tuple[int, ...]:
    """``(chi(p) p^(k-1),)`` for integer weight, ``(chi*(l) l^(lambda-1),
    chi*(l^2) l^(2 lambda-1))`` for half-integral weight."""
    if params.kind == INTEGER_WEIGHT:
        return (kronecker(params.character_top, prime) * _power_in_ring(ring, prime, params.weight - 1),)
    lam = params.weight
    sign = -1 if lam % 2 else 1

    def chi_star(x):
        return kronecker(sign, x) * kronecker(params.character_top, x)

    return (chi_star(prime) * _power_in_ring(ring, prime, lam - 1),
            chi_star(prime * prime) * _power_in_ring(ring, prime, 2 * lam - 1))


def _support_ok(f: QSeries, what: str):
    _require_grain1(f, what)
    if f.offset < 0:
        raise OperatorError(f"{what} needs a power series (offset >= 0), got offset {f.offset}")


def _a(f: QSeries, n: int) -> int:
    # n < prec is guaranteed by the conservative output precision
    return f.coeffs[n - f.offset] if n >= f.offset else 0


def hecke_integer(f: QSeries, p: int, params: HeckeParams) -> QSeries:
    """``a(p n) + chi(p) p^(k-1) a(n/p)``, known for ``n < floor(prec/p)``."""
    if params.kind != INTEGER_WEIGHT:
        raise OperatorError("hecke_integer needs integer-weight parameters")
    if not is_prime(p):
        raise OperatorError(f"{p} is not prime")
    if params.level % p == 0:
        raise OperatorError(f"p = {p} divides the level {params.level}")
    _support_ok(f, "hecke_integer")
    (c,) = hecke_constants(f.ring, p, params)
    n_out = f.prec // p
    if n_out < 1:
        raise SeriesError(f"precision {f.prec} too small for T_{p}")
    out = []
    for n in range(n_out):
        x = _a(f, p * n)
        if n % p == 0:
            x += c * _a(f, n // p)
        out.append(x)
    return QSeries(1, 0, out, f.ring)


def hecke_half_integral(f: QSeries, ell: int, params: HeckeParams) -> QSeries:
    """``T(ell^2, lambda, chi)``, known for ``m < floor(prec/ell^2)``."""
    if params.kind != HALF_INTEGRAL:
        raise OperatorError("hecke_half_integral needs half-integral parameters")
    if ell % 2 == 0 or not is_prime(ell):
        raise OperatorError(f"ell must be an odd prime, got {ell}")
    if (4 * params.level) % ell == 0:
        raise OperatorError(f"ell = {ell} divides 4 * level = {4 * params.level}")
    _support_ok(f, "hecke_half_integral")
    c1, c2 = hecke_constants(f.ring, ell, params)
    l2 = ell * ell
    n_out = f.prec // l2
    if n_out < 1:
        raise SeriesError(f"precision {f.prec} too small for T({ell}^2)")
    out = []
    for m in range(n_out):
        b_m = _a(f, m)
        x = _a(f, l2 * m) + c1 * kronecker(m, ell) * b_m
        if m % l2 == 0:
            x += c2 * _a(f, m // l2)
        out.append(x)
    return QSeries(1, 0, out, f.ring)


def apply_hecke(f: QSeries, prime: int, params: HeckeParams) -> QSeries:
    if params.kind == INTEGER_WEIGHT:
        return hecke_integer(f, prime, params)
    return hecke_half_integral(f, prime, params)


def progression_extract(f: QSeries, A: int, B: int) -> QSeries:
    """``sum_n a(A n + B) q^n`` over the known range."""
    _require_grain1(f, "progression_extract")
    if A < 1:
        raise OperatorError(f"A must be positive, got {A}")
    lo = -(-(f.offset - B) // A)
    hi = (f.prec - B - 1) // A + 1
    if hi <= lo:
        raise SeriesError(f"no terms A*n+B (A={A}, B={B}) inside [{f.offset}, {f.prec})")
    out = [f.coeffs[A * n + B - f.offset] for n in range(lo, hi)]
    return QSeries(1, lo, out, f.ring)
