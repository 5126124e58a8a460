"""q-expansion side of the cusp-form construction for weakly holomorphic forms.

``treneer_projection`` keeps the coefficients ``a(p^r n)`` with ``p`` not
dividing ``n``; multiplying by a power of the ``f_p_quotient`` (which is
``1 mod p``) leaves the result unchanged mod ``p^j``.  Whether the product is
really a cusp form is an analytic statement this module does not check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import series as S
from .eta import f_p_expansion, f_p_quotient, is_prime, modularity_check
from .operators import HALF_INTEGRAL, HeckeParams, apply_hecke, u_op, v_op
from .series import QSeries, SeriesError


@dataclass(frozen=True)
class TreneerContext:
    p: int
    r: int
    j: int
    beta: int | None = None

    def __post_init__(self):
        if self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.r < 1 or self.j < 1:
            raise ValueError("r and j must be positive")
        if self.beta is None:
            object.__setattr__(self, "beta", self.j - 1)
        if self.beta < self.j - 1:
            raise ValueError(f"beta must be >= j - 1 = {self.j - 1}, got {self.beta}")

    def check_level(self, level: int):
        """The construction needs ``p`` coprime to the level (576 for F_M)."""
        if level % self.p == 0:
            raise ValueError(f"p = {self.p} divides the level {level}")


def u_power(f: QSeries, p: int, r: int) -> QSeries:
    """``f | U_p`` applied ``r`` times."""
    if r < 0:
        raise ValueError("r must be >= 0")
    for _ in range(r):
        f = u_op(f, p)
    return f


def treneer_projection(f: QSeries, p: int, r: int) -> QSeries:
    """``f|U_{p^r} - f|U_{p^(r+1)}|V_p``."""
    head = u_power(f, p, r)
    tail = v_op(u_op(head, p), p)
    return S.add(head, S.scalar_mul(tail, -1))


@dataclass(frozen=True)
class CuspCandidate:
    series: QSeries
    weight: Fraction | None
    modulus: int
    congruent: bool


def cusp_candidate(f_proj: QSeries, ctx: TreneerContext, prec: int | None = None,
                   base_weight: Fraction | None = None) -> CuspCandidate:
    """``f_proj * F_p^(p^beta)`` truncated to ``prec``, with its congruence check.

    ``congruent`` reports whether the product agrees with ``f_proj`` mod
    ``p^j`` on the whole range.  The weight adds ``p^beta`` times the weight of
    ``F_p`` to ``base_weight`` when that is given.
    """
    if not f_proj.ring.is_exact:
        raise SeriesError("cusp_candidate expects a series over Z")
    if f_proj.grain != 1:
        raise SeriesError("cusp_candidate expects a grain-1 series")
    if prec is None:
        prec = f_proj.prec
    if prec > f_proj.prec:
        raise S.PrecisionError(f"f_proj is only known to {f_proj.prec}")
    span = prec - f_proj.offset
    lift = S.power(f_p_expansion(ctx.p, span), ctx.p ** ctx.beta)
    product = S.truncate(S.mul(f_proj, lift), prec)
    modulus = ctx.p ** ctx.j
    ok = S.equal_up_to(S.reduce_mod(product, modulus), S.truncate(f_proj, prec), prec)
    weight = None
    if base_weight is not None:
        w_fp = modularity_check(f_p_quotient(ctx.p)).weight
        weight = Fraction(base_weight) + ctx.p ** ctx.beta * w_fp
    return CuspCandidate(product, weight, modulus, ok)


@dataclass
class ProbeReport:
    prime: int
    modulus: int
    kind: str
    annihilated: bool
    checked_to: int
    nonzero_at: list[int] = field(default_factory=list)
    consequence_indices: list[int] = field(default_factory=list)
    consequences_hold: bool = True


def consequence_indices(prime: int, kind: str, bound: int) -> list[int]:
    """Indices ``prime^(2t+1) n`` (integer weight) or ``prime^(4t+3) n``
    (half-integral), ``prime`` not dividing ``n``, below ``bound``."""
    step = 2 if kind != HALF_INTEGRAL else 4
    e = 1 if kind != HALF_INTEGRAL else 3
    out = []
    while prime ** e < bound:
        pe = prime ** e
        out.extend(pe * n for n in range(1, (bound - 1) // pe + 1) if n % prime)
        e += step
    return sorted(out)


def hecke_annihilation_probe(f: QSeries, Q: int, params: HeckeParams, m: int) -> ProbeReport:
    """Apply the Hecke operator at ``Q`` mod ``m`` and test for vanishing.

    When it vanishes, the coefficients at the propagated indices must vanish
    too; those are checked over the precision of ``f``.
    """
    if (params.level * m) % Q == 0:
        raise ValueError(f"Q = {Q} divides level * modulus = {params.level * m}")
    g = S.reduce_mod(f, m) if f.ring.is_exact else f
    image = apply_hecke(g, Q, params)
    nonzero = [n for n, _ in image.nonzero_terms()]
    report = ProbeReport(Q, m, params.kind, not nonzero, image.prec, nonzero)
    if report.annihilated:
        idx = [n for n in consequence_indices(Q, params.kind, g.prec) if n >= g.offset]
        report.consequence_indices = idx
        report.consequences_hold = all(S.coefficient_at(g, n) == 0 for n in idx)
    return report
