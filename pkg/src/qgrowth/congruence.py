"""Checking congruences of q-series coefficients on arithmetic progressions.

Everything here is verification on a finite range.  A report that says
``holds-on-range`` means exactly that; nothing is claimed beyond ``n_max``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product

from . import eta as E
from . import growth as G
from . import series as S
from .operators import HALF_INTEGRAL, HeckeParams, apply_hecke, hecke_constants, progression_extract, u_op
from .series import ZZ, CoefficientRing, PrecisionError, QSeries, SeriesError

HOLDS = "holds-on-range"
VIOLATED = "violated"
PREMISE_FAILED = "premise-failed"


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def gamma0_index(N: int) -> int:
    """``[SL2(Z) : Gamma_0(N)] = N prod_{l | N} (1 + 1/l)``."""
    if N < 1:
        raise ValueError("level must be positive")
    idx = N
    for ell in prime_factors(N):
        idx = idx // ell * (ell + 1)
    return idx


def sturm_bound(k: int, N: int) -> int:
    if k < 1 or N < 1:
        raise ValueError("weight and level must be positive")
    return k * gamma0_index(N) // 12


# -- named series -----------------------------------------------------------


def build_named_series(series_id: str, prec: int, ring: CoefficientRing = ZZ) -> QSeries:
    """Grain-1 series for an identifier such as ``wreath-alt:2`` or ``f:2``.

    Known ids: ``partition`` (alias ``sym``), ``even-parts``, ``alt``,
    ``wreath-alt:M``, ``f:M`` (the Laurent series F_M), ``f:M:k`` (F_{M,k})
    and ``eta:<expression>`` for an eta-quotient with integral support.
    """
    name, _, arg = series_id.partition(":")
    try:
        if name in ("partition", "sym") and not arg:
            return G.partition_series(prec, ring)
        if name == "even-parts" and not arg:
            return G.even_parts_series(prec, ring)
        if name == "alt" and not arg:
            return G.alt_series(prec, ring)
        if name == "wreath-alt":
            return G.wreath_alt_series(int(arg), prec, ring)
        if name == "f":
            parts = arg.split(":")
            if len(parts) == 1:
                return G.f_M_series(int(parts[0]), prec, ring)
            return G.f_M_k_term(int(parts[0]), int(parts[1]), prec, ring)
    except ValueError as exc:
        if isinstance(exc, SeriesError):
            raise
        raise SeriesError(f"bad series id {series_id!r}: {exc}") from exc
    if name == "eta":
        eq = E.parse_eta_quotient(arg)
        return S.to_integral(E.eta_quotient_expansion(eq, 24 * prec, ring))
    raise SeriesError(f"unknown series id {series_id!r}")


# -- claims and reports -----------------------------------------------------


@dataclass(frozen=True)
class CongruenceClaim:
    """``coefficient(A n + B) = 0 mod modulus`` for ``0 <= n <= n_max``.

    ``residue_filter = (c, residues)`` restricts the claim to ``n mod c`` in
    ``residues``.
    """

    series_id: str
    A: int
    B: int
    modulus: int
    n_max: int
    residue_filter: tuple[int, tuple[int, ...]] | None = None

    def __post_init__(self):
        if self.A < 1:
            raise ValueError("A must be positive")
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if self.residue_filter is not None:
            c, rs = self.residue_filter
            object.__setattr__(self, "residue_filter", (int(c), tuple(sorted({r % c for r in rs}))))

    @property
    def top_index(self) -> int:
        return self.A * self.n_max + self.B

    def indices(self):
        for n in range(self.n_max + 1):
            if self.residue_filter is not None:
                c, rs = self.residue_filter
                if n % c not in rs:
                    continue
            yield n

    def to_json(self) -> dict:
        d = asdict(self)
        if self.residue_filter is not None:
            c, rs = self.residue_filter
            d["residue_filter"] = {"mod": c, "residues": list(rs)}
        return d


@dataclass
class CongruenceReport:
    claim: CongruenceClaim
    verified_count: int
    violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return HOLDS if not self.violations else VIOLATED

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "claim": self.claim.to_json(),
            "verdict": self.verdict,
            "violations": [[n, str(c)] for n, c in self.violations],
            "checked_to": self.claim.n_max,
        }


def verify_congruence(claim: CongruenceClaim, series: QSeries | None = None) -> CongruenceReport:
    """Check ``claim`` term by term; every violation is listed.

    Without ``series`` the named series is built mod ``claim.modulus`` to
    exactly the precision the claim needs.
    """
    m = claim.modulus
    if series is None:
        series = build_named_series(claim.series_id, claim.top_index + 1, S.residues(m))
    if series.grain != 1:
        raise SeriesError("verify_congruence needs a grain-1 series")
    if claim.top_index >= series.prec:
        raise PrecisionError(
            f"precision shortfall: claim reaches index {claim.top_index}, series known below {series.prec}")
    count = 0
    bad = []
    for n in claim.indices():
        c = S.coefficient_at(series, claim.A * n + claim.B) % m
        count += 1
        if c:
            bad.append((n, c))
    return CongruenceReport(claim, count, bad)


def _scan_rows(args):
    padded, m, A_values, n_max = args
    hits = []
    for A in A_values:
        for B in range(A):
            row = padded[B : B + A * n_max : A]
            if not any(c % m for c in row):
                hits.append((A, B))
    return hits


def scan_congruences(series: QSeries, m: int, A_max: int, n_max: int, workers: int = 1,
                     series_id: str = "<series>") -> list[CongruenceClaim]:
    """All ``(A, B)``, ``1 <= A <= A_max``, ``0 <= B < A``, whose coefficients at
    ``A n + B`` for ``0 <= n < n_max`` all vanish mod ``m``.

    Candidates only.  Each returned claim carries the inclusive bound
    ``n_max - 1`` and re-verifies with :func:`verify_congruence`.
    """
    if series.grain != 1:
        raise SeriesError("scan_congruences needs a grain-1 series")
    if A_max < 1 or n_max < 1:
        raise ValueError("A_max and n_max must be positive")
    if series.prec < A_max * n_max:
        raise PrecisionError(f"scan needs precision {A_max * n_max}, series has {series.prec}")
    top = A_max * n_max
    padded = [S.coefficient_at(series, i) for i in range(max(0, series.offset), top)]
    if series.offset > 0:
        padded = [0] * series.offset + padded
    A_values = list(range(1, A_max + 1))
    if workers > 1:
        chunks = [A_values[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan_rows, [(padded, m, ch, n_max) for ch in chunks])
            hits = [h for part in parts for h in part]
    else:
        hits = _scan_rows((padded, m, A_values, n_max))
    return [CongruenceClaim(series_id, A, B, m, n_max - 1) for A, B in sorted(hits)]


# -- propagation of Hecke annihilation ----------------------------------------------


@dataclass
class Lemma41Report:
    premises: dict[int, bool]
    checked: int = 0
    violations: list[tuple[int, int]] = field(default_factory=list)
    patterns: dict[int, str] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if not all(self.premises.values()):
            return PREMISE_FAILED
        return HOLDS if not self.violations else VIOLATED


def lemma41_bookkeeping(f: QSeries, primes_with_kinds, m: int, bound: int,
                        components: dict[str, QSeries] | None = None) -> Lemma41Report:
    """Check Hecke annihilation premises, then the propagated vanishing.

    ``primes_with_kinds`` is a list of ``(prime, HeckeParams)``.  With every
    premise ``T ≡ 0 (mod m)`` satisfied, coefficients of ``f`` at
    ``prod p^(2r+1) prod l^(4s+3) n`` must vanish for ``n`` coprime to all the
    primes.  For a mixed-weight ``f``, ``components`` maps each Hecke kind to
    the summand its operators must kill.  A prime listed with both kinds uses
    the ``l^(4s+3)`` pattern.
    """
    def mod_m(g):
        return S.reduce_mod(g, m) if g.ring.is_exact else g

    g = mod_m(f)
    premises = {}
    kinds: dict[int, str] = {}
    for prime, params in primes_with_kinds:
        target = mod_m(components[params.kind]) if components else g
        image = apply_hecke(target, prime, params)
        premises[prime] = premises.get(prime, True) and not image.nonzero_terms()
        if params.kind == HALF_INTEGRAL or prime not in kinds:
            kinds[prime] = params.kind
    report = Lemma41Report(premises, patterns={
        p: ("4s+3" if k == HALF_INTEGRAL else "2r+1") for p, k in kinds.items()})
    if report.verdict == PREMISE_FAILED or not kinds:
        return report
    limit = min(bound, g.prec)
    primes = sorted(kinds)
    exps = []
    for p in primes:
        start, step = (3, 4) if kinds[p] == HALF_INTEGRAL else (1, 2)
        es = []
        e = start
        while p ** e < limit:
            es.append(e)
            e += step
        exps.append(es)
    for combo in product(*exps):
        P = 1
        for p, e in zip(primes, combo):
            P *= p ** e
        if P >= limit:
            continue
        for n in range(1, (limit - 1) // P + 1):
            if any(n % p == 0 for p in primes):
                continue
            idx = P * n
            c = S.coefficient_at(g, idx) % m
            report.checked += 1
            if c:
                report.violations.append((idx, c))
    report.violations.sort()
    return report


def synthetic_annihilated(prime: int, params: HeckeParams, prec: int, m: int, seed: int = 0,
                          free=None) -> QSeries:
    """A series mod ``m`` killed by the Hecke operator at ``prime`` by construction.

    Coefficients off the constrained indices are random (or read from
    ``free(n)``); the rest are forced by solving ``f | T ≡ 0`` upwards.
    Integer weight: ``a(N) = 0`` when ``p || N`` and ``a(N) = -c a(N/p^2)``
    when ``p^2 | N``.  Half-integral weight: with ``N = l^2 n``,
    ``b(N) = -(c1 (n/l) b(n) + c2 b(n/l^2))``.
    """
    import random

    from .operators import kronecker

    rng = random.Random(seed)
    ring = S.residues(m)
    consts = hecke_constants(ring, prime, params)
    p2 = prime * prime
    a = [0] * prec
    for N in range(1, prec):
        if params.kind == HALF_INTEGRAL:
            if N % p2:
                a[N] = free(N) if free else rng.randrange(m)
            else:
                n = N // p2
                c1, c2 = consts
                a[N] = -(c1 * kronecker(n, prime) * a[n] + c2 * (a[n // p2] if n % p2 == 0 else 0))
        else:
            if N % prime:
                a[N] = free(N) if free else rng.randrange(m)
            elif N % p2 == 0:
                a[N] = -consts[0] * a[N // p2]
    return QSeries(1, 0, a, ring)


# -- reproductions ------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


class ReproductionFailure(AssertionError):
    def __init__(self, failed: list[CheckResult]):
        self.failed = failed
        super().__init__("failing identities: " + "; ".join(c.name for c in failed))


@dataclass
class ReproductionReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in self.checks]


def _delta_product(factors, prec: int, m: int) -> QSeries:
    """Grain-1 expansion of ``prod Delta(delta z)^e`` mod ``m`` below ``q^prec``."""
    eq = E.EtaQuotient([(d, 24 * e) for d, e in factors])
    return S.to_integral(E.eta_quotient_expansion(eq, 24 * prec, S.residues(m)))


def scalar_multiple(lhs: QSeries, rhs: QSeries, m: int, n_max) -> int | None:
    """Smallest ``c`` in ``[0, m)`` with ``lhs = c * rhs`` mod ``m`` below ``q^n_max``."""
    for c in range(m):
        if S.equal_up_to(lhs, S.scalar_mul(rhs, c), n_max):
            return c
    return None


def section6_identities(prec: int = 100, ext_prec: int = 2400):
    """The four eta-level mod-7 relations as ``(name, lhs, rhs, stated multiplier)``."""
    m = 7
    d8 = u_op(_delta_product([(1, 8)], 7 * prec, m), 7)
    d42 = u_op(_delta_product([(1, 4), (2, 2)], 7 * prec, m), 7)
    d4_2 = u_op(_delta_product([(2, 4)], 7 * prec, m), 7)
    d_2 = _delta_product([(2, 1)], prec, m)
    zero = S.zero(prec, 0, 1, S.residues(m))
    f2 = G.f_M_series(2, 7 * ext_prec, S.residues(m))
    ext = progression_extract(f2, 7, 0)
    eta10 = S.to_integral(E.eta_quotient_expansion(E.EtaQuotient([(24, 10)]), 24 * ext_prec, S.residues(m)))
    return [
        ("(i) Delta^8 | U_7 = 0 mod 7", d8, zero, 1, prec),
        ("(ii) Delta^4(z) Delta^2(2z) | U_7 = 0 mod 7", d42, zero, 1, prec),
        ("(iii) Delta^4(2z) | U_7 = 3 Delta(2z) mod 7", d4_2, d_2, 3, prec),
        ("(iv) gamma_{W'_2}((7n+2)/12) = 3 eta^10(24z) mod 7", ext, eta10, 3, ext_prec),
    ]


def example_claims(ext_prec: int = 2400, t_max: int = 90) -> list[CongruenceClaim]:
    """Claims on ``F_2`` equivalent to the mod-7 vanishing pattern of the example.

    The extracted coefficient at ``24 t + r`` is ``b_2(168 t + 7 r)``.
    """
    claims = []
    for r in range(24):
        if r == 10:
            continue
        claims.append(CongruenceClaim("f:2", 168, 7 * r, 7, (ext_prec - 1 - r) // 24))
    claims.append(CongruenceClaim("f:2", 168, 70, 7, t_max, (7, (2, 4, 5, 6))))
    return claims


def reproduce_section6(strict: bool = True, prec: int = 100, ext_prec: int = 2400) -> ReproductionReport:
    """Run the five finite checks behind the mod-7 example.

    Sub-checks (i)-(iii) compare to ``q^prec`` (the Sturm bound for the
    weight-96 level-1 form is ``sturm_bound(96, 1)`` = 8), (iv) and (v) run to
    ``q^ext_prec`` on the extracted series.  With ``strict`` a failing
    sub-check raises :class:`ReproductionFailure` naming it, after all checks ran.
    """
    checks = []
    for name, lhs, rhs, stated, bound in section6_identities(prec, ext_prec):
        observed = scalar_multiple(lhs, rhs, 7, bound)
        ok = observed == stated % 7 if any(rhs.coeffs) else S.is_zero_up_to(lhs, bound)
        if any(rhs.coeffs):
            seen = "none" if observed is None else str(observed)
            detail = f"to q^{bound}: observed multiplier {seen}, stated {stated}"
        else:
            detail = f"to q^{bound}: {'vanishes' if ok else 'nonzero coefficients'}"
        checks.append(CheckResult(name, ok, detail))
    f2 = G.f_M_series(2, 7 * ext_prec, S.residues(7))
    reports = [verify_congruence(c, f2) for c in example_claims(ext_prec)]
    n_bad = sum(len(r.violations) for r in reports)
    off_support = sum(r.verified_count for r in reports[:-1])
    on_support = reports[-1].verified_count
    checks.append(CheckResult(
        "(v) example: vanishing off n = 10 mod 24 and at t = 2,4,5,6 mod 7",
        n_bad == 0,
        f"{off_support} off-support and {on_support} on-support coefficients checked, {n_bad} violations"))
    report = ReproductionReport(checks)
    if strict and not report.passed:
        raise ReproductionFailure([c for c in checks if not c.passed])
    return report


WREATH_CLAIMS = {
    "wreath-mod5": CongruenceClaim("wreath-alt:1", 2 * 5 ** 4, 1198, 5, 3),
    "wreath-mod49": CongruenceClaim("wreath-alt:1", 2 * 7 ** 6, 225494, 49, 0),
}
