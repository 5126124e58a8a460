from fractions import Fraction

import pytest

from qgrowth import growth as G
from qgrowth import series as S
from qgrowth import treneer as T
from qgrowth.eta import EtaQuotient, eta_quotient_expansion, modularity_check
from qgrowth.operators import HeckeParams, progression_extract, u_op
from qgrowth.treneer import TreneerContext


def projection_oracle(f, p, r, n_max):
    """a(p^r n) when p does not divide n, else 0, read directly off f."""
    return [S.coefficient_at(f, p ** r * n) if n % p else 0 for n in range(n_max + 1)]


def test_u_power_basic():
    f = G.f_M_series(1, 2000)
    assert T.u_power(f, 5, 1) == u_op(f, 5)
    assert T.u_power(T.u_power(f, 5, 1), 5, 2) == T.u_power(f, 5, 3)
    g = T.u_power(f, 5, 2)
    assert all(S.coefficient_at(g, n) == S.coefficient_at(f, 25 * n) for n in range(g.prec))


def test_projection_small_support():
    p, r = 3, 1
    f = S.make_series(1, 0, [0] * 3 + [1] + [0] * 5 + [1] + [0] * 30)
    h = T.treneer_projection(f, p, r)
    assert h.nonzero_terms() == [(1, 1)]
    z = T.treneer_projection(S.zero(60), 5, 1)
    assert not z.nonzero_terms()


@pytest.mark.parametrize("p,r", [(5, 1), (5, 2), (7, 1)])
@pytest.mark.parametrize("M,k", [(1, 0), (1, 1), (2, 1)])
def test_projection_kill_keep(p, r, M, k):
    f = G.f_M_k_term(M, k, p ** r * 201)
    h = T.treneer_projection(f, p, r)
    n_max = min(200, h.prec - 1)
    assert [S.coefficient_at(h, n) for n in range(n_max + 1)] == projection_oracle(f, p, r, n_max)


@pytest.mark.parametrize("p,j,beta", [(5, 1, 0), (5, 2, 1), (7, 2, 1), (3, 1, 0), (3, 2, 1)])
def test_cusp_candidate_congruent(p, j, beta):
    f = G.f_M_series(1, p * 151)
    fp = T.treneer_projection(f, p, 1)
    cand = T.cusp_candidate(fp, TreneerContext(p, 1, j, beta), prec=150)
    assert cand.congruent and cand.modulus == p ** j
    assert S.equal_up_to(S.reduce_mod(cand.series, p ** j), fp, 150)


def test_cusp_candidate_detects_insufficient_beta():
    # beta = 0 only guarantees agreement mod p; F_{2,0} projects to a series not divisible by 5
    fp = T.treneer_projection(G.f_M_k_term(2, 0, 5 * 151), 5, 1)
    assert any(c % 5 for c in fp.coeffs)
    cand = T.cusp_candidate(fp, TreneerContext(5, 1, 1, 0), prec=150)
    assert cand.congruent
    lifted = S.reduce_mod(cand.series, 25)
    assert not S.equal_up_to(lifted, fp, 150)


def test_cusp_candidate_weight():
    M, k, p, beta = 1, 0, 5, 1
    base = modularity_check(G.f_M_k_quotient(M, k)).weight
    assert base == Fraction(k, 2) - M
    fp = T.treneer_projection(G.f_M_k_term(M, k, 5 * 60), p, 1)
    cand = T.cusp_candidate(fp, TreneerContext(p, 1, 2, beta), base_weight=base)
    assert cand.weight == Fraction(k, 2) - M + Fraction(p ** beta * (p * p - 1), 2)


def test_context_validation():
    with pytest.raises(ValueError):
        TreneerContext(2, 1, 1)
    with pytest.raises(ValueError):
        TreneerContext(5, 1, 3, beta=1)
    assert TreneerContext(5, 1, 3).beta == 2
    with pytest.raises(ValueError):
        TreneerContext(3, 1, 1).check_level(576)
    TreneerContext(5, 1, 1).check_level(576)


def test_consequence_indices():
    assert T.consequence_indices(3, "integer-weight", 30) == [3, 6, 12, 15, 21, 24, 27]
    assert T.consequence_indices(3, "half-integral", 100) == [27, 54]


def test_probe_zero_series():
    rep = T.hecke_annihilation_probe(S.zero(200), 5, HeckeParams.integer(2), 7)
    assert rep.annihilated and rep.consequences_hold


def test_probe_rejects_q_dividing_modulus():
    delta = S.to_integral(eta_quotient_expansion(EtaQuotient([(1, 24)]), 24 * 100))
    with pytest.raises(ValueError):
        T.hecke_annihilation_probe(delta, 7, HeckeParams.integer(12), 7)


def test_probe_on_extracted_series():
    """The mod-7 extraction of F_2 is killed by T_Q for Q = 11, 13, 19, 23 and the
    predicted coefficients vanish on the computed range."""
    f2 = G.f_M_series(2, 7 * 2400, S.residues(7))
    g = progression_extract(f2, 7, 0)
    top = modularity_check(EtaQuotient([(24, 10)], 576)).character_top
    for Q in (11, 13, 19, 23):
        rep = T.hecke_annihilation_probe(g, Q, HeckeParams.integer(5, top, 576), 7)
        assert rep.annihilated and rep.consequences_hold and rep.consequence_indices
    assert not T.hecke_annihilation_probe(g, 5, HeckeParams.integer(5, top, 576), 7).annihilated
