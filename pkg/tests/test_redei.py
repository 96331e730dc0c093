from math import gcd

import pytest
from hypothesis import given, strategies as st

from redeiperm.errors import NotOnUnitCircle, PoleEncountered
from redeiperm.field import (
    BETA, BETA1, INF, ONE, ZERO, Fq2Element, enumerate_fq2, enumerate_fq2_star, enumerate_mu,
    fq2_add, fq2_inv, fq2_mul, fq2_pow, make_context,
)
from redeiperm.redei import (
    ParityPoly, a_coeff, binom_parity, g_map, gprime_map, lemma4_identity, mn_closed,
    mn_recursive, no_root_on_mu, phi, phi_inv, redei_eval, redei_projective, rho, rho_inv,
)

from oracles import parity_binomial


def expand_power(ctx, c, n):
    """Coefficients (low first) of (x + c)^n in GF(q^2)[x] by repeated multiplication."""
    poly = [ONE]
    for _ in range(n):
        nxt = [ZERO] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i + 1] = fq2_add(ctx, nxt[i + 1], a)
            nxt[i] = fq2_add(ctx, nxt[i], fq2_mul(ctx, a, c))
        poly = nxt
    return poly


def oracle_mn(ctx, n):
    """(M_n, N_n) from their defining expressions, as exponent tuples."""
    u = expand_power(ctx, BETA1, n)
    v = expand_power(ctx, BETA, n)
    m_coeffs = [fq2_add(ctx, a, b) for a, b in zip(u, v)]
    n_coeffs = [fq2_add(ctx, fq2_mul(ctx, BETA, a), fq2_mul(ctx, BETA1, b)) for a, b in zip(u, v)]
    for c in m_coeffs + n_coeffs:
        assert c in (ZERO, ONE)
    exps = lambda cs: tuple(e for e in range(n, -1, -1) if cs[e] == ONE)
    return exps(m_coeffs), exps(n_coeffs)


def test_binom_parity_examples():
    assert binom_parity(7, 0) == 1
    assert binom_parity(5, 2) == parity_binomial(5, 2) == 0
    assert binom_parity(10, 2) == parity_binomial(10, 2) == 1
    assert binom_parity(3, 5) == 0


def test_binom_parity_vs_pascal():
    rows = [[1]]
    for n in range(1, 65):
        rows.append([1] + [(rows[-1][i - 1] + rows[-1][i]) % 2 for i in range(1, n)] + [1])
    for n in range(65):
        for i in range(65):
            assert binom_parity(n, i) == (rows[n][i] if i <= n else 0)


def test_a_coeff():
    assert [a_coeff(i) for i in (0, 1, 6)] == [0, 1, 0]
    assert [a_coeff(i) for i in range(7)] == [0, 1, 1, 0, 1, 1, 0]


@pytest.mark.parametrize("t", [3, 5])
def test_a_and_b_against_tower(t):
    ctx = make_context(t)
    for i in range(201):
        bi, b1i = fq2_pow(ctx, BETA, i), fq2_pow(ctx, BETA1, i)
        assert fq2_add(ctx, bi, b1i) == (a_coeff(i), 0)
        assert fq2_add(ctx, fq2_mul(ctx, BETA1, bi), fq2_mul(ctx, BETA, b1i)) == (a_coeff(i + 2), 0)


def test_mn_closed_examples():
    zero = mn_closed(0)
    assert (zero.m_poly, zero.n_poly) == (ParityPoly(()), ParityPoly((0,)))
    assert str(mn_closed(5).m_poly) == "x^4 + x + 1"
    assert str(mn_closed(10).n_poly) == "x^10 + x^8 + x^2"


def test_mn_recursive_examples():
    one = mn_recursive(1)
    assert (str(one.m_poly), str(one.n_poly)) == ("1", "x")
    assert str(mn_recursive(2).m_poly) == "1"


def test_mn_against_expansion(ctx3):
    for n in range(0, 41):
        m_exps, n_exps = oracle_mn(ctx3, n)
        pair = mn_closed(n)
        assert pair.m_poly.exponents == m_exps
        assert pair.n_poly.exponents == n_exps


def test_closed_equals_recursive():
    for n in range(0, 1025, 7):
        assert mn_closed(n) == mn_recursive(n)


def test_degrees():
    for n in range(1, 300):
        pair = mn_closed(n)
        assert pair.n_poly.degree == n
        assert pair.m_poly.degree <= n - 1
        assert (pair.m_poly.degree == n - 1) == (n % 2 == 1)


def test_splitting_identity_t3(ctx3):
    for n in range(0, 51):
        pair = mn_closed(n)
        for x in enumerate_fq2(ctx3):
            mv, nv = pair.m_poly.evaluate(ctx3, x), pair.n_poly.evaluate(ctx3, x)
            assert fq2_pow(ctx3, fq2_add(ctx3, x, BETA), n) == fq2_add(ctx3, nv, fq2_mul(ctx3, BETA, mv))
            assert fq2_pow(ctx3, fq2_add(ctx3, x, BETA1), n) == fq2_add(ctx3, nv, fq2_mul(ctx3, BETA1, mv))


def test_parity_poly_serialisation():
    p = ParityPoly((4, 1, 0))
    assert str(p) == "x^4 + x + 1"
    assert p.to_json() == '{"exponents": [4, 1, 0]}'
    assert ParityPoly.from_json(p.to_json()) == p
    assert ParityPoly.parse(str(p)) == p
    assert str(ParityPoly()) == "0" and ParityPoly.parse("0") == ParityPoly()
    assert ParityPoly((3, 1)) + ParityPoly((1, 0)) == ParityPoly((3, 0))
    with pytest.raises(ValueError):
        ParityPoly((1, 4))


@given(st.sets(st.integers(0, 40)))
def test_parity_poly_roundtrip(exps):
    p = ParityPoly(tuple(sorted(exps, reverse=True)))
    assert ParityPoly.parse(str(p)) == p
    assert ParityPoly.from_bits(p.bits) == p


def test_redei_eval_at_one(ctx3):
    for n in range(1, 40):
        if n % 3 == 1:
            assert redei_eval(ctx3, ONE, n) == ONE
        elif n % 3 == 2:
            assert redei_eval(ctx3, ONE, n) == ZERO
        else:
            with pytest.raises(PoleEncountered):
                redei_eval(ctx3, ONE, n)


def test_redei_eval_n5_on_mu(ctx3):
    # Exhaustive evaluation: R_5 is injective on mu_9 but its image is
    # (mu_9 + 1), not mu_9; R_5 + 1 is the permutation of mu_9.
    mu = enumerate_mu(ctx3)
    image = [redei_eval(ctx3, x, 5) for x in mu]
    assert len(set(image)) == 9
    assert set(image) != set(mu)
    assert ZERO in image
    assert sorted(fq2_add(ctx3, y, ONE) for y in image) == sorted(mu)


def test_redei_projective_identity(ctx3):
    for p in [INF, *range(8)]:
        assert redei_projective(ctx3, p, 1) == p


def test_redei_projective_matches_formula(ctx3):
    for n in range(1, 30):
        for x in range(8):
            got = redei_projective(ctx3, x, n)
            try:
                want = redei_eval(ctx3, Fq2Element(x, 0), n)
            except PoleEncountered:
                assert got is INF
            else:
                assert want.c1 == 0 and got == want.c0


@pytest.mark.parametrize("t", [3, 5])
def test_redei_projective_bijective_iff(t):
    ctx = make_context(t)
    domain = [INF, *range(ctx.q)]
    for n in range(1, 3 * (ctx.q - 1) + 1):
        image = {redei_projective(ctx, p, n) for p in domain}
        assert (len(image) == len(domain)) == (gcd(n, ctx.q + 1) == 1), n


def test_redei_projective_n3_collides(ctx3):
    image = [redei_projective(ctx3, p, 3) for p in [INF, *range(8)]]
    assert len(set(image)) < 9


def test_phi(ctx3):
    assert phi(ctx3, INF) == ONE
    assert phi_inv(ctx3, ONE) is INF
    domain = [INF, *range(8)]
    assert sorted(phi(ctx3, p) for p in domain) == sorted(enumerate_mu(ctx3))
    for p in domain:
        assert phi_inv(ctx3, phi(ctx3, p)) == p
    for y in enumerate_mu(ctx3):
        assert phi(ctx3, phi_inv(ctx3, y)) == y
        assert rho(ctx3, rho_inv(ctx3, y)) == y
        assert phi(ctx3, phi_inv(ctx3, y)) == fq2_inv(ctx3, rho(ctx3, phi_inv(ctx3, y)))
    with pytest.raises(NotOnUnitCircle):
        phi_inv(ctx3, Fq2Element(2, 0))
    with pytest.raises(NotOnUnitCircle):
        rho_inv(ctx3, ZERO)


def test_g_maps(ctx3):
    assert (g_map(ctx3, 0, 5), g_map(ctx3, 1, 5)) == (0, 1)
    assert (gprime_map(ctx3, 0, 5), gprime_map(ctx3, 1, 5)) == (1, 0)
    assert sorted(g_map(ctx3, x, 5) for x in range(8)) == list(range(8))
    assert sorted(gprime_map(ctx3, x, 5) for x in range(8)) == list(range(8))


def test_g_pole(ctx3):
    # gcd(7, 7) != 1: x^7 = (x+1)^7 = 1 for x not in {0, 1}
    with pytest.raises(PoleEncountered):
        g_map(ctx3, 2, 7)


@pytest.mark.parametrize("t", [3, 5])
def test_conjugated_redei_is_g(t):
    # phi^-1 ∘ R_n ∘ phi = g (n = 1 mod 3) and phi^-1 ∘ (R_n + 1) ∘ phi = g' (n = 2 mod 3)
    ctx = make_context(t)
    for n in range(1, 3 * (ctx.q - 1)):
        if gcd(n, ctx.q2 - 1) != 1:
            continue
        assert phi_inv(ctx, redei_eval(ctx, phi(ctx, INF), n) if n % 3 == 1
                       else fq2_add(ctx, redei_eval(ctx, ONE, n), ONE)) is INF
        for x in range(ctx.q):
            r = redei_eval(ctx, phi(ctx, x), n)
            if n % 3 == 1:
                assert phi_inv(ctx, r) == g_map(ctx, x, n)
            else:
                assert phi_inv(ctx, fq2_add(ctx, r, ONE)) == gprime_map(ctx, x, n)


def test_no_root_examples(ctx3):
    assert not no_root_on_mu(ctx3, "M", 5).has_roots
    assert not no_root_on_mu(ctx3, "N", 13).has_roots
    rep = no_root_on_mu(ctx3, "M", 1)
    assert not rep.has_roots and rep.checked == 9


def test_no_root_reports_roots(ctx3):
    # M_3 = x^2 + x vanishes at 1, which lies on mu_9
    rep = no_root_on_mu(ctx3, "M", 3)
    assert ONE in rep.roots


def test_lemma3_quantified_t3(ctx3):
    star = list(enumerate_fq2_star(ctx3))
    for n in range(1, 22):
        if gcd(n, 63) != 1:
            continue
        assert not no_root_on_mu(ctx3, "M", n).has_roots
        assert not no_root_on_mu(ctx3, "M", n, star).has_roots
        if n % 3 == 1:
            assert not no_root_on_mu(ctx3, "N", n).has_roots
            assert not no_root_on_mu(ctx3, "N", n, star).has_roots


@pytest.mark.parametrize("n,m,case", [(1, 0, 1), (2, 1, 2), (4, 0, 4), (7, 3, 1), (11, 2, 2), (13, 5, 4)])
def test_lemma4_examples(ctx3, n, m, case):
    rep = lemma4_identity(ctx3, n, m, case)
    assert rep.holds and rep.checked == 9 and not rep.skipped


def test_lemma4_case3_skips_are_reported(ctx3):
    rep = lemma4_identity(ctx3, 3, 1, 3)
    assert rep.holds
    assert rep.skipped and rep.checked + len(rep.skipped) == 9


def test_lemma4_rejects_wrong_residue(ctx3):
    with pytest.raises(ValueError):
        lemma4_identity(ctx3, 2, 1, 1)
    with pytest.raises(ValueError):
        lemma4_identity(ctx3, 1, 1, 5)
