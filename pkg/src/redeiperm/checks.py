"""Exhaustive invariant suites.  Each check returns a ``CheckResult``; the
CLI ``lemmas`` and ``selftest`` commands are thin loops over these."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from . import golden
from .construct import (
    ConstructionParams,
    agw_commutes,
    brute_force_is_permutation,
    build_poly,
    build_unreduced,
    canonical_params,
    generate_table,
    qualifying_n,
    theorem7_unit_identity,
    theorem_predicate,
)
from .field import (
    BETA,
    BETA1,
    INF,
    ONE,
    ZERO,
    FieldContext,
    Fq2Element,
    enumerate_fq2,
    enumerate_fq2_star,
    enumerate_mu,
    fq2_add,
    fq2_inv,
    fq2_mul,
    fq2_pow,
    fq_pow,
    frobenius,
)
from .redei import (
    FAMILIES,
    a_coeff,
    binom_parity,
    iter_mn_bits,
    lemma3_applies,
    lemma4_cases_for,
    lemma4_identity,
    mn_closed,
    no_root_on_mu,
    redei_projective,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name}" + (f": {self.detail}" if self.detail else "")


def _first(bad, limit=3) -> str:
    return ", ".join(str(b) for b in bad[:limit]) + (" ..." if len(bad) > limit else "")


# --- field core -------------------------------------------------------------

def check_ring_axioms(ctx: FieldContext) -> CheckResult:
    els = list(enumerate_fq2(ctx))
    bad = 0
    for a, b in product(els, repeat=2):
        ab = fq2_mul(ctx, a, b)
        if ab != fq2_mul(ctx, b, a) or fq2_add(ctx, a, b) != fq2_add(ctx, b, a):
            bad += 1
        for c in els:
            if fq2_mul(ctx, ab, c) != fq2_mul(ctx, a, fq2_mul(ctx, b, c)):
                bad += 1
            if fq2_mul(ctx, a, fq2_add(ctx, b, c)) != fq2_add(ctx, ab, fq2_mul(ctx, a, c)):
                bad += 1
    return CheckResult("ring axioms on GF(q^2)", bad == 0, f"{bad} violations" if bad else "")


def check_group_orders(ctx: FieldContext) -> CheckResult:
    bad = [a for a in enumerate_fq2_star(ctx) if fq2_pow(ctx, a, ctx.q2 - 1) != ONE]
    bad += [a for a in range(1, ctx.q) if fq_pow(ctx, a, ctx.q - 1) != 1]
    return CheckResult("a^(q^2-1) = 1 and a^(q-1) = 1", not bad, _first(bad))


def check_frobenius(ctx: FieldContext) -> CheckResult:
    els = list(enumerate_fq2(ctx))
    bad = [
        (a, b) for a, b in product(els, repeat=2)
        if frobenius(ctx, fq2_mul(ctx, a, b)) != fq2_mul(ctx, frobenius(ctx, a), frobenius(ctx, b))
    ]
    bad += [a for a in els if frobenius(ctx, a) != fq2_pow(ctx, a, ctx.q)]
    return CheckResult("frobenius is multiplicative and equals x^q", not bad, _first(bad))


def check_mu_characterisation(ctx: FieldContext) -> CheckResult:
    mu = set(enumerate_mu(ctx))
    bad = [
        x for x in enumerate_fq2_star(ctx)
        if (x in mu) != (frobenius(ctx, x) == fq2_inv(ctx, x))
    ]
    ok = not bad and len(mu) == ctx.q + 1
    return CheckResult("x in mu_{q+1} iff x^q = 1/x", ok, _first(bad))


def check_beta_roots(ctx: FieldContext) -> CheckResult:
    roots = [
        z for z in enumerate_fq2(ctx)
        if fq2_add(ctx, fq2_add(ctx, fq2_mul(ctx, z, z), z), ONE) == ZERO
    ]
    ok = sorted(roots) == sorted([BETA, BETA1])
    return CheckResult("roots of z^2+z+1 are exactly b, b+1", ok, "" if ok else _first(roots))


# --- kernel -----------------------------------------------------------------

def pascal_mod2(limit: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, limit + 1):
        prev = rows[-1]
        rows.append([1] + [(prev[i - 1] + prev[i]) % 2 for i in range(1, n)] + [1])
    return rows


def check_binom_parity(limit: int = 64) -> CheckResult:
    rows = pascal_mod2(limit)
    bad = [
        (n, i) for n in range(limit + 1) for i in range(limit + 1)
        if binom_parity(n, i) != (rows[n][i] if i <= n else 0)
    ]
    return CheckResult(f"binom_parity matches Pascal mod 2 up to {limit}", not bad, _first(bad))


def check_a_sequence(ctx: FieldContext, limit: int = 200) -> CheckResult:
    bad = []
    for i in range(limit + 1):
        bi, b1i = fq2_pow(ctx, BETA, i), fq2_pow(ctx, BETA1, i)
        ai = fq2_add(ctx, bi, b1i)
        bsum = fq2_add(ctx, fq2_mul(ctx, BETA1, bi), fq2_mul(ctx, BETA, b1i))
        if ai != Fq2Element(a_coeff(i), 0) or bsum != Fq2Element(a_coeff(i + 2), 0):
            bad.append(i)
    return CheckResult(f"a_i and b_i = a_(i+2) match tower values for i <= {limit}", not bad, _first(bad))


def check_closed_vs_recursive(limit: int = 1024) -> CheckResult:
    bad = []
    for n, (m, nn) in enumerate(iter_mn_bits()):
        if n > limit:
            break
        pair = mn_closed(n)
        if pair.m_poly.bits != m or pair.n_poly.bits != nn:
            bad.append(n)
    return CheckResult(f"closed form equals recursion for n <= {limit}", not bad, _first(bad))


def check_degrees(limit: int = 1024) -> CheckResult:
    bad = []
    for n in range(1, limit + 1):
        pair = mn_closed(n)
        if pair.n_poly.degree != n:
            bad.append(("N", n))
        if (pair.m_poly.degree == n - 1) != (n % 2 == 1) or pair.m_poly.degree > n - 1:
            bad.append(("M", n))
    return CheckResult("deg N_n = n; deg M_n = n-1 iff n odd", not bad, _first(bad))


def check_splitting(ctx: FieldContext, n_max: int = 50) -> CheckResult:
    bad = []
    els = list(enumerate_fq2(ctx))
    for n in range(n_max + 1):
        pair = mn_closed(n)
        for x in els:
            mv, nv = pair.m_poly.evaluate(ctx, x), pair.n_poly.evaluate(ctx, x)
            for c in (BETA, BETA1):
                if fq2_pow(ctx, fq2_add(ctx, x, c), n) != fq2_add(ctx, nv, fq2_mul(ctx, c, mv)):
                    bad.append((n, x))
    return CheckResult(f"(x+c)^n = N_n + c M_n for c in {{b, b+1}}, n <= {n_max}", not bad, _first(bad))


def check_lemma3(ctx: FieldContext, n_max: int, whole_field: bool = False) -> list[CheckResult]:
    out = []
    pts = list(enumerate_fq2_star(ctx)) if whole_field else None
    where = "GF(q^2)*" if whole_field else "mu_{q+1}"
    for fam in FAMILIES:
        ns = [n for n in range(1, n_max + 1) if lemma3_applies(ctx, fam, n)]
        bad = [(n, r.roots[0]) for n in ns if (r := no_root_on_mu(ctx, fam, n, pts)).has_roots]
        out.append(CheckResult(f"lemma3 {fam}_n has no root on {where} ({len(ns)} values of n)", not bad, _first(bad)))
    return out


def check_lemma4(ctx: FieldContext, n_max: int, ms=(1, 2)) -> list[CheckResult]:
    mu = enumerate_mu(ctx)
    per_case = {c: [0, 0, []] for c in (1, 2, 3, 4)}
    for n in range(1, n_max + 1):
        for case in lemma4_cases_for(n):
            for m in ms:
                r = lemma4_identity(ctx, n, m, case, points=mu)
                acc = per_case[case]
                acc[0] += r.checked
                acc[1] += len(r.skipped)
                acc[2] += [(n, m, x) for x in r.failures]
    return [
        CheckResult(
            f"lemma4 case {c}",
            not bad,
            f"{checked} points checked, {skipped} skipped" + (f"; failures {_first(bad)}" if bad else ""),
        )
        for c, (checked, skipped, bad) in per_case.items()
    ]


def check_redei_bijectivity(ctx: FieldContext, n_max: int) -> CheckResult:
    domain = [INF, *range(ctx.q)]
    bad = []
    for n in range(1, n_max + 1):
        image = {redei_projective(ctx, p, n) for p in domain}
        if (len(image) == len(domain)) != (gcd(n, ctx.q + 1) == 1):
            bad.append(n)
    return CheckResult(f"R_n permutes F_q ∪ {{∞}} iff gcd(n, q+1) = 1, n <= {n_max}", not bad, _first(bad))


def check_theorem7_unit(ctx: FieldContext) -> CheckResult:
    rep = theorem7_unit_identity(ctx)
    detail = f"{rep.checked} products checked"
    if rep.failures:
        detail += f", {len(rep.failures)} differ from 1 (all where x^(q-1) + c = 0)" if all(
            fq2_add(ctx, fq2_pow(ctx, x, ctx.q - 1), c) == ZERO for x, c in rep.failures
        ) else f", {len(rep.failures)} differ from 1"
    return CheckResult("theorem7 unit identity at every x in GF(q^2)*", rep.holds, detail)


def check_theorem7_periodicity(ctx: FieldContext, n_max: int) -> CheckResult:
    q = ctx.q
    bad = [
        (fam, n, m)
        for fam in FAMILIES
        for n in range(1, n_max + 1)
        for m in range(1, q)
        if build_poly(ctx, ConstructionParams(ctx.t, n + 3 * (q - 1), m, fam))
        != build_poly(ctx, ConstructionParams(ctx.t, n, m, fam))
        or build_poly(ctx, ConstructionParams(ctx.t, n, m + q - 1, fam))
        != build_poly(ctx, ConstructionParams(ctx.t, n, m, fam))
    ]
    return CheckResult("theorem7 periodicity n -> n+3(q-1), m -> m+q-1", not bad, _first(bad))


# --- constructor ------------------------------------------------------------

def check_iff(ctx: FieldContext) -> CheckResult:
    bad = []
    for fam in FAMILIES:
        for n in qualifying_n(ctx.q, fam):
            for m in range(1, ctx.q):
                params = ConstructionParams(ctx.t, n, m, fam)
                if brute_force_is_permutation(ctx, build_poly(ctx, params)) != theorem_predicate(params).holds:
                    bad.append((fam, n, m))
    return CheckResult("permutes iff theorem predicate (all qualifying n, m)", not bad, _first(bad))


def check_unit_coefficients(ctx: FieldContext, n_max: int = 60) -> CheckResult:
    bad = [
        (fam, n, m)
        for fam in FAMILIES
        for n in range(1, n_max + 1)
        for m in range(1, ctx.q)
        if any(c != ONE for c in build_poly(ctx, ConstructionParams(ctx.t, n, m, fam)).terms.values())
    ]
    return CheckResult("constructed coefficients are all 1", not bad, _first(bad))


def check_reduction_preserves_function(ctx: FieldContext, n_max: int = 30) -> CheckResult:
    els = list(enumerate_fq2(ctx))
    bad = []
    for fam in FAMILIES:
        for n in range(1, n_max + 1):
            params = ConstructionParams(ctx.t, n, 1 + n % (ctx.q - 1), fam)
            raw, red = build_unreduced(ctx, params), build_poly(ctx, params)
            if any(raw.evaluate(x) != red.evaluate(x) for x in els):
                bad.append((fam, n))
    return CheckResult("reduction mod x^(q^2)+x preserves the function", not bad, _first(bad))


def check_canonical_invariance(ctx: FieldContext, n_max: int = 100, m_max: int = 30) -> CheckResult:
    bad = []
    for fam in FAMILIES:
        for n in range(1, n_max + 1):
            for m in range(1, m_max + 1):
                p = ConstructionParams(ctx.t, n, m, fam)
                if build_poly(ctx, p) != build_poly(ctx, canonical_params(p)):
                    bad.append((fam, n, m))
    return CheckResult(f"canonical parameters give identical polynomials (n <= {n_max}, m <= {m_max})", not bad, _first(bad))


def check_table_cells(ctx: FieldContext) -> CheckResult:
    bad = []
    for fam in FAMILIES:
        for cell in generate_table(ctx, fam, qualifying_n(ctx.q, fam), range(1, ctx.q)):
            poly = cell.poly or build_poly(ctx, cell.params)
            if brute_force_is_permutation(ctx, poly) != (cell.status == "permutes"):
                bad.append(cell.params)
    return CheckResult("every permutes cell permutes, every excluded cell does not", not bad, _first(bad))


def check_agw(ctx: FieldContext, n_max: int = 21) -> CheckResult:
    bad = [
        (fam, n, m)
        for fam in FAMILIES
        for n in range(1, n_max + 1)
        for m in (1, 3)
        if not agw_commutes(ctx, ConstructionParams(ctx.t, n, m, fam))
    ]
    return CheckResult("f(x)^(q-1) = fbar(x^(q-1)) on GF(q^2)*", not bad, _first(bad))


# --- golden tables ------------------------------------------------------------

def check_golden_tables(tables=None) -> tuple[list[CheckResult], list[str]]:
    """Compare every table with its golden file.  Cells listed in the errata
    are accepted only if the erratum re-verifies.  Returns (results, notes)."""
    results, notes = [], []
    errata = golden.load_errata()
    for k in tables or sorted(golden.TABLES):
        cells = [c.to_dict() for c in golden.generate_reference_table(k)]
        diffs = golden.diff_cells(golden.load_golden(k), cells)
        known = golden.errata_keys(k)
        unexplained = [d for d in diffs if d.key not in known]
        problems = [str(d) for d in unexplained]
        for e in errata:
            if e["table"] != k:
                continue
            msg = golden.check_erratum(e)
            if msg:
                problems.append(msg)
            else:
                notes.append(f"known misprint in table {k}: n={e['n']} m={e['m']} ({e['note']})")
        results.append(CheckResult(f"table {k} matches golden file", not problems, "; ".join(problems)))
    return results, notes


def lemma_suite(ctx: FieldContext, n_max: int) -> list[CheckResult]:
    out = []
    out += check_lemma3(ctx, n_max)
    out += check_lemma4(ctx, n_max)
    out.append(check_theorem7_unit(ctx))
    out.append(check_theorem7_periodicity(ctx, min(n_max, 3 * (ctx.q - 1))))
    out.append(check_a_sequence(ctx))
    return out


def selftest_suite(ctx: FieldContext) -> list[CheckResult]:
    """Every module invariant at the given (small) context."""
    n_max = 3 * (ctx.q - 1)
    return [
        check_ring_axioms(ctx),
        check_group_orders(ctx),
        check_frobenius(ctx),
        check_mu_characterisation(ctx),
        check_beta_roots(ctx),
        check_binom_parity(),
        check_a_sequence(ctx),
        check_closed_vs_recursive(),
        check_degrees(),
        check_splitting(ctx),
        *check_lemma3(ctx, n_max),
        *check_lemma3(ctx, n_max, whole_field=True),
        check_redei_bijectivity(ctx, n_max),
        check_iff(ctx),
        check_unit_coefficients(ctx),
        check_reduction_preserves_function(ctx),
        check_canonical_invariance(ctx),
        check_table_cells(ctx),
        check_agw(ctx),
    ]
