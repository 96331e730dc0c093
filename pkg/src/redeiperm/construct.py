"""Candidate permutation polynomials x^(n+m(q+1)) P_n(x^(q-1)), P in {M_n, N_n},
their reduction mod x^(q^2) + x, and exhaustive permutation checks."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .field import (
    BETA,
    BETA1,
    ONE,
    ZERO,
    FieldContext,
    Fq2Element,
    enumerate_fq2,
    enumerate_fq2_star,
    fq2_add,
    fq2_mul,
    fq2_pow,
)
from .redei import FAMILIES, IdentityReport, mn_closed


@dataclass(frozen=True)
class ConstructionParams:
    t: int
    n: int
    m: int
    family: str = "M"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        if self.family not in FAMILIES:
            raise ValueError(f"family must be M or N, got {self.family!r}")

    @property
    def q(self) -> int:
        return 1 << self.t

    @property
    def shift(self) -> int:
        """The exponent n + m(q+1) of the monomial factor."""
        return self.n + self.m * (self.q + 1)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.holds


def theorem_predicate(params: ConstructionParams) -> Verdict:
    q = params.q
    g = gcd(params.n, q * q - 1)
    if g != 1:
        return Verdict(False, f"gcd(n,q^2-1)={g}")
    if params.family == "N" and params.n % 3 != 1:
        return Verdict(False, f"n mod 3={params.n % 3}")
    g = gcd(params.shift, q - 1)
    if g != 1:
        return Verdict(False, f"gcd(n+m(q+1),q-1)={g}")
    return Verdict(True)


def render_reason(reason: str) -> str:
    """Human-readable form: ``gcd(n+m(q+1), q-1) = 7``."""
    lhs, rhs = reason.rsplit("=", 1)
    return f"{lhs.replace(',', ', ')} = {rhs}"


class SparsePoly:
    """Polynomial over GF(q^2) stored as {exponent: coefficient}, zeros dropped."""

    def __init__(self, ctx: FieldContext, terms: Optional[dict] = None):
        self.ctx = ctx
        self.terms: dict[int, Fq2Element] = {}
        for e, c in (terms or {}).items():
            self.add_term(e, c)

    def add_term(self, e: int, c: Fq2Element = ONE) -> None:
        if e < 0:
            raise ValueError("negative exponent")
        v = fq2_add(self.ctx, self.terms.get(e, ZERO), c)
        if v == ZERO:
            self.terms.pop(e, None)
        else:
            self.terms[e] = v

    @property
    def exponents(self) -> list[int]:
        return sorted(self.terms, reverse=True)

    def evaluate(self, x: Fq2Element) -> Fq2Element:
        ctx = self.ctx
        acc = ZERO
        for e, c in self.terms.items():
            if e == 0:
                acc = fq2_add(ctx, acc, c)
            elif x != ZERO:
                acc = fq2_add(ctx, acc, fq2_mul(ctx, c, fq2_pow(ctx, x, e)))
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.ctx.t == other.ctx.t and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in self.exponents:
            c = self.terms[e]
            mono = "1" if e == 0 else "x" if e == 1 else f"x^{e}"
            if c == ONE:
                parts.append(mono)
            else:
                parts.append(f"({c})" if e == 0 else f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SparsePoly({self})"


def reduce_mod_field(ctx: FieldContext, p: SparsePoly) -> SparsePoly:
    """Canonical form as a function on GF(q^2): positive exponents go to [1, q^2-1]."""
    period = ctx.q2 - 1
    out = SparsePoly(ctx)
    for e, c in p.terms.items():
        out.add_term(e if e == 0 else (e - 1) % period + 1, c)
    return out


def build_unreduced(ctx: FieldContext, params: ConstructionParams) -> SparsePoly:
    if ctx.t != params.t:
        raise ValueError(f"context has t={ctx.t}, params have t={params.t}")
    base = mn_closed(params.n).family(params.family)
    p = SparsePoly(ctx)
    for e in base.exponents:
        p.add_term(params.shift + (ctx.q - 1) * e)
    return p


def build_poly(ctx: FieldContext, params: ConstructionParams) -> SparsePoly:
    return reduce_mod_field(ctx, build_unreduced(ctx, params))


def brute_force_is_permutation(ctx: FieldContext, p: SparsePoly) -> bool:
    seen = set()
    for x in enumerate_fq2(ctx):
        y = p.evaluate(x)
        if y in seen:
            return False
        seen.add(y)
    return len(seen) == ctx.q2


def canonical_params(params: ConstructionParams) -> ConstructionParams:
    q = params.q
    period = 3 * (q - 1)
    n = (params.n - 1) % period + 1
    m = (params.m - 1) % (q - 1) + 1
    return ConstructionParams(params.t, n, m, params.family)


def theorem7_unit_identity(ctx: FieldContext) -> IdentityReport:
    """Check x^(3(q-1)) (x^(q-1) + c)^(3(q-1)) == 1 for c in {b, b+1} at every x != 0.

    Failures are recorded as (x, c) pairs.
    """
    q = ctx.q
    e = 3 * (q - 1)
    rep = IdentityReport("theorem7 unit identity")
    for x in enumerate_fq2_star(ctx):
        y = fq2_pow(ctx, x, q - 1)
        xe = fq2_pow(ctx, x, e)
        for c in (BETA, BETA1):
            rep.checked += 1
            if fq2_mul(ctx, xe, fq2_pow(ctx, fq2_add(ctx, y, c), e)) != ONE:
                rep.failures.append((x, c))
    return rep


def agw_commutes(ctx: FieldContext, params: ConstructionParams) -> bool:
    """f(x)^(q-1) == fbar(x^(q-1)) for all x != 0, fbar(y) = y^(n+m(q+1)) P_n(y)^(q-1)."""
    q = ctx.q
    f = build_poly(ctx, params)
    base = mn_closed(params.n).family(params.family)
    for x in enumerate_fq2_star(ctx):
        y = fq2_pow(ctx, x, q - 1)
        fbar = fq2_mul(ctx, fq2_pow(ctx, y, params.shift), fq2_pow(ctx, base.evaluate(ctx, y), q - 1))
        if fq2_pow(ctx, f.evaluate(x), q - 1) != fbar:
            return False
    return True


@dataclass
class TableCell:
    params: ConstructionParams
    poly: Optional[SparsePoly] = None
    reason: Optional[str] = None

    @property
    def status(self) -> str:
        return "permutes" if self.poly is not None else "excluded"

    def to_dict(self) -> dict:
        p = self.params
        d = {"t": p.t, "n": p.n, "m": p.m, "family": p.family, "status": self.status}
        if self.poly is not None:
            d["poly"] = str(self.poly)
            d["exponents"] = self.poly.exponents
        else:
            d["reason"] = self.reason
        return d


def make_cell(ctx: FieldContext, params: ConstructionParams) -> TableCell:
    verdict = theorem_predicate(params)
    if not verdict:
        return TableCell(params, reason=verdict.reason)
    return TableCell(params, poly=build_poly(ctx, params))


def generate_table(
    ctx: FieldContext, family: str, n_range: Iterable[int], m_range: Iterable[int]
) -> list[TableCell]:
    ms = list(m_range)
    return [
        make_cell(ctx, ConstructionParams(ctx.t, n, m, family))
        for n in n_range
        for m in ms
    ]


def qualifying_n(q: int, family: str, n_max: Optional[int] = None) -> list[int]:
    """n <= n_max (default 3(q-1)) with gcd(n, q^2-1) = 1, and n = 1 mod 3 for N."""
    n_max = 3 * (q - 1) if n_max is None else n_max
    return [
        n for n in range(1, n_max + 1)
        if gcd(n, q * q - 1) == 1 and (family == "M" or n % 3 == 1)
    ]
