"""Parity binomials, the M_n / N_n polynomials and the Redei function in
characteristic 2 with b^2 + b = 1.

With a_i = b^i + (b+1)^i (which is 0 when 3 | i and 1 otherwise):

    M_n(x) = sum_i a_i     * C(n, i) * x^(n-i)
    N_n(x) = sum_i a_{i+2} * C(n, i) * x^(n-i)

and R_n = N_n / M_n.  All coefficients are 0/1, so M_n and N_n are kept
as polynomials over GF(2) and only lifted into GF(q^2) for evaluation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

from .errors import NotOnUnitCircle, PoleEncountered
from .field import (
    BETA,
    BETA1,
    INF,
    ONE,
    ZERO,
    FieldContext,
    Fq2Element,
    ProjectivePoint,
    enumerate_mu,
    fq2_add,
    fq2_div,
    fq2_inv,
    fq2_mul,
    fq2_pow,
    fq_add,
    fq_inv,
    fq_mul,
    fq_pow,
    is_on_unit_circle,
)

FAMILIES = ("M", "N")


def binom_parity(n: int, i: int) -> int:
    """C(n, i) mod 2 via Lucas: odd iff the bits of i are a subset of n's."""
    if i < 0 or n < 0:
        return 0
    return 1 if (i & n) == i else 0


def a_coeff(i: int) -> int:
    return 0 if i % 3 == 0 else 1


@dataclass(frozen=True)
class ParityPoly:
    """Polynomial over GF(2); ``exponents`` lists the nonzero terms, descending."""

    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        ex = tuple(self.exponents)
        if any(b >= a for a, b in zip(ex, ex[1:])) or any(e < 0 for e in ex):
            raise ValueError(f"exponents must be strictly descending and >= 0: {ex}")
        object.__setattr__(self, "exponents", ex)

    @classmethod
    def from_bits(cls, bits: int) -> "ParityPoly":
        return cls(tuple(e for e in range(bits.bit_length() - 1, -1, -1) if bits >> e & 1))

    @property
    def bits(self) -> int:
        r = 0
        for e in self.exponents:
            r |= 1 << e
        return r

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return self.exponents[0] if self.exponents else -1

    def __bool__(self) -> bool:
        return bool(self.exponents)

    def __add__(self, other: "ParityPoly") -> "ParityPoly":
        return ParityPoly.from_bits(self.bits ^ other.bits)

    def evaluate(self, ctx: FieldContext, x: Fq2Element) -> Fq2Element:
        """Horner evaluation at a point of GF(q^2)."""
        acc = ZERO
        prev = None
        for e in self.exponents:
            if prev is not None:
                acc = fq2_mul(ctx, acc, fq2_pow(ctx, x, prev - e))
            acc = fq2_add(ctx, acc, ONE)
            prev = e
        if prev:
            acc = fq2_mul(ctx, acc, fq2_pow(ctx, x, prev))
        return acc

    def __str__(self) -> str:
        if not self.exponents:
            return "0"
        return " + ".join(_monomial(e) for e in self.exponents)

    def to_json(self) -> str:
        return json.dumps({"exponents": list(self.exponents)})

    @classmethod
    def from_json(cls, text: str) -> "ParityPoly":
        return cls(tuple(json.loads(text)["exponents"]))

    @classmethod
    def parse(cls, text: str) -> "ParityPoly":
        """Inverse of ``str``: ``"x^4 + x + 1"``."""
        text = text.strip()
        if text == "0":
            return cls()
        exps = [_parse_monomial(term) for term in text.split("+")]
        return cls(tuple(exps))


def _monomial(e: int) -> str:
    if e == 0:
        return "1"
    if e == 1:
        return "x"
    return f"x^{e}"


def _parse_monomial(term: str) -> int:
    term = term.strip()
    if term == "1":
        return 0
    if term == "x":
        return 1
    if term.startswith("x^"):
        return int(term[2:])
    raise ValueError(f"cannot parse monomial {term!r}")


@dataclass(frozen=True)
class RedeiPair:
    m_poly: ParityPoly
    n_poly: ParityPoly
    n: int

    def family(self, name: str) -> ParityPoly:
        if name == "M":
            return self.m_poly
        if name == "N":
            return self.n_poly
        raise ValueError(f"unknown family {name!r}")


def mn_closed(n: int) -> RedeiPair:
    if n < 0:
        raise ValueError("n must be non-negative")
    m_bits = n_bits = 0
    # only submasks of n have odd binomials; walk them directly
    i = n
    while True:
        if a_coeff(i):
            m_bits |= 1 << (n - i)
        if a_coeff(i + 2):
            n_bits |= 1 << (n - i)
        if i == 0:
            break
        i = (i - 1) & n
    return RedeiPair(ParityPoly.from_bits(m_bits), ParityPoly.from_bits(n_bits), n)


def iter_mn_bits() -> Iterator[tuple[int, int]]:
    """Yield (M_n, N_n) as GF(2) bitmasks for n = 0, 1, 2, ..."""
    m, nn = 0, 1
    while True:
        yield m, nn
        # M_n = (x+1) M_{n-1} + N_{n-1};  N_n = x N_{n-1} + M_{n-1}
        m, nn = (m << 1) ^ m ^ nn, (nn << 1) ^ m


def mn_recursive(n: int) -> RedeiPair:
    if n < 0:
        raise ValueError("n must be non-negative")
    for k, (m, nn) in enumerate(iter_mn_bits()):
        if k == n:
            return RedeiPair(ParityPoly.from_bits(m), ParityPoly.from_bits(nn), n)
    raise AssertionError("unreachable")


# --- the Redei function ---------------------------------------------------

def redei_parts(ctx: FieldContext, x: Fq2Element, n: int) -> tuple[Fq2Element, Fq2Element]:
    """(numerator, denominator) of R_n at x, straight from the two powers."""
    u = fq2_pow(ctx, fq2_add(ctx, x, BETA1), n)  # (x + b + 1)^n
    v = fq2_pow(ctx, fq2_add(ctx, x, BETA), n)  # (x + b)^n
    num = fq2_add(ctx, fq2_mul(ctx, BETA, u), fq2_mul(ctx, BETA1, v))
    return num, fq2_add(ctx, u, v)


def redei_eval(ctx: FieldContext, x: Fq2Element, n: int) -> Fq2Element:
    num, den = redei_parts(ctx, x, n)
    if den == ZERO:
        raise PoleEncountered(f"R_{n} has a pole at {x}")
    return fq2_div(ctx, num, den)


# Degree-one maps as 2x2 matrices acting on homogeneous pairs (X : Z).
_RHO = ((ONE, BETA1), (ONE, BETA))  # (x + b + 1) / (x + b)
_RHO_INV = ((BETA, BETA1), (ONE, ONE))  # (b y + b + 1) / (y + 1)
_PHI = ((ONE, BETA), (ONE, BETA1))  # (x + b) / (x + b + 1)
_PHI_INV = ((BETA1, BETA), (ONE, ONE))  # ((b+1) y + b) / (y + 1)


def _apply(ctx: FieldContext, mat, pair):
    (a, b), (c, d) = mat
    x, z = pair
    return (
        fq2_add(ctx, fq2_mul(ctx, a, x), fq2_mul(ctx, b, z)),
        fq2_add(ctx, fq2_mul(ctx, c, x), fq2_mul(ctx, d, z)),
    )


def _lift(p: ProjectivePoint):
    if p is INF:
        return (ONE, ZERO)
    return (Fq2Element(p, 0), ONE)


def _to_projective(ctx: FieldContext, pair) -> ProjectivePoint:
    x, z = pair
    if z == ZERO:
        if x == ZERO:
            raise ArithmeticError("degenerate homogeneous pair (0 : 0)")
        return INF
    v = fq2_div(ctx, x, z)
    if v[1] != 0:
        raise ArithmeticError(f"point {v} is not in F_q")
    return v[0]


def _to_affine(ctx: FieldContext, pair) -> Fq2Element:
    x, z = pair
    if z == ZERO:
        raise PoleEncountered("value at infinity")
    return fq2_div(ctx, x, z)


def rho(ctx: FieldContext, p: ProjectivePoint) -> Fq2Element:
    return _to_affine(ctx, _apply(ctx, _RHO, _lift(p)))


def rho_inv(ctx: FieldContext, y: Fq2Element) -> ProjectivePoint:
    if not is_on_unit_circle(ctx, y):
        raise NotOnUnitCircle(f"{y} is not a (q+1)-th root of unity")
    return _to_projective(ctx, _apply(ctx, _RHO_INV, (y, ONE)))


def phi(ctx: FieldContext, p: ProjectivePoint) -> Fq2Element:
    return _to_affine(ctx, _apply(ctx, _PHI, _lift(p)))


def phi_inv(ctx: FieldContext, y: Fq2Element) -> ProjectivePoint:
    if not is_on_unit_circle(ctx, y):
        raise NotOnUnitCircle(f"{y} is not a (q+1)-th root of unity")
    return _to_projective(ctx, _apply(ctx, _PHI_INV, (y, ONE)))


def redei_projective(ctx: FieldContext, p: ProjectivePoint, n: int) -> ProjectivePoint:
    """R_n on F_q ∪ {∞}, computed as rho^-1 ∘ x^n ∘ rho on homogeneous pairs."""
    x, z = _apply(ctx, _RHO, _lift(p))
    powered = (fq2_pow(ctx, x, n), fq2_pow(ctx, z, n))
    return _to_projective(ctx, _apply(ctx, _RHO_INV, powered))


def g_map(ctx: FieldContext, x: int, n: int) -> int:
    """x^n / (x^n + (x+1)^n) on F_q."""
    xn = fq_pow(ctx, x, n)
    den = fq_add(ctx, xn, fq_pow(ctx, x ^ 1, n))
    if den == 0:
        raise PoleEncountered(f"g has a pole at {x:x} for n={n}")
    return fq_mul(ctx, xn, fq_inv(ctx, den))


def gprime_map(ctx: FieldContext, x: int, n: int) -> int:
    """(x+1)^n / (x^n + (x+1)^n) on F_q."""
    x1n = fq_pow(ctx, x ^ 1, n)
    den = fq_add(ctx, fq_pow(ctx, x, n), x1n)
    if den == 0:
        raise PoleEncountered(f"g' has a pole at {x:x} for n={n}")
    return fq_mul(ctx, x1n, fq_inv(ctx, den))


# --- lemma-level checks ---------------------------------------------------

@dataclass
class RootReport:
    family: str
    n: int
    checked: int
    roots: list[Fq2Element] = field(default_factory=list)

    @property
    def has_roots(self) -> bool:
        return bool(self.roots)


def no_root_on_mu(ctx: FieldContext, family: str, n: int, points=None) -> RootReport:
    """Evaluate M_n or N_n on every point of mu_{q+1} (or ``points``) and collect zeros."""
    poly = mn_closed(n).family(family)
    pts = enumerate_mu(ctx) if points is None else list(points)
    roots = [x for x in pts if poly.evaluate(ctx, x) == ZERO]
    return RootReport(family, n, len(pts), roots)


def lemma3_applies(ctx: FieldContext, family: str, n: int) -> bool:
    if gcd(n, ctx.q2 - 1) != 1:
        return False
    return family == "M" or n % 3 == 1


@dataclass
class IdentityReport:
    label: str
    checked: int = 0
    skipped: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures


# case -> (family, required n mod 3)
LEMMA4_CASES = {1: ("M", 1), 2: ("M", 2), 3: ("N", 0), 4: ("N", 1)}


def lemma4_cases_for(n: int) -> list[int]:
    return [c for c, (_, r) in LEMMA4_CASES.items() if n % 3 == r]


def lemma4_identity(ctx: FieldContext, n: int, m: int, case: int, points=None) -> IdentityReport:
    """Check x^(n+m(q+1)) P_n(x)^(q-1) against the matching R_n expression on mu_{q+1}.

    P is M_n for cases 1-2 and N_n for cases 3-4.  Points where P_n or the
    Redei denominator vanishes are recorded in ``skipped``.
    """
    if case not in LEMMA4_CASES:
        raise ValueError(f"case must be 1..4, got {case}")
    family, residue = LEMMA4_CASES[case]
    if n % 3 != residue:
        raise ValueError(f"case {case} needs n = {residue} (mod 3), got n={n}")
    q = ctx.q
    poly = mn_closed(n).family(family)
    rep = IdentityReport(f"lemma4 case {case} n={n} m={m}")
    for x in enumerate_mu(ctx) if points is None else points:
        p = poly.evaluate(ctx, x)
        num, den = redei_parts(ctx, x, n)
        if p == ZERO or den == ZERO or (case >= 3 and num == ZERO):
            rep.skipped.append(x)
            continue
        lhs = fq2_mul(ctx, fq2_pow(ctx, x, n + m * (q + 1)), fq2_pow(ctx, p, q - 1))
        r = fq2_div(ctx, num, den)
        if case == 1:
            rhs = r
        elif case == 2:
            rhs = fq2_add(ctx, r, ONE)
        elif case == 3:
            rhs = fq2_add(ctx, ONE, fq2_inv(ctx, r))
        else:
            rhs = fq2_inv(ctx, r)
        rep.checked += 1
        if lhs != rhs:
            rep.failures.append(x)
    return rep
