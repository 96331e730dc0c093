"""Arithmetic in GF(2^t) and in the tower GF(q^2) = GF(q)(b), b^2 = b + 1.

Elements of GF(q) are plain ints whose bits are the coefficients of a
polynomial of degree < t.  Tower elements are pairs ``(c0, c1)`` standing
for ``c0 + c1*b``.  Since t is odd, x^2 + x + 1 has no root in GF(q), so
the pair representation is a field and b is a primitive cube root of unity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Union

from .errors import DivisionByZero, InvalidDegree, InvalidModulus


def clmul_mod(a: int, b: int, modulus: int, t: int) -> int:
    """Shift-and-reduce product of two residues mod ``modulus`` (degree t)."""
    r = 0
    top = 1 << t
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return r


def poly_mod_gf2(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(modulus: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    t = modulus.bit_length() - 1
    if t < 1:
        return False
    for d in range(1, t // 2 + 1):
        for div in range(1 << d, 1 << (d + 1)):
            if poly_mod_gf2(modulus, div) == 0:
                return False
    return True


def least_irreducible(t: int) -> int:
    for cand in range(1 << t, 1 << (t + 1)):
        if is_irreducible(cand):
            return cand
    raise InvalidModulus(f"no irreducible polynomial of degree {t}")  # unreachable


def parse_modulus(text: str) -> int:
    """Big-endian bit string, e.g. ``"1011"`` for x^3 + x + 1."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise InvalidModulus(f"modulus must be a string of 0/1 characters, got {text!r}")
    return int(text, 2)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class Fq2Element(NamedTuple):
    """``c0 + c1*b`` with c0, c1 in GF(q)."""

    c0: int
    c1: int

    def __str__(self) -> str:
        return f"{self.c0:x}+{self.c1:x}*b"


ZERO = Fq2Element(0, 0)
ONE = Fq2Element(1, 0)
BETA = Fq2Element(0, 1)
BETA1 = Fq2Element(1, 1)  # b + 1, the other root of z^2 + z + 1


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__


INF = _Infinity()
# A point of F_q ∪ {∞}: either an int residue or INF.
ProjectivePoint = Union[int, _Infinity]


@dataclass(frozen=True)
class FieldContext:
    t: int
    modulus: int
    _exp: tuple = field(repr=False, compare=False, default=())
    _log: tuple = field(repr=False, compare=False, default=())

    @property
    def q(self) -> int:
        return 1 << self.t

    @property
    def q2(self) -> int:
        return 1 << (2 * self.t)

    @property
    def mu_order(self) -> int:
        return self.q + 1

    @property
    def modulus_bits(self) -> str:
        return format(self.modulus, "b")


def make_context(t: int, modulus: Optional[Union[int, str]] = None) -> FieldContext:
    if not isinstance(t, int) or t < 3 or t % 2 == 0:
        raise InvalidDegree(f"t must be an odd integer >= 3, got {t}")
    if modulus is None:
        mod = least_irreducible(t)
    else:
        mod = parse_modulus(modulus) if isinstance(modulus, str) else int(modulus)
        if mod.bit_length() - 1 != t:
            raise InvalidModulus(f"modulus {mod:b} does not have degree {t}")
        if not mod & 1 or not is_irreducible(mod):
            raise InvalidModulus(f"modulus {mod:b} is reducible over GF(2)")
    exp, log = _log_tables(t, mod)
    return FieldContext(t, mod, exp, log)


def _log_tables(t: int, mod: int) -> tuple[tuple, tuple]:
    order = (1 << t) - 1
    factors = _prime_factors(order)
    for g in range(2, 1 << t):
        if all(_slow_pow(g, order // p, mod, t) != 1 for p in factors):
            break
    else:  # pragma: no cover - every finite field has a generator
        raise RuntimeError("no generator found")
    exp = [0] * (2 * order)
    log = [0] * (1 << t)
    x = 1
    for i in range(order):
        exp[i] = exp[i + order] = x
        log[x] = i
        x = clmul_mod(x, g, mod, t)
    return tuple(exp), tuple(log)


def _slow_pow(a: int, e: int, mod: int, t: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = clmul_mod(r, a, mod, t)
        a = clmul_mod(a, a, mod, t)
        e >>= 1
    return r


# --- base field ---------------------------------------------------------

def fq_add(ctx: FieldContext, a: int, b: int) -> int:
    return a ^ b


def fq_mul(ctx: FieldContext, a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return ctx._exp[ctx._log[a] + ctx._log[b]]


def fq_inv(ctx: FieldContext, a: int) -> int:
    if a == 0:
        raise DivisionByZero("inverse of 0 in GF(q)")
    return ctx._exp[(ctx.q - 1 - ctx._log[a])]


def fq_pow(ctx: FieldContext, a: int, e: int) -> int:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    r = 1
    while e:
        if e & 1:
            r = fq_mul(ctx, r, a)
        a = fq_mul(ctx, a, a)
        e >>= 1
    return r


def fq_elements(ctx: FieldContext) -> range:
    return range(ctx.q)


# --- tower --------------------------------------------------------------

def fq2(c0: int, c1: int = 0) -> Fq2Element:
    return Fq2Element(c0, c1)


def fq2_add(ctx: FieldContext, a: Fq2Element, b: Fq2Element) -> Fq2Element:
    return Fq2Element(a[0] ^ b[0], a[1] ^ b[1])


def fq2_mul(ctx: FieldContext, a: Fq2Element, b: Fq2Element) -> Fq2Element:
    # (a0 + a1 b)(b0 + b1 b) = (a0b0 + a1b1) + (a0b1 + a1b0 + a1b1) b
    a0, a1 = a
    b0, b1 = b
    p0 = fq_mul(ctx, a0, b0)
    p1 = fq_mul(ctx, a1, b1)
    p2 = fq_mul(ctx, a0 ^ a1, b0 ^ b1)
    return Fq2Element(p0 ^ p1, p2 ^ p0)


def fq2_norm(ctx: FieldContext, a: Fq2Element) -> int:
    """a * a^q = a0^2 + a0 a1 + a1^2, an element of GF(q)."""
    a0, a1 = a
    return fq_mul(ctx, a0, a0) ^ fq_mul(ctx, a0, a1) ^ fq_mul(ctx, a1, a1)


def fq2_inv(ctx: FieldContext, a: Fq2Element) -> Fq2Element:
    if a == ZERO:
        raise DivisionByZero("inverse of 0 in GF(q^2)")
    ninv = fq_inv(ctx, fq2_norm(ctx, a))
    c = frobenius(ctx, a)
    return Fq2Element(fq_mul(ctx, c[0], ninv), fq_mul(ctx, c[1], ninv))


def fq2_div(ctx: FieldContext, a: Fq2Element, b: Fq2Element) -> Fq2Element:
    return fq2_mul(ctx, a, fq2_inv(ctx, b))


def fq2_pow(ctx: FieldContext, a: Fq2Element, e: int) -> Fq2Element:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    r = ONE
    while e:
        if e & 1:
            r = fq2_mul(ctx, r, a)
        e >>= 1
        if e:
            a = fq2_mul(ctx, a, a)
    return r


def frobenius(ctx: FieldContext, a: Fq2Element) -> Fq2Element:
    """a^q: fixes GF(q) and sends b to b + 1."""
    return Fq2Element(a[0] ^ a[1], a[1])


def enumerate_fq2(ctx: FieldContext) -> Iterator[Fq2Element]:
    """All q^2 elements, ascending by (c1, c0)."""
    q = ctx.q
    for c1 in range(q):
        for c0 in range(q):
            yield Fq2Element(c0, c1)


def enumerate_fq2_star(ctx: FieldContext) -> Iterator[Fq2Element]:
    it = enumerate_fq2(ctx)
    next(it)
    return it


def is_on_unit_circle(ctx: FieldContext, x: Fq2Element) -> bool:
    return x != ZERO and fq2_norm(ctx, x) == 1


def enumerate_mu(ctx: FieldContext) -> list[Fq2Element]:
    """The q+1 elements with x^(q+1) = 1, ascending by (c1, c0)."""
    e = ctx.q + 1
    return [x for x in enumerate_fq2_star(ctx) if fq2_pow(ctx, x, e) == ONE]


def format_fq(a: int) -> str:
    return f"{a:x}"


def format_fq2(a: Fq2Element) -> str:
    return str(a)
