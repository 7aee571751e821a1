"""Polynomial rings over F_2 with bit-packed monomials.

A monomial is a single Python int laid out so that integer comparison *is*
the term order.  Every variable owns a ``FIELD_BITS`` wide field whose top
bit is a guard (always zero in a valid monomial); the total degree sits in
its own field.  For degrevlex the variable fields store ``MAX_EXP - e``
(last variable most significant, degree above everything), for lex they
store ``e`` (first variable most significant, degree in the low bits).

Both layouts are affine in the exponent vector, so

    mono(a) * mono(b)  ==  a + b - ONE

and a quotient or a shift by a monomial is plain integer addition.  Module
terms reuse the same layout with a position field stacked on top (see
``chainsyz.buchberger``).

Polynomials have implicit coefficient 1, so a polynomial is a frozenset of
monomials and addition is symmetric difference.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

FIELD_BITS = 8
MAX_EXP = (1 << (FIELD_BITS - 1)) - 1
DEG_BITS = 16
ORDERS = ("degrevlex", "lex")


class RingMismatch(ValueError):
    """Operands live in different polynomial rings."""


@dataclass(frozen=True)
class RingCtx:
    """Polynomial ring F_2[v_1, ..., v_k] with a fixed term order.

    Variables are ordered v_1 > v_2 > ... > v_k.
    """

    num_vars: int
    var_names: tuple = None
    term_order: str = "degrevlex"
    # packing constants, derived in __post_init__
    one: int = field(init=False, repr=False, compare=False)
    pos_shift: int = field(init=False, repr=False, compare=False)
    _offsets: tuple = field(init=False, repr=False, compare=False)
    _deg_shift: int = field(init=False, repr=False, compare=False)
    _field_mask: int = field(init=False, repr=False, compare=False)
    _guard: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.num_vars
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"num_vars must be a positive integer, got {n!r}")
        names = self.var_names
        if names is None:
            names = tuple(f"x{i + 1}" for i in range(n))
        names = tuple(names)
        if len(names) != n or len(set(names)) != n:
            raise ValueError("var_names must hold num_vars distinct entries")
        if self.term_order not in ORDERS:
            raise ValueError(f"unknown term order {self.term_order!r}")
        set_ = object.__setattr__
        set_(self, "var_names", names)
        W = FIELD_BITS
        if self.term_order == "degrevlex":
            offsets = tuple(W * k for k in range(n))
            deg_shift = W * n
            one = sum(MAX_EXP << o for o in offsets)
        else:
            offsets = tuple(DEG_BITS + W * (n - 1 - k) for k in range(n))
            deg_shift = 0
            one = 0
        set_(self, "_offsets", offsets)
        set_(self, "_deg_shift", deg_shift)
        set_(self, "one", one)
        set_(self, "pos_shift", W * n + DEG_BITS)
        set_(self, "_field_mask", sum(((1 << W) - 1) << o for o in offsets))
        set_(self, "_guard", sum(1 << (o + W - 1) for o in offsets))

    # -- monomials ---------------------------------------------------------

    def monomial(self, exponents: Sequence[int]) -> int:
        if len(exponents) != self.num_vars:
            raise ValueError("exponent vector has wrong length")
        if any(e < 0 or e > MAX_EXP for e in exponents):
            raise OverflowError(f"exponents must lie in [0, {MAX_EXP}]")
        deg = sum(exponents)
        if self.term_order == "degrevlex":
            body = sum((MAX_EXP - e) << o for e, o in zip(exponents, self._offsets))
        else:
            body = sum(e << o for e, o in zip(exponents, self._offsets))
        return body | (deg << self._deg_shift)

    def exponents(self, mono: int) -> tuple:
        mask = (1 << FIELD_BITS) - 1
        vals = tuple((mono >> o) & mask for o in self._offsets)
        if self.term_order == "degrevlex":
            return tuple(MAX_EXP - v for v in vals)
        return vals

    def degree(self, mono: int) -> int:
        return (mono >> self._deg_shift) & ((1 << DEG_BITS) - 1)

    def var(self, i: int) -> int:
        """Monomial of the i-th variable (0-based)."""
        e = [0] * self.num_vars
        e[i] = 1
        return self.monomial(e)

    def mono_mul(self, a: int, b: int) -> int:
        return a + b - self.one

    def divides(self, a: int, b: int) -> bool:
        """True iff monomial (or same-position term) a divides b."""
        fm, g = self._field_mask, self._guard
        if self.term_order == "degrevlex":
            return (((a & fm) | g) - (b & fm)) & g == g
        return (((b & fm) | g) - (a & fm)) & g == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.exponents(a), self.exponents(b)
        return self.monomial([max(x, y) for x, y in zip(ea, eb)])

    def gcd(self, a: int, b: int) -> int:
        ea, eb = self.exponents(a), self.exponents(b)
        return self.monomial([min(x, y) for x, y in zip(ea, eb)])

    def compare(self, a: int, b: int) -> int:
        """-1, 0 or 1 as monomial a is smaller than, equal to, larger than b."""
        return (a > b) - (a < b)

    def mono_str(self, mono: int) -> str:
        parts = []
        for name, e in zip(self.var_names, self.exponents(mono)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- polynomial constructors --------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, frozenset())

    def unit(self) -> "Polynomial":
        return Polynomial(self, frozenset((self.one,)))

    def gen(self, i: int) -> "Polynomial":
        return Polynomial(self, frozenset((self.var(i),)))

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.num_vars)]

    def from_exponents(self, terms: Iterable[Sequence[int]]) -> "Polynomial":
        acc = set()
        for e in terms:
            acc ^= {self.monomial(e)}
        return Polynomial(self, frozenset(acc))

    def parse(self, text: str) -> "Polynomial":
        """Parse canonical text such as ``t1^2*t2 + t3`` (also ``0``, ``1``)."""
        text = text.strip()
        if text == "0":
            return self.zero()
        index = {name: i for i, name in enumerate(self.var_names)}
        acc = set()
        for chunk in text.split("+"):
            chunk = chunk.strip()
            if not chunk:
                raise ValueError(f"malformed polynomial {text!r}")
            exps = [0] * self.num_vars
            if chunk != "1":
                for factor in chunk.split("*"):
                    m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?\s*", factor)
                    if not m or m.group(1) not in index:
                        raise ValueError(f"unknown factor {factor!r} in {text!r}")
                    exps[index[m.group(1)]] += int(m.group(2) or 1)
            acc ^= {self.monomial(exps)}
        return Polynomial(self, frozenset(acc))


def poly_mul_terms(a: frozenset, b: frozenset, one: int) -> frozenset:
    """Product of two raw monomial sets (characteristic 2 cancellation)."""
    if len(a) < len(b):
        a, b = b, a
    acc = set()
    for y in b:
        d = y - one
        acc ^= {x + d for x in a}
    return frozenset(acc)


def poly_exact_div(ring: RingCtx, a: frozenset, b: frozenset) -> frozenset:
    """Quotient a / b for raw monomial sets; raises ArithmeticError if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lb = max(b)
    rest = set(a)
    q = set()
    while rest:
        la = max(rest)
        if not ring.divides(lb, la):
            raise ArithmeticError("inexact polynomial division")
        d = la - lb
        q.add(d + ring.one)
        rest ^= {x + d for x in b}
    return frozenset(q)


@dataclass(frozen=True)
class Polynomial:
    """Element of F_2[v_1..v_k]: a set of monomials, each with coefficient 1."""

    ring: RingCtx
    terms: frozenset

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring.var_names} vs {other.ring.var_names}")
        return None

    def __add__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return Polynomial(self.ring, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return Polynomial(self.ring, poly_mul_terms(self.terms, other.terms, self.ring.one))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.unit()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == frozenset((self.ring.one,))

    def leading_monomial(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.degree(t) for t in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(t) for t in self.terms}) <= 1

    def sorted_terms(self) -> list:
        """Monomials in decreasing term order."""
        return sorted(self.terms, reverse=True)

    def exponent_vectors(self) -> list:
        return [self.ring.exponents(t) for t in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(self.ring.mono_str(t) for t in self.sorted_terms())

    def __repr__(self):
        return f"Polynomial({self})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def compare(ring: RingCtx, a: Sequence[int], b: Sequence[int]) -> int:
    """Compare exponent vectors a, b under the ring's term order."""
    return ring.compare(ring.monomial(a), ring.monomial(b))
