"""Hilbert series numerators of monomial ideals and graded modules.

Numerators are integer Laurent polynomials stored as ``{exponent: coeff}``
dicts; the full series is ``numerator / (1 - q)^num_vars``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple


def _minimal(gens: Iterable[Tuple[int, ...]]) -> list:
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _mul(p: Dict[int, int], q: Dict[int, int]) -> Dict[int, int]:
    out = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _sub(p, q):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def monomial_ideal_numerator(gens: Sequence[Tuple[int, ...]]) -> Dict[int, int]:
    """Numerator N with HS(R/I) = N / (1-q)^n for I generated by monomials."""
    gens = _minimal(gens)
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    # pairwise coprime generators: product of (1 - q^deg)
    support = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if all(not (support[i] & support[j]) for i in range(len(gens)) for j in range(i)):
        out = {0: 1}
        for g in gens:
            out = _mul(out, {0: 1, sum(g): -1})
        return out
    # pivot on the last generator: N(I) = N(I') - q^deg(m) N(I' : m)
    m = gens[-1]
    rest = gens[:-1]
    colon = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
    return _sub(monomial_ideal_numerator(rest),
                _mul({sum(m): 1}, monomial_ideal_numerator(colon)))


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series of a graded module as numerator / (1-q)^num_vars."""

    numerator: Tuple[Tuple[int, int], ...]
    num_vars: int
    krull_dim: int
    finite: bool
    total_dim: Optional[int]

    def numerator_dict(self) -> Dict[int, int]:
        return dict(self.numerator)

    def coefficient(self, degree: int) -> int:
        """dim_F2 of the degree-``degree`` part."""
        from math import comb
        total = 0
        n = self.num_vars
        for e, c in self.numerator:
            k = degree - e
            if k >= 0:
                total += c * comb(k + n - 1, n - 1)
        return total


def _divide_one_minus_q(p: Dict[int, int]):
    """p / (1 - q) if exact, else None."""
    if not p:
        return {}
    if sum(p.values()) != 0:
        return None
    lo, hi = min(p), max(p)
    out = {}
    acc = 0
    for e in range(lo, hi):
        acc += p.get(e, 0)
        if acc:
            out[e] = acc
    return out


def hilbert_data(numerator: Dict[int, int], num_vars: int) -> HilbertData:
    num = {k: v for k, v in numerator.items() if v}
    reduced = num
    k = 0
    while k < num_vars:
        nxt = _divide_one_minus_q(reduced)
        if nxt is None:
            break
        reduced = nxt
        k += 1
    finite = (not num) or k == num_vars
    total = sum(reduced.values()) if finite else None
    krull = 0 if not num else num_vars - k
    return HilbertData(tuple(sorted(num.items())), num_vars, krull, finite, total)
