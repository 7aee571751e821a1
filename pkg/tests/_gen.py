"""Random instance generators shared by the test modules."""

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from chainsyz import buchberger as gb
from chainsyz.chainspace import ChainSpaceParams, chambers, is_generic
from chainsyz.modules import FreeModule, ModuleMap
from chainsyz.ring import Polynomial, RingCtx


def monomials_of_degree(ring: RingCtx, d: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(ring.num_vars), d):
        e = [0] * ring.num_vars
        for v in combo:
            e[v] += 1
        out.append(ring.monomial(e))
    return out


def random_homogeneous(rng: random.Random, ring: RingCtx, d: int, max_terms: int = 3) -> Polynomial:
    if d < 0:
        return ring.zero()
    pool = monomials_of_degree(ring, d)
    k = rng.randint(0, min(max_terms, len(pool)))
    return Polynomial(ring, frozenset(rng.sample(pool, k)))


def random_graded_map(rng: random.Random, ring: RingCtx, nrows: int, ncols: int,
                      max_deg: int = 2, density: float = 0.6) -> ModuleMap:
    """Homogeneous matrix: entry (i, j) has degree src[j] - tgt[i]; units appear sometimes."""
    tgt = tuple(rng.randint(0, 1) for _ in range(nrows))
    src = tuple(rng.randint(1, max_deg + 1) for _ in range(ncols))
    rows = []
    for i in range(nrows):
        row = []
        for j in range(ncols):
            if rng.random() < density:
                row.append(random_homogeneous(rng, ring, src[j] - tgt[i]))
            else:
                row.append(ring.zero())
        rows.append(row)
    return ModuleMap.from_rows(FreeModule(ring, src), FreeModule(ring, tgt), rows)


def random_ring(rng: random.Random, max_vars: int = 4) -> RingCtx:
    k = rng.randint(1, max_vars)
    return RingCtx(k, tuple(f"t{i + 1}" for i in range(k)))


def random_generic_ell(rng: random.Random, r: int, max_num: int = 9, max_den: int = 4) -> tuple:
    while True:
        ell = tuple(Fraction(rng.randint(1, max_num), rng.randint(1, max_den)) for _ in range(r))
        if is_generic(ell, 0):
            return ell


def chamber_reps(ell) -> list:
    return [c for _, _, c in chambers(ell)]


def params(ell, c=0, m=2, n=1) -> ChainSpaceParams:
    return ChainSpaceParams(m, n, tuple(ell), c)


# -- F_2 linear algebra oracle in one graded degree -----------------------------

def degree_basis(ring: RingCtx, shifts, d: int) -> dict:
    """{term: bit index} for the degree-d part of a graded free module."""
    basis = {}
    for i, s in enumerate(shifts):
        if d - s >= 0:
            for m in monomials_of_degree(ring, d - s):
                basis[gb.term(ring, i, m)] = len(basis)
    return basis


def image_vectors(f: ModuleMap, d: int, basis: dict) -> list:
    """Bit vectors spanning the degree-d part of im f."""
    ring = f.ring
    out = []
    for j, col in enumerate(f.columns):
        e = d - f.source.shifts[j]
        if e < 0 or not col:
            continue
        for m in monomials_of_degree(ring, e):
            v = 0
            for t in gb.mul_mono(ring, col, m):
                v ^= 1 << basis[t]
            out.append(v)
    return out


def echelon(vectors) -> dict:
    pivots = {}
    for v in vectors:
        while v:
            h = v.bit_length() - 1
            if h not in pivots:
                pivots[h] = v
                break
            v ^= pivots[h]
    return pivots


def in_span(pivots: dict, v: int) -> bool:
    while v:
        h = v.bit_length() - 1
        if h not in pivots:
            return False
        v ^= pivots[h]
    return True
