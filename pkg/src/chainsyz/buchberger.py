"""Buchberger's algorithm for submodules of free modules over F_2[v].

Works on raw representations for speed: a module element is a frozenset of
*terms*, each term an int ``((POSCAP - pos) << ring.pos_shift) | mono``.
With that layout plain integer comparison is the position-over-term order
with the lowest basis index dominant, and the term order of the ring breaks
ties inside one slot.  Multiplying by ``t / lead(g)`` for a term ``t``
divisible by ``lead(g)`` is adding ``t - lead(g)`` to every term of ``g``.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .cancel import CancelToken
from .ring import RingCtx

POSCAP = (1 << 24) - 1


def term(ring: RingCtx, pos: int, mono: int) -> int:
    return ((POSCAP - pos) << ring.pos_shift) | mono


def term_pos(ring: RingCtx, t: int) -> int:
    return POSCAP - (t >> ring.pos_shift)


def term_mono(ring: RingCtx, t: int) -> int:
    return t & ((1 << ring.pos_shift) - 1)


def shift_positions(ring: RingCtx, elem: Iterable[int], offset: int) -> frozenset:
    """Move every term of elem from slot p to slot p + offset."""
    d = offset << ring.pos_shift
    return frozenset(t - d for t in elem)


def mul_mono(ring: RingCtx, elem: Iterable[int], mono: int) -> frozenset:
    d = mono - ring.one
    return frozenset(t + d for t in elem)


def mul_poly(ring: RingCtx, elem: Iterable[int], poly: Iterable[int]) -> frozenset:
    acc = set()
    for m in poly:
        d = m - ring.one
        acc ^= {t + d for t in elem}
    return frozenset(acc)


class _Reducer:
    """Leading-term index over a growing list of basis elements."""

    def __init__(self, ring: RingCtx):
        self.ring = ring
        self.by_slot = {}

    def add(self, lt: int, elem: frozenset):
        self.by_slot.setdefault(lt >> self.ring.pos_shift, []).append((lt, elem))

    def find(self, t: int):
        cands = self.by_slot.get(t >> self.ring.pos_shift)
        if cands:
            divides = self.ring.divides
            for lt, g in cands:
                if divides(lt, t):
                    return lt, g
        return None

    def reduce(self, elem: Iterable[int], full: bool = True) -> frozenset:
        f = set(elem)
        rem = []
        find = self.find
        while f:
            t = max(f)
            hit = find(t)
            if hit is None:
                if not full:
                    return frozenset(f)
                f.discard(t)
                rem.append(t)
                continue
            lt, g = hit
            d = t - lt
            f ^= {x + d for x in g}
        return frozenset(rem)


def _pair_key(ring, lcm_term, shifts):
    pos = term_pos(ring, lcm_term)
    deg = ring.degree(term_mono(ring, lcm_term)) + (shifts[pos] if shifts else 0)
    return (deg, lcm_term)


def buchberger(ring: RingCtx, gens: Iterable[frozenset], shifts: Sequence[int] = None,
               cancel: CancelToken = None) -> list:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm first, measured
    in total degree including the slot shifts) with the Gebauer-Moeller
    chain criteria.  The product criterion is not used: it does not hold for
    submodules of free modules.  Output is sorted by leading term.
    """
    lcm = ring.lcm
    divides = ring.divides
    ps = ring.pos_shift
    mono_mask = (1 << ps) - 1

    basis = []          # list of (lt, elem)
    reducer = _Reducer(ring)
    pairs = []          # heap of (key, i, j)
    live = set()        # (i, j) still pending
    pair_lcm = {}

    def lcm_term(a, b):
        return (a & ~mono_mask) | lcm(a & mono_mask, b & mono_mask)

    def insert(elem):
        h = len(basis)
        lt_h = max(elem)
        slot = lt_h >> ps
        # chain criterion on pending pairs (B_k)
        for key in [p for p in live if pair_lcm[p] >> ps == slot]:
            L = pair_lcm[key]
            i, j = key
            if (divides(lt_h, L) and lcm_term(basis[i][0], lt_h) != L
                    and lcm_term(basis[j][0], lt_h) != L):
                live.discard(key)
        # new pairs, pruned by criteria M and F
        cand = {}
        for g, (lt_g, _) in enumerate(basis):
            if lt_g >> ps == slot:
                cand[g] = lcm_term(lt_g, lt_h)
        keep = {}
        for g, L in cand.items():
            dominated = False
            for g2, L2 in cand.items():
                if g2 != g and L2 != L and divides(L2, L):
                    dominated = True
                    break
            if not dominated and L not in keep.values():
                keep[g] = L
        basis.append((lt_h, elem))
        reducer.add(lt_h, elem)
        for g, L in keep.items():
            key = (g, h)
            live.add(key)
            pair_lcm[key] = L
            heapq.heappush(pairs, (_pair_key(ring, L, shifts), g, h))

    queue = [frozenset(g) for g in gens if g]
    queue.sort(key=lambda e: _pair_key(ring, max(e), shifts))
    for g in queue:
        if cancel is not None:
            cancel.check()
        r = reducer.reduce(g)
        if r:
            insert(r)

    while pairs:
        if cancel is not None:
            cancel.check()
        _, i, j = heapq.heappop(pairs)
        if (i, j) not in live:
            continue
        live.discard((i, j))
        L = pair_lcm.pop((i, j))
        lt_i, f = basis[i]
        lt_j, g = basis[j]
        di, dj = L - lt_i, L - lt_j
        s = {x + di for x in f}
        s ^= {x + dj for x in g}
        r = reducer.reduce(s)
        if r:
            insert(r)

    return interreduce(ring, [e for _, e in basis])


def interreduce(ring: RingCtx, elems: Iterable[frozenset]) -> list:
    """Minimal, fully reduced version of a Groebner basis, sorted by lead."""
    elems = [e for e in elems if e]
    elems.sort(key=max)
    divides = ring.divides
    ps = ring.pos_shift
    kept = []
    for e in elems:
        lt = max(e)
        if any(lk >> ps == lt >> ps and divides(lk, lt) for lk, _ in kept):
            continue
        # drop earlier elements whose lead is a multiple of this one
        kept = [(lk, k) for lk, k in kept if not (lk >> ps == lt >> ps and divides(lt, lk))]
        kept.append((lt, e))
    out = []
    for idx, (lt, e) in enumerate(kept):
        red = _Reducer(ring)
        for jdx, (lk, k) in enumerate(kept):
            if jdx != idx:
                red.add(lk, k)
        tail = red.reduce(e - {lt})
        out.append(frozenset(tail | {lt}))
    out.sort(key=max)
    return out


def reduce_against(ring: RingCtx, elem: Iterable[int], basis: Iterable[frozenset]) -> frozenset:
    red = _Reducer(ring)
    for g in basis:
        if g:
            red.add(max(g), g)
    return red.reduce(elem)


def make_reducer(ring: RingCtx, basis: Iterable[frozenset]) -> _Reducer:
    red = _Reducer(ring)
    for g in basis:
        if g:
            red.add(max(g), g)
    return red
