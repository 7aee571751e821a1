"""Homological dimension, freeness and syzygy order of presented modules.

The syzygy order uses the Auslander transpose: for a minimal presentation
F1 -> F0 -> M -> 0 put Tr M = coker(F0* -> F1*).  M is a k-th syzygy iff
Ext^i(Tr M, R) = 0 for 1 <= i <= k.  Ext vanishing is decided exactly by
Groebner membership in the dualized resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import buchberger as gb
from .cancel import CancelToken
from .modules import (FreeModule, FreeResolution, ModuleElem, ModuleMap, Presentation,
                      Resolver, free_resolution, kernel, minimal_presentation)


@dataclass(frozen=True)
class SyzygyOrder:
    """Either a non-negative integer or FREE (value None)."""

    value: Optional[int] = None

    @property
    def is_free(self) -> bool:
        return self.value is None

    def __str__(self):
        return "FREE" if self.value is None else str(self.value)

    @classmethod
    def parse(cls, text) -> "SyzygyOrder":
        if text in ("FREE", None):
            return cls(None)
        return cls(int(text))


FREE = SyzygyOrder(None)


@dataclass(frozen=True)
class ExtReport:
    index: int
    vanishes: bool
    witness: Optional[ModuleElem] = None


def auslander_transpose(p: Presentation, cancel: CancelToken = None) -> Presentation:
    """coker of the transposed minimal relation matrix (degree shifts negated)."""
    mp = p if p.is_minimal() else minimal_presentation(p, cancel=cancel)
    t = mp.rels.transpose()
    return Presentation(t.target, t).without_zero_relations()


def _ext_at(res: FreeResolution, i: int, cancel: CancelToken = None) -> ExtReport:
    """Homology at spot i of Hom(res, R)."""
    mods = res.modules
    if i >= len(mods) or mods[i].rank == 0:
        return ExtReport(i, True)
    Fi_dual = mods[i].dual()
    if i < len(res.differentials):
        cycles = kernel(res.differentials[i].transpose(), cancel=cancel)
    else:
        cycles = [Fi_dual.basis(j) for j in range(Fi_dual.rank)]
    if not cycles:
        return ExtReport(i, True)
    boundary = res.differentials[i - 1].transpose()
    basis = gb.buchberger(Fi_dual.ring, [c for c in boundary.columns if c], Fi_dual.shifts,
                          cancel=cancel)
    red = gb.make_reducer(Fi_dual.ring, basis)
    for z in cycles:
        if red.reduce(z.terms):
            return ExtReport(i, False, ModuleElem(Fi_dual, z.terms))
    return ExtReport(i, True)


def ext_vanishing(p: Presentation, i: int, cancel: CancelToken = None) -> ExtReport:
    """Decide whether Ext^i(coker p, R) = 0; a nonzero cycle is returned as witness."""
    if i < 1:
        raise ValueError("Ext index must be positive")
    res = free_resolution(p, max_len=i + 1, minimal=True, cancel=cancel)
    return _ext_at(res, i, cancel=cancel)


def split_summands(p: Presentation) -> list:
    """Block-diagonal pieces of the relation matrix (generators linked by a relation).

    Generators that occur in no relation come back as one free piece each.
    """
    ring = p.ring
    n = p.gens.rank
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rel_gens = []
    for col in p.rels.columns:
        idx = sorted({gb.term_pos(ring, t) for t in col})
        rel_gens.append(idx)
        for a in idx[1:]:
            ra, rb = find(idx[0]), find(a)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for g in range(n):
        groups.setdefault(find(g), []).append(g)
    rels_of = {}
    for j, idx in enumerate(rel_gens):
        if idx:
            rels_of.setdefault(find(idx[0]), []).append(j)
    pieces = []
    for root in sorted(groups):
        gens = groups[root]
        local = {g: k for k, g in enumerate(gens)}
        gmod = FreeModule(ring, tuple(p.gens.shifts[g] for g in gens))
        cols = []
        for j in rels_of.get(root, []):
            cols.append(frozenset(gb.term(ring, local[gb.term_pos(ring, t)], gb.term_mono(ring, t))
                                  for t in p.rels.columns[j]))
        src = FreeModule(ring, tuple(p.rels.source.shifts[j] for j in rels_of.get(root, [])))
        pieces.append(Presentation(gmod, ModuleMap(src, gmod, tuple(cols))))
    return pieces


def _order_of_piece(piece: Presentation, cancel: CancelToken = None) -> int:
    num_vars = piece.ring.num_vars
    tr = auslander_transpose(piece, cancel=cancel)
    resolver = Resolver(tr, minimal=True, cancel=cancel)
    for i in range(1, num_vars + 1):
        resolver.extend_to(i + 1)
        if not _ext_at(resolver.resolution(), i, cancel=cancel).vanishes:
            return i - 1
    raise ArithmeticError("non-free module passed every Ext test up to num_vars")


def syzygy_order(p: Presentation, cancel: CancelToken = None) -> SyzygyOrder:
    """Largest j with coker(p) a j-th syzygy, or FREE.  The zero module is FREE."""
    mp = minimal_presentation(p, cancel=cancel)
    if mp.rels.source.rank == 0:
        return FREE
    best = None
    for piece in split_summands(mp):
        if piece.rels.source.rank == 0:
            continue
        k = _order_of_piece(piece, cancel=cancel)
        best = k if best is None else min(best, k)
    return SyzygyOrder(best)


def homological_dimension(p: Presentation, cancel: CancelToken = None) -> int:
    """Length of the minimal free resolution."""
    return free_resolution(p, minimal=True, cancel=cancel).length


def is_free(p: Presentation, cancel: CancelToken = None) -> bool:
    return minimal_presentation(p, cancel=cancel).rels.source.rank == 0
