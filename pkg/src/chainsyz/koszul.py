"""Koszul complexes over F_2[t_1..t_r] and their images/kernels/cokernels.

Basis slots of Lambda^k are the k-subsets of {1..r}, as bitmasks, in
(cardinality, colex) order.  Colex order on subsets of equal size is the
numeric order of their bitmasks.  Over F_2 the differential has no signs.
"""

from __future__ import annotations

from itertools import combinations

from . import buchberger as gb
from .modules import (FreeModule, ModuleMap, Presentation, image_presentation, kernel_map)
from .ring import RingCtx


def default_ring(r: int) -> RingCtx:
    return RingCtx(r, tuple(f"t{i + 1}" for i in range(r)))


def subsets_of_size(r: int, k: int) -> list:
    return sorted(sum(1 << i for i in c) for c in combinations(range(r), k))


def subset_order_key(mask: int):
    return (bin(mask).count("1"), mask)


def exterior_module(ring: RingCtx, k: int) -> FreeModule:
    """Lambda^k with every basis slot in degree k."""
    r = ring.num_vars
    return FreeModule(ring, (k,) * len(subsets_of_size(r, k)))


def koszul_differential(r: int, k: int, ring: RingCtx = None) -> ModuleMap:
    """delta_k : Lambda^k -> Lambda^{k-1}, e_S -> sum_{j in S} t_j e_{S - j}."""
    if ring is None:
        ring = default_ring(r)
    if ring.num_vars != r:
        raise ValueError("ring must have r variables")
    if not 1 <= k <= r:
        raise ValueError(f"exterior degree k={k} outside [1, {r}]")
    src_sets = subsets_of_size(r, k)
    tgt_index = {S: i for i, S in enumerate(subsets_of_size(r, k - 1))}
    cols = []
    for S in src_sets:
        col = set()
        for j in range(r):
            if S >> j & 1:
                col.add(gb.term(ring, tgt_index[S & ~(1 << j)], ring.var(j)))
        cols.append(frozenset(col))
    return ModuleMap(exterior_module(ring, k), exterior_module(ring, k - 1), tuple(cols))


def koszul_image_presentation(r: int, j: int, ring: RingCtx = None) -> Presentation:
    """K_j = im delta_j, generated by the columns, related by ker delta_j."""
    if not 1 <= j <= r:
        raise ValueError(f"j={j} outside [1, {r}]")
    return image_presentation(koszul_differential(r, j, ring))


def koszul_ker_coker(r: int, k: int, ring: RingCtx = None):
    """(ker, coker) of delta : Lambda^{k+1} -> Lambda^k, as presentations."""
    if not 1 <= k + 1 <= r:
        raise ValueError(f"k={k} outside [0, {r - 1}]")
    d = koszul_differential(r, k + 1, ring)
    ker = image_presentation(kernel_map(d))
    coker = Presentation.cokernel(d)
    return ker, coker


def residue_field_presentation(r: int, ring: RingCtx = None) -> Presentation:
    """F_2 = R/(t_1..t_r) presented by delta_1."""
    return Presentation.cokernel(koszul_differential(r, 1, ring))
