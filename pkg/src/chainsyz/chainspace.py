"""Equivariant cohomology of big chain spaces N_c as modules over F_2[t_1..t_r].

Subsets J of {1..r} are bitmasks (bit j <-> coordinate j+1) and are always
listed in (cardinality, colex) order, the same order the Koszul module uses.
Length data are exact ``Fraction``s; floats are rejected because genericity
and chamber membership are sign decisions.

"Divided" basis labels s_J / t^mu are bookkeeping only: a basis slot with an
adjusted degree, never a Laurent polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence, Tuple

from . import buchberger as gb
from .homological import SyzygyOrder, is_free, syzygy_order
from .koszul import default_ring, subset_order_key
from .modules import (FreeModule, ModuleMap, Presentation, direct_sum, generic_rank,
                      image_presentation, kernel_map, minimal_presentation)
from .ring import Polynomial, RingCtx


class NonGenericError(ValueError):
    """l(J) hits 0 or +-c for some subset J."""

    def __init__(self, subset: int, value: Fraction, target: str):
        self.subset = subset
        self.value = value
        self.target = target
        if target == "0":
            msg = f"l({subset_str(subset)}) = {value}"
        else:
            msg = f"l({subset_str(subset)}) = {value} = {target}"
        super().__init__(msg)


def to_rational(x) -> Fraction:
    """Exact rational from int, Fraction or a 'p/q' / 'p' string; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not length data")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) or isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(ch in s for ch in ".eE"):
            raise ValueError(f"expected an exact rational 'p/q', got {x!r}")
        return Fraction(s)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def subset_str(J: int) -> str:
    elems = [str(j + 1) for j in range(J.bit_length()) if J >> j & 1]
    return "{" + ",".join(elems) + "}"


def subset_members(J: int) -> list:
    return [j for j in range(J.bit_length()) if J >> j & 1]


def all_subsets(r: int) -> list:
    return sorted(range(1 << r), key=subset_order_key)


def popcount(J: int) -> int:
    return bin(J).count("1")


# -- subset calculus -------------------------------------------------------

def subset_weight(ell: Sequence, J: int) -> Fraction:
    """l(J) = sum of l_j over J minus sum over the complement."""
    total = Fraction(0)
    for j, lj in enumerate(ell):
        total += lj if J >> j & 1 else -lj
    return total


def find_nongeneric(ell: Sequence, c=0) -> Optional[NonGenericError]:
    ell = [to_rational(x) for x in ell]
    c = to_rational(c)
    weights = [(J, subset_weight(ell, J)) for J in all_subsets(len(ell))]
    # report a hit of +c before one of -c
    for J, v in weights:
        if v == c:
            return NonGenericError(J, v, "0" if c == 0 else "c")
    for J, v in weights:
        if v == -c:
            return NonGenericError(J, v, "-c")
    return None


def is_generic(ell: Sequence, c=0) -> bool:
    """True iff l(J) differs from c and from -c for every subset J."""
    return find_nongeneric(ell, c) is None


def long_short_sets(ell: Sequence, c=0) -> Tuple[list, list]:
    """(L_c, S_c) = ({J : l(J) > c}, {I : l(I) < -c}) in (cardinality, colex) order."""
    err = find_nongeneric(ell, c)
    if err is not None:
        raise err
    c = to_rational(c)
    subsets = all_subsets(len(ell))
    longs = [J for J in subsets if subset_weight(ell, J) > c]
    shorts = [I for I in subsets if subset_weight(ell, I) < -c]
    return longs, shorts


def critical_values(ell: Sequence) -> Tuple[list, Fraction]:
    """Sorted distinct values l(J) and the least positive one."""
    err = find_nongeneric(ell, 0)
    if err is not None:
        raise err
    vals = sorted({subset_weight(ell, J) for J in range(1 << len(ell))})
    cr_min = min(v for v in vals if v > 0)
    return vals, cr_min


def chambers(ell: Sequence) -> list:
    """[(lo, hi, representative)] for c >= 0; hi is None on the unbounded chamber."""
    vals, _ = critical_values(ell)
    pos = [v for v in vals if v > 0]
    out = []
    lo = Fraction(0)
    for v in pos:
        out.append((lo, v, (lo + v) / 2))
        lo = v
    out.append((lo, None, lo + 1))
    return out


def mu(i: int, J: int, ell: Sequence) -> int:
    v = subset_weight(ell, J)
    if v == 0:
        raise ValueError(f"l({subset_str(J)}) = 0")
    return i if v > 0 else 0


# -- parameters ------------------------------------------------------------

@dataclass(frozen=True)
class ChainSpaceParams:
    m: int
    n: int
    ell: tuple
    c: Fraction = Fraction(0)

    def __post_init__(self):
        ell = tuple(to_rational(x) for x in self.ell)
        c = to_rational(self.c)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "c", c)
        if not isinstance(self.m, int) or self.m < 2:
            raise ValueError("m must be an integer >= 2")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError("n must be a non-negative integer")
        if not ell:
            raise ValueError("length vector must be non-empty")
        if any(x <= 0 for x in ell):
            raise ValueError("all lengths must be positive")
        if c < 0:
            raise ValueError("c must be >= 0 (N_c and N_-c agree)")
        for target in (0, c):
            err = find_nongeneric(ell, target)
            if err is not None:
                raise err

    @property
    def r(self) -> int:
        return len(self.ell)

    @property
    def sphere_dim(self) -> int:
        return self.m + self.n - 1

    def with_c(self, c) -> "ChainSpaceParams":
        return ChainSpaceParams(self.m, self.n, self.ell, c)

    def to_record(self) -> dict:
        return {"m": self.m, "n": self.n, "l": [str(x) for x in self.ell], "c": str(self.c)}

    @classmethod
    def from_record(cls, rec: dict) -> "ChainSpaceParams":
        return cls(int(rec["m"]), int(rec["n"]), tuple(rec["l"]), rec.get("c", "0"))


def base_ring(params: ChainSpaceParams) -> RingCtx:
    """R = F_2[t_1..t_r]."""
    return default_ring(params.r)


def extended_ring(params: ChainSpaceParams) -> RingCtx:
    """R~ = F_2[t, t_1..t_r]; variable 0 is t."""
    r = params.r
    return RingCtx(r + 1, ("t",) + tuple(f"t{i + 1}" for i in range(r)))


# -- ambient cohomology and fixed points -------------------------------------

@dataclass(frozen=True)
class AmbientPresentation:
    """F_2[s_1..s_r, t, t_1..t_r] / (s_j * sbar_j) with sbar_j = s_j + t^(m-1) t_j^n."""

    ring: RingCtx
    degrees: dict
    sbar: tuple
    relations: tuple

    def s(self, j: int) -> Polynomial:
        return self.ring.gen(j)


def presentation_ambient(params: ChainSpaceParams) -> AmbientPresentation:
    r, m, n = params.r, params.m, params.n
    names = tuple(f"s{j + 1}" for j in range(r)) + ("t",) + tuple(f"t{j + 1}" for j in range(r))
    ring = RingCtx(2 * r + 1, names)
    degrees = {f"s{j + 1}": params.sphere_dim for j in range(r)}
    degrees.update({"t": 1}, **{f"t{j + 1}": 1 for j in range(r)})
    t = ring.gen(r)
    sbar = tuple(ring.gen(j) + t ** (m - 1) * ring.gen(r + 1 + j) ** n for j in range(r))
    rels = tuple(ring.gen(j) * sbar[j] for j in range(r))
    return AmbientPresentation(ring, degrees, sbar, rels)


def restrict_to_fixed_point(params: ChainSpaceParams, J: int, j: int) -> Polynomial:
    """Image of s_j (0-based j) at the fixed point indexed by J, in R~."""
    ring = extended_ring(params)
    if not 0 <= j < params.r:
        raise ValueError("generator index out of range")
    if J >> j & 1:
        return ring.gen(0) ** (params.m - 1) * ring.gen(j + 1) ** params.n
    return ring.zero()


def _tn_product(ring: RingCtx, params: ChainSpaceParams, K: int, t_power: int) -> int:
    """Monomial t^t_power * prod_{j in K} t_j^n of R~."""
    e = [0] * ring.num_vars
    e[0] = t_power
    for j in subset_members(K):
        e[j + 1] = params.n
    return ring.monomial(e)


def sbar_expansion(params: ChainSpaceParams, J: int, denom: int, mu_level: int) -> dict:
    """sbar_J / t^denom written on slots s_I / t^mu_level(I): {I: monomial of R~}.

    Uses sbar_J = sum_{I subset J} s_I t^((m-1)|J-I|) prod_{j in J-I} t_j^n.
    """
    ring = extended_ring(params)
    ell = params.ell
    out = {}
    I = J
    while True:
        rest = J & ~I
        power = (params.m - 1) * popcount(rest) + mu(mu_level, I, ell) - denom
        if power < 0:
            raise ArithmeticError("expansion needs a negative power of t")
        out[I] = _tn_product(ring, params, rest, power)
        if I == 0:
            break
        I = (I - 1) & J
    return out


# -- module presentations over R~ ----------------------------------------------

def free_basis(params: ChainSpaceParams, i: int) -> list:
    """Basis labels s_J / t^mu_i(J) of the free R~-module, with their degrees."""
    if not 0 <= i <= params.m - 1:
        raise ValueError(f"level i={i} outside [0, {params.m - 1}]")
    return [(J, popcount(J) * params.sphere_dim - mu(i, J, params.ell))
            for J in all_subsets(params.r)]


def _slot_presentation(params, slots, rel_specs):
    """Presentation over R~ on the given slots; rel_specs lists {slot: monomial} dicts."""
    ring = extended_ring(params)
    index = {J: k for k, (J, _) in enumerate(slots)}
    gens = FreeModule(ring, tuple(d for _, d in slots))
    cols = []
    degs = []
    for spec in rel_specs:
        col = frozenset(gb.term(ring, index[I], mono) for I, mono in spec.items())
        cols.append(col)
        lt = max(col)
        degs.append(ring.degree(gb.term_mono(ring, lt)) + gens.shifts[gb.term_pos(ring, lt)])
    return Presentation(gens, ModuleMap(FreeModule(ring, tuple(degs)), gens, tuple(cols)))


def level_presentation(params: ChainSpaceParams, i: int) -> Presentation:
    """Cohomology of the i-th level set for the enlarged group, as an R~-module.

    Generators are the level-(i-1) basis slots; for every long J the slot
    s_J / t^(i-1) and the expansion of sbar_J / t^(i-1) are relations.
    """
    if not 1 <= i <= params.m:
        raise ValueError(f"level i={i} outside [1, {params.m}]")
    ring = extended_ring(params)
    slots = free_basis(params, i - 1)
    specs = []
    for J, _ in slots:
        if subset_weight(params.ell, J) > 0:
            specs.append({J: ring.one})
            specs.append(sbar_expansion(params, J, i - 1, i - 1))
    return _slot_presentation(params, slots, specs)


def chain_space_presentation(params: ChainSpaceParams) -> Presentation:
    """H*_{G~}(N_c) over R~: slots at level m-1 modulo S + Sbar."""
    ring = extended_ring(params)
    m, c, ell = params.m, params.c, params.ell
    slots = free_basis(params, m - 1)
    specs = []
    for I, _ in slots:
        if subset_weight(ell, I) > -c:
            specs.append({I: ring.one})
    for J, _ in slots:
        if subset_weight(ell, J) > c:
            specs.append(sbar_expansion(params, J, mu(m - 1, J, ell), m - 1))
    return _slot_presentation(params, slots, specs)


# -- the map iota ------------------------------------------------------------

@dataclass(frozen=True)
class IotaMatrix:
    rows: tuple
    cols: tuple
    matrix: ModuleMap

    def text(self) -> str:
        return self.matrix.to_text()


def _require_pipeline(params: ChainSpaceParams):
    if params.n < 1:
        raise ValueError("n = 0 puts unit entries into iota; the G-equivariant pipeline needs n >= 1")


def build_iota(params: ChainSpaceParams) -> IotaMatrix:
    """iota(sbar_J / t^(m-1)) = sum over j in J with l(J - j) < -c of t_j^n s_(J - j)."""
    _require_pipeline(params)
    ring = base_ring(params)
    ell, c, d = params.ell, params.c, params.sphere_dim
    longs, shorts = long_short_sets(ell, c)
    row_index = {I: k for k, I in enumerate(shorts)}
    cols = []
    for J in longs:
        col = set()
        for j in subset_members(J):
            I = J & ~(1 << j)
            if I in row_index:
                e = [0] * params.r
                e[j] = params.n
                col.add(gb.term(ring, row_index[I], ring.monomial(e)))
        cols.append(frozenset(col))
    src = FreeModule(ring, tuple(popcount(J) * d - (params.m - 1) for J in longs))
    tgt = FreeModule(ring, tuple(popcount(I) * d for I in shorts))
    return IotaMatrix(tuple(shorts), tuple(longs), ModuleMap(src, tgt, tuple(cols)))


def iota_via_expansion(params: ChainSpaceParams) -> ModuleMap:
    """iota recomputed from the sbar expansions: drop S slots, then set t = 0."""
    _require_pipeline(params)
    ring = base_ring(params)
    ext = extended_ring(params)
    ell, c, m = params.ell, params.c, params.m
    longs, shorts = long_short_sets(ell, c)
    row_index = {I: k for k, I in enumerate(shorts)}
    cols = []
    for J in longs:
        col = set()
        for I, mono in sbar_expansion(params, J, mu(m - 1, J, ell), m - 1).items():
            if subset_weight(ell, I) > -c:
                continue
            e = ext.exponents(mono)
            if e[0]:
                continue
            col ^= {gb.term(ring, row_index[I], ring.monomial(e[1:]))}
        cols.append(frozenset(col))
    d = params.sphere_dim
    src = FreeModule(ring, tuple(popcount(J) * d - (m - 1) for J in longs))
    tgt = FreeModule(ring, tuple(popcount(I) * d for I in shorts))
    return ModuleMap(src, tgt, tuple(cols))


def cohomology(params: ChainSpaceParams):
    """(ker iota, coker iota, their direct sum) as presentations over R."""
    iota = build_iota(params).matrix
    coker = Presentation.cokernel(iota)
    ker = image_presentation(kernel_map(iota))
    return ker, coker, direct_sum(coker, ker)


def dims(params: ChainSpaceParams) -> Tuple[int, int]:
    """(dim H*(N_c), dim H*(N_c^G)) = (2|L_c|, 2|L_c| - 2 rk iota)."""
    iota = build_iota(params)
    dim_h = 2 * len(iota.cols)
    return dim_h, dim_h - 2 * generic_rank(iota.matrix)


# -- classification and rank extension ------------------------------------------

def maximal_order(r: int) -> int:
    """Largest syzygy order a non-free module can have for a rank-r 2-torus."""
    return (r - 1) // 2


def _model_families(r: int) -> list:
    k = maximal_order(r)
    subsets = range(1 << r)
    if r % 2:
        return [frozenset(J for J in subsets if popcount(J) >= k + 1)]
    # one coordinate of the model vector is 0; it may sit in any slot
    return [frozenset(J for J in subsets if popcount(J & ~(1 << p)) >= k + 1)
            for p in range(r)]


def classify_maximal(params: ChainSpaceParams) -> Optional[int]:
    """Predicted order k when (ell, c) has the long-set family of the extremal model, else None."""
    longs, _ = long_short_sets(params.ell, params.c)
    fam = frozenset(longs)
    if any(fam == model for model in _model_families(params.r)):
        return maximal_order(params.r)
    return None


def extend_by_zero(params: ChainSpaceParams) -> ChainSpaceParams:
    """Append a tiny positive length that behaves like a zero coordinate."""
    ell, c = params.ell, params.c
    gaps = []
    for J in range(1 << params.r):
        v = subset_weight(ell, J)
        gaps.extend((abs(v - c), abs(v + c), abs(v)))
    gap = min(gaps)
    if gap <= 0:
        raise ValueError("no positive gap: parameters are not generic")
    return ChainSpaceParams(params.m, params.n, ell + (gap / 2,), c)


# -- full report -------------------------------------------------------------

@dataclass(frozen=True)
class SyzygyReport:
    params: ChainSpaceParams
    long_sets: tuple
    short_sets: tuple
    critical_values: tuple
    cr_min: Fraction
    iota: IotaMatrix
    rank_iota: int
    dim_H: int
    dim_H_fixed: int
    ker_pres: Presentation
    coker_pres: Presentation
    order: SyzygyOrder
    free: bool
    classification_predicted: Optional[int]
    consistent: bool
    free_rank: Optional[int] = None

    @property
    def is_zero(self) -> bool:
        return not self.long_sets

    def verdict(self) -> str:
        if self.is_zero:
            return "ZERO"
        return str(self.order)


def full_report(params: ChainSpaceParams) -> SyzygyReport:
    ell, c = params.ell, params.c
    longs, shorts = long_short_sets(ell, c)
    crit, cr_min = critical_values(ell)
    iota = build_iota(params)
    rank = generic_rank(iota.matrix)
    dim_h = 2 * len(longs)
    dim_fixed = dim_h - 2 * rank
    ker, coker, combined = cohomology(params)
    order = syzygy_order(combined)
    free = is_free(combined)
    predicted = classify_maximal(params)
    k = maximal_order(params.r)
    engine_max = order.value == k
    consistent = (free == (dim_h == dim_fixed)
                  and free == order.is_free
                  and engine_max == (predicted is not None))
    free_rank = minimal_presentation(combined).gens.rank if free else None
    return SyzygyReport(params, tuple(longs), tuple(shorts), tuple(crit), cr_min, iota, rank,
                        dim_h, dim_fixed, ker, coker, order, free, predicted, consistent,
                        free_rank)
