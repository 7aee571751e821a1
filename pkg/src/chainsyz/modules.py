"""Graded free modules, maps between them, presentations and resolutions.

Module term order is position-over-term with the lowest basis index
dominant, ties broken by the ring's term order.  Everything here is a thin,
immutable wrapper over the raw term sets used by ``chainsyz.buchberger``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence

from . import buchberger as gb
from .cancel import CancelToken
from .hilbert import HilbertData, hilbert_data, monomial_ideal_numerator
from .ring import Polynomial, RingCtx, RingMismatch, poly_exact_div, poly_mul_terms


@dataclass(frozen=True)
class FreeModule:
    """R^rank with basis slot i generated in degree shifts[i]."""

    ring: RingCtx
    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(int(s) for s in self.shifts))

    @classmethod
    def of_rank(cls, ring: RingCtx, rank: int, shift: int = 0) -> "FreeModule":
        return cls(ring, (shift,) * rank)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def dual(self) -> "FreeModule":
        return FreeModule(self.ring, tuple(-s for s in self.shifts))

    def __add__(self, other: "FreeModule") -> "FreeModule":
        if other.ring != self.ring:
            raise RingMismatch("direct sum of modules over different rings")
        return FreeModule(self.ring, self.shifts + other.shifts)

    def basis(self, i: int) -> "ModuleElem":
        return ModuleElem(self, frozenset((gb.term(self.ring, i, self.ring.one),)))

    def zero(self) -> "ModuleElem":
        return ModuleElem(self, frozenset())

    def element(self, components: Sequence[Polynomial]) -> "ModuleElem":
        if len(components) != self.rank:
            raise ValueError("wrong number of components")
        terms = set()
        for i, p in enumerate(components):
            if p.ring != self.ring:
                raise RingMismatch("component from a different ring")
            terms |= {gb.term(self.ring, i, m) for m in p.terms}
        return ModuleElem(self, frozenset(terms))


@dataclass(frozen=True)
class ModuleElem:
    """Element of a free module, stored as raw position-tagged terms."""

    module: FreeModule
    terms: frozenset

    @property
    def ring(self) -> RingCtx:
        return self.module.ring

    @property
    def components(self) -> list:
        ring = self.ring
        comps = [set() for _ in range(self.module.rank)]
        for t in self.terms:
            comps[gb.term_pos(ring, t)].add(gb.term_mono(ring, t))
        return [Polynomial(ring, frozenset(c)) for c in comps]

    def __add__(self, other: "ModuleElem") -> "ModuleElem":
        if other.module != self.module:
            raise RingMismatch("elements of different modules")
        return ModuleElem(self.module, self.terms ^ other.terms)

    def scale(self, p: Polynomial) -> "ModuleElem":
        return ModuleElem(self.module, gb.mul_poly(self.ring, self.terms, p.terms))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        ring, shifts = self.ring, self.module.shifts
        return {ring.degree(gb.term_mono(ring, t)) + shifts[gb.term_pos(ring, t)]
                for t in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of the leading term (the degree, for homogeneous elements)."""
        if not self.terms:
            raise ValueError("zero element has no degree")
        return _term_degree(self.ring, self.module.shifts, max(self.terms))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _term_degree(ring, shifts, t):
    return ring.degree(gb.term_mono(ring, t)) + shifts[gb.term_pos(ring, t)]


@dataclass(frozen=True)
class ModuleMap:
    """Matrix of a map between free modules; columns are images of source basis vectors."""

    source: FreeModule
    target: FreeModule
    columns: tuple

    def __post_init__(self):
        cols = tuple(c.terms if isinstance(c, ModuleElem) else frozenset(c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if len(cols) != self.source.rank:
            raise ValueError(f"{len(cols)} columns for a source of rank {self.source.rank}")
        if self.source.ring != self.target.ring:
            raise RingMismatch("source and target over different rings")
        ring, b = self.target.ring, self.target.rank
        for c in cols:
            for t in c:
                if not 0 <= gb.term_pos(ring, t) < b:
                    raise ValueError("column entry outside the target module")

    @property
    def ring(self) -> RingCtx:
        return self.target.ring

    @classmethod
    def from_rows(cls, source: FreeModule, target: FreeModule, rows) -> "ModuleMap":
        """Build from a row-major matrix of Polynomials (target.rank x source.rank)."""
        ring = target.ring
        cols = [set() for _ in range(source.rank)]
        if len(rows) != target.rank:
            raise ValueError("row count must equal target rank")
        for i, row in enumerate(rows):
            if len(row) != source.rank:
                raise ValueError("row length must equal source rank")
            for j, p in enumerate(row):
                cols[j] |= {gb.term(ring, i, m) for m in p.terms}
        return cls(source, target, tuple(frozenset(c) for c in cols))

    @classmethod
    def zero(cls, source: FreeModule, target: FreeModule) -> "ModuleMap":
        return cls(source, target, tuple(frozenset() for _ in range(source.rank)))

    @classmethod
    def identity(cls, module: FreeModule) -> "ModuleMap":
        return cls(module, module, tuple(module.basis(i).terms for i in range(module.rank)))

    def column(self, j: int) -> ModuleElem:
        return ModuleElem(self.target, self.columns[j])

    def entry_terms(self, i: int, j: int) -> frozenset:
        ring = self.ring
        return frozenset(gb.term_mono(ring, t) for t in self.columns[j] if gb.term_pos(ring, t) == i)

    def entry(self, i: int, j: int) -> Polynomial:
        return Polynomial(self.ring, self.entry_terms(i, j))

    def rows(self) -> list:
        ring = self.ring
        table = [[set() for _ in range(self.source.rank)] for _ in range(self.target.rank)]
        for j, c in enumerate(self.columns):
            for t in c:
                table[gb.term_pos(ring, t)][j].add(gb.term_mono(ring, t))
        return [[Polynomial(ring, frozenset(x)) for x in row] for row in table]

    def __call__(self, v: ModuleElem) -> ModuleElem:
        if v.module != self.source:
            raise RingMismatch("element not in the source module")
        ring = self.ring
        acc = set()
        for t in v.terms:
            d = gb.term_mono(ring, t) - ring.one
            acc ^= {x + d for x in self.columns[gb.term_pos(ring, t)]}
        return ModuleElem(self.target, frozenset(acc))

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """self o inner."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        cols = tuple(self(inner.column(j)).terms for j in range(inner.source.rank))
        return ModuleMap(inner.source, self.target, cols)

    def transpose(self) -> "ModuleMap":
        """The dual map Hom(target, R) -> Hom(source, R)."""
        ring = self.ring
        cols = [set() for _ in range(self.target.rank)]
        for j, col in enumerate(self.columns):
            for t in col:
                cols[gb.term_pos(ring, t)].add(gb.term(ring, j, gb.term_mono(ring, t)))
        return ModuleMap(self.target.dual(), self.source.dual(), tuple(frozenset(c) for c in cols))

    def is_zero(self) -> bool:
        return not any(self.columns)

    def is_graded(self) -> bool:
        """Column j is homogeneous of degree source.shifts[j]."""
        ring, shifts = self.ring, self.target.shifts
        for j, c in enumerate(self.columns):
            for t in c:
                if _term_degree(ring, shifts, t) != self.source.shifts[j]:
                    return False
        return True

    def to_text(self) -> str:
        return matrix_to_text(self)

    def __str__(self):
        return self.to_text()


# -- matrix text dump --------------------------------------------------------

def matrix_to_text(f: ModuleMap) -> str:
    """Row-major dump: header line, then one row per line, entries joined by ' | '."""
    lines = [f"# {f.target.rank}x{f.source.rank}"
             f" source_shifts={','.join(map(str, f.source.shifts))}"
             f" target_shifts={','.join(map(str, f.target.shifts))}"]
    for row in f.rows():
        lines.append(" | ".join(str(p) for p in row))
    return "\n".join(lines)


def matrix_from_text(ring: RingCtx, text: str) -> ModuleMap:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    header = lines[0].split()
    if header[0] != "#":
        raise ValueError("missing matrix header")
    nrows, ncols = (int(x) for x in header[1].split("x"))

    def shifts(tok, k):
        vals = tok.split("=", 1)[1]
        out = tuple(int(x) for x in vals.split(",") if x != "")
        if len(out) != k:
            raise ValueError("shift list length mismatch")
        return out

    src = FreeModule(ring, shifts(header[2], ncols))
    tgt = FreeModule(ring, shifts(header[3], nrows))
    body = lines[1:] if ncols else [""] * nrows
    if len(body) != nrows:
        raise ValueError("row count mismatch")
    rows = []
    for ln in body:
        cells = [ring.parse(c) for c in ln.split("|")] if ncols else []
        if len(cells) != ncols:
            raise ValueError("column count mismatch")
        rows.append(cells)
    return ModuleMap.from_rows(src, tgt, rows)


# -- Groebner bases -----------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    ambient: FreeModule
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def leading_terms(self) -> list:
        return [max(e) for e in self.elements]

    def as_elems(self) -> list:
        return [ModuleElem(self.ambient, e) for e in self.elements]


def groebner(gens: Iterable[ModuleElem], ambient: FreeModule,
             cancel: CancelToken = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule of ``ambient`` spanned by gens."""
    raw = []
    for g in gens:
        if isinstance(g, ModuleElem):
            if g.module.ring != ambient.ring or g.module.rank != ambient.rank:
                raise RingMismatch("generator outside the ambient module")
            raw.append(g.terms)
        else:
            raw.append(frozenset(g))
    basis = gb.buchberger(ambient.ring, raw, ambient.shifts, cancel=cancel)
    return GroebnerBasis(ambient, tuple(basis))


def normal_form(e: ModuleElem, basis: GroebnerBasis) -> ModuleElem:
    if e.module.rank != basis.ambient.rank or e.module.ring != basis.ambient.ring:
        raise RingMismatch("element and basis live in different modules")
    return ModuleElem(e.module, gb.reduce_against(e.module.ring, e.terms, basis.elements))


def contains(basis: GroebnerBasis, e: ModuleElem) -> bool:
    return normal_form(e, basis).is_zero()


def kernel(f: ModuleMap, cancel: CancelToken = None) -> List[ModuleElem]:
    """Generators (a Groebner basis) of ker f, by elimination in target (+) source."""
    ring = f.ring
    a, b = f.source.rank, f.target.rank
    if a == 0:
        return []
    one = ring.one
    gens = [frozenset(col | {gb.term(ring, b + j, one)}) for j, col in enumerate(f.columns)]
    shifts = f.target.shifts + f.source.shifts
    basis = gb.buchberger(ring, gens, shifts, cancel=cancel)
    out = []
    for e in basis:
        if gb.term_pos(ring, max(e)) >= b:
            out.append(ModuleElem(f.source, gb.shift_positions(ring, e, -b)))
    return out


def kernel_map(f: ModuleMap, cancel: CancelToken = None) -> ModuleMap:
    """Map from a free module onto ker f (columns = kernel generators)."""
    gens = kernel(f, cancel=cancel)
    src = FreeModule(f.ring, tuple(g.degree() for g in gens))
    return ModuleMap(src, f.source, tuple(g.terms for g in gens))


# -- presentations -------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """The module coker(rels: F1 -> gens)."""

    gens: FreeModule
    rels: ModuleMap

    def __post_init__(self):
        if self.rels.target != self.gens:
            raise ValueError("relation matrix must map into the generator module")

    @property
    def ring(self) -> RingCtx:
        return self.gens.ring

    @classmethod
    def free(cls, module: FreeModule) -> "Presentation":
        return cls(module, ModuleMap.zero(FreeModule(module.ring, ()), module))

    @classmethod
    def cokernel(cls, f: ModuleMap) -> "Presentation":
        return cls(f.target, f)

    def is_minimal(self) -> bool:
        one = self.ring.one
        return not any(gb.term_mono(self.ring, t) == one for c in self.rels.columns for t in c)

    def without_zero_relations(self) -> "Presentation":
        keep = [j for j, c in enumerate(self.rels.columns) if c]
        src = FreeModule(self.ring, tuple(self.rels.source.shifts[j] for j in keep))
        return Presentation(self.gens, ModuleMap(src, self.gens, tuple(self.rels.columns[j] for j in keep)))


def image_presentation(f: ModuleMap, cancel: CancelToken = None) -> Presentation:
    """Presentation of im f: generators are the columns, relations are ker f."""
    k = kernel_map(f, cancel=cancel)
    return Presentation(f.source, k)


def direct_sum(*parts: Presentation) -> Presentation:
    if not parts:
        raise ValueError("direct sum of nothing")
    ring = parts[0].ring
    gens = FreeModule(ring, ())
    src = FreeModule(ring, ())
    cols = []
    for p in parts:
        if p.ring != ring:
            raise RingMismatch("direct sum over different rings")
        off = gens.rank
        cols.extend(gb.shift_positions(ring, c, off) for c in p.rels.columns)
        gens = gens + p.gens
        src = src + p.rels.source
    return Presentation(gens, ModuleMap(src, gens, tuple(cols)))


# -- resolutions ---------------------------------------------------------------

@dataclass(frozen=True)
class FreeResolution:
    """F_0 <- F_1 <- ... ; differentials[k] maps modules[k+1] to modules[k]."""

    modules: tuple
    differentials: tuple

    @property
    def length(self) -> int:
        return len(self.differentials)

    def ranks(self) -> tuple:
        return tuple(m.rank for m in self.modules)

    def betti_table(self) -> dict:
        """{(homological index, internal degree): count}."""
        out = {}
        for i, m in enumerate(self.modules):
            for s in m.shifts:
                out[(i, s)] = out.get((i, s), 0) + 1
        return out

    def presentation(self) -> Presentation:
        if self.differentials:
            return Presentation(self.modules[0], self.differentials[0])
        return Presentation.free(self.modules[0])


class _Complex:
    """Mutable chain of raw differentials used while resolving/minimizing."""

    def __init__(self, ring: RingCtx, shifts: list, diffs: list):
        self.ring = ring
        self.shifts = shifts      # shifts[k] for F_k
        self.diffs = diffs        # diffs[k]: list of columns, F_{k+1} -> F_k

    def _delete_row(self, k: int, a: int):
        """Remove basis slot a of F_k from the columns of diffs[k]."""
        ring = self.ring
        ps = ring.pos_shift
        step = 1 << ps
        new = []
        for col in self.diffs[k]:
            out = []
            for t in col:
                p = gb.term_pos(ring, t)
                if p < a:
                    out.append(t)
                elif p > a:
                    out.append(t + step)
            new.append(frozenset(out))
        self.diffs[k] = new

    def find_unit(self, k: int):
        ring = self.ring
        one = ring.one
        for b, col in enumerate(self.diffs[k]):
            rows = sorted(gb.term_pos(ring, t) for t in col if gb.term_mono(ring, t) == one)
            for a in rows:
                entry = [t for t in col if gb.term_pos(ring, t) == a]
                if len(entry) == 1:
                    return a, b
        return None

    def cancel(self, k: int, a: int, b: int):
        """Split off R e_b -> R e_a where diffs[k][b] has unit entry in row a."""
        ring = self.ring
        cols = self.diffs[k]
        pivot = cols[b]
        new = []
        for c, col in enumerate(cols):
            if c == b:
                continue
            coef = [gb.term_mono(ring, t) for t in col if gb.term_pos(ring, t) == a]
            if coef:
                col = col ^ gb.mul_poly(ring, pivot, coef)
            new.append(col)
        self.diffs[k] = new
        self._delete_row(k, a)
        del self.shifts[k][a]
        del self.shifts[k + 1][b]
        if k >= 1:
            del self.diffs[k - 1][a]
        if k + 1 < len(self.diffs):
            self._delete_row(k + 1, b)

    def minimize_at(self, k: int):
        while True:
            hit = self.find_unit(k)
            if hit is None:
                return
            self.cancel(k, *hit)

    def minimize(self):
        changed = True
        while changed:
            changed = False
            for k in range(len(self.diffs)):
                hit = self.find_unit(k)
                if hit is not None:
                    self.cancel(k, *hit)
                    changed = True
                    break
        self.trim()

    def trim(self):
        while self.diffs and not self.shifts[-1]:
            self.diffs.pop()
            self.shifts.pop()

    def freeze(self) -> FreeResolution:
        mods = tuple(FreeModule(self.ring, tuple(s)) for s in self.shifts)
        diffs = tuple(ModuleMap(mods[k + 1], mods[k], tuple(self.diffs[k]))
                      for k in range(len(self.diffs)))
        return FreeResolution(mods, diffs)


class Resolver:
    """Incrementally extendable (optionally minimal) free resolution."""

    def __init__(self, p: Presentation, minimal: bool = True, cancel: CancelToken = None):
        p = p.without_zero_relations()
        ring = p.ring
        self.minimal = minimal
        self.cancel_token = cancel
        self.done = False
        self.cx = _Complex(ring, [list(p.gens.shifts)], [])
        if p.rels.source.rank:
            self.cx.shifts.append(list(p.rels.source.shifts))
            self.cx.diffs.append(list(p.rels.columns))
            if minimal:
                self.cx.minimize_at(0)
        if not self.cx.shifts[-1] or len(self.cx.shifts) == 1:
            self._finish()

    def _finish(self):
        self.done = True
        self.cx.trim()

    @property
    def length(self) -> int:
        return len(self.cx.diffs)

    def step(self) -> bool:
        """Append one more differential; False once the resolution has ended."""
        if self.done:
            return False
        cx, ring = self.cx, self.cx.ring
        k = len(cx.diffs)          # new map F_{k+1} -> F_k
        src = FreeModule(ring, tuple(cx.shifts[k]))
        tgt = FreeModule(ring, tuple(cx.shifts[k - 1]))
        f = ModuleMap(src, tgt, tuple(cx.diffs[k - 1]))
        ker = kernel(f, cancel=self.cancel_token)
        if not ker:
            self._finish()
            return False
        cx.shifts.append([g.degree() for g in ker])
        cx.diffs.append([g.terms for g in ker])
        if self.minimal:
            cx.minimize_at(k)
            cx.minimize_at(k - 1)
        if not cx.shifts[-1]:
            self._finish()
            return False
        return True

    def extend_to(self, length: int):
        while not self.done and self.length < length:
            self.step()

    def resolution(self) -> FreeResolution:
        return self.cx.freeze()


def free_resolution(p: Presentation, max_len: int = None, minimal: bool = True,
                    cancel: CancelToken = None) -> FreeResolution:
    """Free resolution of coker(p.rels), of length at most max_len.

    Stops early once a kernel vanishes.  The default cap is num_vars + 1.
    """
    if max_len is None:
        max_len = p.ring.num_vars + 1
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    res = Resolver(p, minimal=minimal, cancel=cancel)
    if max_len == 0:
        cx = res.cx
        return _Complex(cx.ring, [list(cx.shifts[0])], []).freeze()
    res.extend_to(max_len)
    return res.resolution()


def minimize(res: FreeResolution) -> FreeResolution:
    """Cancel every unit entry; ranks of the result are the Betti numbers."""
    if not res.modules:
        return res
    ring = res.modules[0].ring
    cx = _Complex(ring, [list(m.shifts) for m in res.modules], [list(d.columns) for d in res.differentials])
    cx.minimize()
    return cx.freeze()


def minimal_presentation(p: Presentation, cancel: CancelToken = None) -> Presentation:
    """Presentation with minimal generators and minimal relations."""
    res = free_resolution(p, max_len=2, minimal=True, cancel=cancel)
    return res.presentation()


def is_exact_at(res: FreeResolution, k: int, cancel: CancelToken = None) -> bool:
    """Kernel of differentials[k-1] equals the image of differentials[k] (k >= 1)."""
    ker = kernel(res.differentials[k - 1], cancel=cancel)
    if k < len(res.differentials):
        img = groebner(res.differentials[k].columns, res.modules[k], cancel=cancel)
    else:
        img = GroebnerBasis(res.modules[k], ())
    return all(contains(img, g) for g in ker)


# -- ranks and dimensions ------------------------------------------------------

def generic_rank(f: ModuleMap) -> int:
    """Rank over the fraction field, by fraction-free (Bareiss) elimination."""
    ring = f.ring
    one = ring.one
    nrows, ncols = f.target.rank, f.source.rank
    M = [[set() for _ in range(ncols)] for _ in range(nrows)]
    for j, col in enumerate(f.columns):
        for t in col:
            M[gb.term_pos(ring, t)][j].add(gb.term_mono(ring, t))
    M = [[frozenset(x) for x in row] for row in M]
    prev = frozenset((one,))
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if M[r][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for i in range(rank + 1, nrows):
            a_ic = M[i][col]
            for j in range(col + 1, ncols):
                num = poly_mul_terms(p, M[i][j], one) ^ poly_mul_terms(a_ic, M[rank][j], one)
                M[i][j] = poly_exact_div(ring, num, prev) if num else frozenset()
            M[i][col] = frozenset()
        prev = p
        rank += 1
    return rank


def graded_dim(p: Presentation, cancel: CancelToken = None) -> HilbertData:
    """Hilbert series of coker(p.rels) from the initial module of its relations."""
    ring = p.ring
    basis = gb.buchberger(ring, [c for c in p.rels.columns if c], p.gens.shifts, cancel=cancel)
    by_pos = {}
    for e in basis:
        lt = max(e)
        by_pos.setdefault(gb.term_pos(ring, lt), []).append(ring.exponents(gb.term_mono(ring, lt)))
    numerator = {}
    for i, s in enumerate(p.gens.shifts):
        part = monomial_ideal_numerator(by_pos.get(i, []))
        for e, c in part.items():
            numerator[e + s] = numerator.get(e + s, 0) + c
    return hilbert_data(numerator, ring.num_vars)
