import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainsyz import buchberger as gb
from chainsyz.chainspace import (ChainSpaceParams, NonGenericError, build_iota,
                                 chain_space_presentation, classify_maximal, cohomology,
                                 critical_values, dims, extend_by_zero, free_basis, full_report,
                                 is_generic, iota_via_expansion, level_presentation,
                                 long_short_sets, mu, presentation_ambient,
                                 restrict_to_fixed_point, subset_weight, to_rational)
from chainsyz.homological import syzygy_order
from chainsyz.koszul import koszul_differential
from chainsyz.modules import free_resolution, graded_dim, matrix_from_text, minimal_presentation

from _gen import params, random_generic_ell

J12, J14, FULL3 = 0b011, 0b1001, 0b111


def test_subset_weight():
    assert subset_weight((1, 1, 1), J12) == 1
    assert subset_weight((2, 2, 2, 3), J14) == 1
    assert subset_weight((2, 2, 2, 3), 0b1111) == 9


def test_genericity():
    assert not is_generic((1, 1), 0)
    assert is_generic((1, 2), 0)
    assert not is_generic((1, 1, 1), 1)


def test_params_reject_bad_input():
    with pytest.raises(NonGenericError) as exc:
        params((1, 1), 0)
    assert str(exc.value) == "l({1}) = 0" and exc.value.subset == 0b1
    with pytest.raises(NonGenericError, match=r"l\(\{1,2\}\) = 1 = c"):
        params((1, 1, 1), 1)
    with pytest.raises(ValueError):
        params((1, -2, 4))
    with pytest.raises(ValueError):
        ChainSpaceParams(1, 1, (1, 2, 4), 0)
    with pytest.raises(ValueError):
        params((1, 2, 4), -1)
    with pytest.raises(ValueError):
        to_rational("0.5")
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_long_short_sets():
    longs, _ = long_short_sets((1,) * 5, 0)
    assert set(longs) == {J for J in range(32) if bin(J).count("1") > 2}
    assert long_short_sets((1, 1, 1), Fraction(3, 2)) == ([FULL3], [0])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_complement_bijection(seed):
    rng = random.Random(seed)
    ell = random_generic_ell(rng, rng.randint(1, 6))
    r = len(ell)
    longs, shorts = long_short_sets(ell, 0)
    assert len(longs) == 2 ** (r - 1)
    full = (1 << r) - 1
    assert sorted(full ^ J for J in longs) == sorted(shorts)


def test_critical_values():
    assert critical_values((1, 1, 1)) == ([-3, -1, 1, 3], 1)
    assert critical_values((2, 2, 2, 3))[1] == 1
    assert critical_values((1, 2))[0] == [-3, -1, 1, 3]


def test_mu():
    assert mu(1, FULL3, (1, 1, 1)) == 1
    assert mu(1, 0b001, (1, 1, 1)) == 0
    assert all(mu(0, J, (1, 1, 1)) == 0 for J in range(8))


def test_ambient_presentation():
    amb = presentation_ambient(params((1, 2, 4)))
    ring = amb.ring
    s1, t, tt1 = ring.gen(0), ring.gen(3), ring.gen(4)
    assert amb.relations[0] == s1 ** 2 + t * tt1 * s1
    assert set(v for k, v in amb.degrees.items() if k.startswith("s")) == {2}
    assert len(presentation_ambient(params((1,))).relations) == 1


def test_expansion_agrees_with_ambient_product():
    p = ChainSpaceParams(3, 2, (1, 2, 4), 0)
    amb = presentation_ambient(p)
    ring = amb.ring
    r = p.r
    for J in range(1 << r):
        prod = ring.unit()
        for j in range(r):
            if J >> j & 1:
                prod = prod * amb.sbar[j]
        expect = ring.zero()
        I = J
        while True:
            term = ring.unit()
            for j in range(r):
                if I >> j & 1:
                    term = term * ring.gen(j)
                elif J >> j & 1:
                    term = term * ring.gen(r) ** (p.m - 1) * ring.gen(r + 1 + j) ** p.n
            expect = expect + term
            if I == 0:
                break
            I = (I - 1) & J
        assert prod == expect


def test_restriction_to_fixed_points():
    p = ChainSpaceParams(3, 2, (1, 2, 4), 0)
    assert str(restrict_to_fixed_point(p, 0b011, 1)) == "t^2*t2^2"
    assert restrict_to_fixed_point(p, 0b011, 2).is_zero()
    # restriction of the ambient relation s_j * sbar_j vanishes at every fixed point
    for J in range(8):
        for j in range(3):
            s = restrict_to_fixed_point(p, J, j)
            sbar = s + p_t_tj(p, j)
            assert (s * sbar).is_zero()


def p_t_tj(p, j):
    ring = restrict_to_fixed_point(p, 0, 0).ring
    return ring.gen(0) ** (p.m - 1) * ring.gen(j + 1) ** p.n


def test_free_basis():
    p = params((1, 1, 1))
    basis = free_basis(p, 0)
    assert len(basis) == 8
    assert all(d == 2 * bin(J).count("1") for J, d in basis)
    assert dict(free_basis(p, 1))[J12] == 3
    with pytest.raises(ValueError):
        free_basis(p, 2)


def _relations_graded(pres):
    return pres.rels.is_graded()


def test_level_presentation_rank_one():
    p = ChainSpaceParams(3, 2, (1,), 0)
    pres = level_presentation(p, 1)
    assert pres.rels.source.rank == 2
    hd = graded_dim(pres)
    assert hd.numerator_dict() == {0: 1, p.m + p.n - 1: -1}
    for i in range(1, p.m + 1):
        assert _relations_graded(level_presentation(p, i))


def test_chain_space_presentation():
    p = ChainSpaceParams(3, 1, (1,), 0)
    pres = chain_space_presentation(p)
    assert _relations_graded(pres)
    cols = [str(pres.rels.column(j)) for j in range(pres.rels.source.rank)]
    assert "(t1, 1)" in cols
    big = ChainSpaceParams(2, 1, (1, 2, 4), 8)
    hd = graded_dim(chain_space_presentation(big))
    assert hd.finite and hd.total_dim == 0
    assert _relations_graded(chain_space_presentation(params((2, 2, 3, 3, 3), Fraction(1, 2))))


def test_iota_examples(golden_dir):
    iota = build_iota(params((1, 1, 1)))
    golden = (golden_dir / "iota_l1-1-1_c0.txt").read_text()
    assert iota.matrix == matrix_from_text(iota.matrix.ring, golden)
    small = build_iota(params((1, 1, 1), Fraction(3, 2)))
    assert small.rows == (0,) and small.cols == (FULL3,) and small.matrix.is_zero()
    z = build_iota(params((2, 2, 2, 3)))
    assert not z.matrix.columns[z.cols.index(0b1111)]


def test_iota_golden_rank_four(golden_dir):
    iota = build_iota(params((2, 2, 2, 3), Fraction(1, 2)))
    golden = (golden_dir / "iota_l2-2-2-3_c1-2.txt").read_text()
    assert iota.matrix.to_text() == golden.strip()


def test_iota_rejects_n_zero():
    with pytest.raises(ValueError):
        build_iota(ChainSpaceParams(2, 0, (1, 1, 1), 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_iota_agrees_with_expansion(seed):
    rng = random.Random(seed)
    ell = random_generic_ell(rng, rng.randint(1, 5))
    c = Fraction(rng.randint(0, 40), 4)
    if not is_generic(ell, c):
        return
    p = ChainSpaceParams(rng.randint(2, 4), rng.randint(1, 3), ell, c)
    iota = build_iota(p)
    assert len(iota.rows) == len(iota.cols)
    assert iota.matrix == iota_via_expansion(p)
    assert iota.matrix.is_graded()


def test_cohomology_examples():
    ker, coker, combined = cohomology(params((1, 1, 1), Fraction(3, 2)))
    assert ker.gens.rank == 1 and coker.gens.rank == 1
    assert free_resolution(combined).ranks() == (2,)
    _, _, zero = cohomology(params((1, 1, 1), 4))
    assert zero.gens.rank == 0


def test_polygon_case_splits_as_koszul_pieces():
    _, _, combined = cohomology(params((1, 1, 1)))
    d2 = koszul_differential(3, 2)
    from chainsyz.modules import Presentation, image_presentation, kernel_map
    from chainsyz.modules import FreeModule, direct_sum
    R = d2.ring
    free1 = Presentation.free(FreeModule.of_rank(R, 1))
    expect = direct_sum(free1, Presentation.cokernel(d2), free1,
                        image_presentation(kernel_map(d2)))
    got = free_resolution(minimal_presentation(combined)).ranks()
    assert got == free_resolution(minimal_presentation(expect)).ranks()
    assert syzygy_order(combined) == syzygy_order(expect)


def test_dims():
    assert dims(params((1, 1, 1))) == (8, 4)
    assert dims(params((1, 2, 4), Fraction(1, 2)))[0] == 2 ** 3
    assert dims(params((1, 1, 1), 4)) == (0, 0)


def test_classify_maximal():
    assert classify_maximal(params((1, 1, 1), Fraction(1, 2))) == 1
    assert classify_maximal(params((2, 2, 3), Fraction(1, 2))) == 1
    assert classify_maximal(params((2, 2, 2, 3), Fraction(1, 2))) is None
    # even rank: a near-zero coordinate anywhere
    assert classify_maximal(params((1, Fraction(1, 10), 1, 1), Fraction(1, 20))) == 1


def test_extend_by_zero():
    p = params((1, 1, 1), Fraction(1, 2))
    q = extend_by_zero(p)
    assert q.ell == (1, 1, 1, Fraction(1, 4)) and q.r == 4
    assert syzygy_order(cohomology(q)[2]).value == 1
    qq = extend_by_zero(q)
    assert qq.r == 5 and qq.ell[:4] == q.ell


def test_full_report_examples():
    rep = full_report(params((1, 1, 1)))
    assert rep.order.value == 1 and not rep.free and rep.consistent
    assert full_report(params((2, 2, 3, 3, 3), 2)).order.value == 1
    assert full_report(params((2, 2, 2, 3))).order.value == 0


def test_relations_are_homogeneous_over_extended_ring():
    p = ChainSpaceParams(3, 2, (2, 2, 3, 3, 3), Fraction(1, 2))
    for pres in [level_presentation(p, i) for i in (1, 2, 3)] + [chain_space_presentation(p)]:
        ring = pres.ring
        for j, col in enumerate(pres.rels.columns):
            degs = {ring.degree(gb.term_mono(ring, t)) + pres.gens.shifts[gb.term_pos(ring, t)]
                    for t in col}
            assert degs == {pres.rels.source.shifts[j]}
