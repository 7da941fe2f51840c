"""The four structure transports and the catalog."""

import random
from fractions import Fraction

import numpy as np
import pytest

from spectra.constructions import (
    catalog,
    catalog_names,
    circle_group,
    commutator_ring,
    cyclic_group,
    dihedral_group,
    direct_product_group,
    direct_product_ring,
    heisenberg_group,
    klein_four_group,
    malcev_group,
    matrix_ring,
    nring,
    null_ring,
    quaternion_group,
    symmetric_group,
    ut3_ring,
    zn_ring,
)
from spectra.core import ANNIHILATE, COMMUTE, FiniteGroup, FiniteRing, validate_group
from spectra.errors import (
    NotAssociativeError,
    NotClass2Error,
    NotNilpotentError,
    OrderOverflowError,
    ParamOutOfRangeError,
    UnknownNameError,
)
from spectra.probability import pr_ann_ring, pr_c_group, pr_c_ring, pr_f_ring
from spectra.structure import (
    is_strongly_antisymmetric,
    lower_central_series,
    ring_powers,
)


# -- nring -----------------------------------------------------------------------

def test_nring_of_z2_has_class_3():
    doubled = nring(zn_ring(2))
    assert doubled.order == 4
    assert ring_powers(doubled).class_value == 3


def test_nring_of_null_ring_is_null():
    doubled = nring(null_ring((2, 2)))
    assert doubled.order == 16
    assert all(doubled.mul(x, y) == 0 for x in range(16) for y in range(16))


def test_nring_multiplication_rule():
    base = zn_ring(3)
    doubled = nring(base)
    for a in range(3):
        for x in range(3):
            for b in range(3):
                for y in range(3):
                    left = doubled.encode([a, x])
                    right = doubled.encode([b, y])
                    product = doubled.decode(doubled.mul(left, right))
                    assert product[0] == 0
                    assert product[1] == (a * b) % 3


@pytest.mark.parametrize("poly", [COMMUTE, ANNIHILATE])
def test_nring_preserves_pr_f_on_z4(poly):
    base = zn_ring(4)
    assert pr_f_ring(base, poly).value == pr_f_ring(nring(base), poly).value


def test_nring_respects_order_cap():
    with pytest.raises(OrderOverflowError):
        nring(zn_ring(70))  # 4900 > 4096


# -- circle group -------------------------------------------------------------------

def test_circle_of_null_ring_is_addition():
    ring = null_ring((2, 2, 2))
    group = circle_group(ring)
    assert validate_group(group.table, group.identity).n == 8
    assert np.array_equal(group.table, ring.addition_table())
    assert pr_c_group(group).value == 1


def test_circle_of_ut3_2():
    ring = ut3_ring(2)
    group = circle_group(ring)
    validate_group(group.table, group.identity)
    assert group.n == 8
    assert pr_c_group(group).value == pr_c_ring(ring).value == Fraction(5, 8)


def test_circle_inverse_formula_class_3():
    for ring in (ut3_ring(2), ut3_ring(3), nring(zn_ring(3))):
        assert ring_powers(ring).class_value <= 3
        group = circle_group(ring)
        for a in range(ring.order):
            # a^-1 = -a + a^2 when all 3-fold products vanish
            expected = ring.add(ring.neg(a), ring.mul(a, a))
            assert group.op(a, expected) == 0
            assert group.inverse(a) == expected


def test_circle_rejects_nonassociative():
    sc = np.zeros((2, 2, 2), dtype=int)
    sc[0, 0] = (0, 1)
    sc[1, 0] = (1, 0)
    from spectra.core import validate_ring

    ring = validate_ring((2, 2), sc)
    with pytest.raises(NotAssociativeError):
        circle_group(ring)


def test_circle_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        circle_group(zn_ring(4))
    with pytest.raises(NotNilpotentError):
        circle_group(zn_ring(2))


def test_circle_commutators_match_ring_commutators():
    # group commutator equals xy - yx elementwise for class <= 3 rings
    ring = ut3_ring(3)
    group = circle_group(ring)
    inv = group.inverses
    for a in range(ring.order):
        for b in range(ring.order):
            g_comm = group.table[group.table[inv[a], inv[b]], group.table[a, b]]
            r_comm = ring.add(ring.mul(a, b), ring.neg(ring.mul(b, a)))
            assert int(g_comm) == r_comm


def test_circle_group_class_le_2():
    for ring in (ut3_ring(2), ut3_ring(3), nring(null_ring((3,)))):
        report = lower_central_series(circle_group(ring))
        assert report.nilpotent and report.class_value <= 2


# -- commutator ring -----------------------------------------------------------------

def test_commring_of_abelian_group_is_null_with_pr_ann_1():
    ring = commutator_ring(cyclic_group(6))
    assert ring.order == 6
    assert all(ring.mul(x, y) == 0 for x in range(6) for y in range(6))
    assert pr_ann_ring(ring).value == 1


def test_commring_d4():
    d4 = dihedral_group(4)
    ring = commutator_ring(d4)
    assert ring.order == 8
    assert pr_ann_ring(ring).value == pr_c_group(d4).value == Fraction(5, 8)


def test_commring_heisenberg3():
    ring = commutator_ring(heisenberg_group(3))
    assert ring.order == 27
    assert pr_ann_ring(ring).value == Fraction(11, 27)
    assert is_strongly_antisymmetric(ring)
    assert ring_powers(ring).class_value <= 3


def test_commring_q8_properties():
    ring = commutator_ring(quaternion_group())
    assert ring.order == 8
    assert is_strongly_antisymmetric(ring)
    assert pr_ann_ring(ring).value == pr_c_group(quaternion_group()).value


def test_commring_rejects_higher_class(s3_table):
    with pytest.raises(NotClass2Error):
        commutator_ring(symmetric_group(3))
    # Heisenberg over Z4 via circle of a class-4 ring is not class 2; use S4 instead
    with pytest.raises(NotClass2Error):
        commutator_ring(symmetric_group(4))


def test_commring_representative_independence():
    for group in (dihedral_group(4), quaternion_group(), heisenberg_group(3)):
        base = commutator_ring(group)
        for seed in (0, 1, 2):
            other = commutator_ring(group, rep_rng=random.Random(seed))
            assert other.invariants == base.invariants
            assert np.array_equal(other.sc, base.sc)


def test_commring_trivial_group():
    ring = commutator_ring(cyclic_group(1))
    assert ring.order == 1


# -- malcev group ---------------------------------------------------------------------

def test_malcev_of_z2():
    group = malcev_group(zn_ring(2))
    validate_group(group.table, group.identity)
    assert group.n == 4 and group.is_abelian
    assert pr_c_group(group).value == 1


def test_malcev_m2_f2():
    ring = matrix_ring(2, 2)
    group = malcev_group(ring)
    assert group.n == 256
    assert pr_c_group(group).value == pr_c_ring(ring).value == Fraction(11, 32)
    report = lower_central_series(group)
    assert report.nilpotent and report.class_value <= 2


def test_malcev_identity_and_inverse_law():
    for ring in (zn_ring(4), ut3_ring(2), null_ring((3,))):
        group = malcev_group(ring)
        n = ring.order
        assert group.identity == 0
        for a in range(n):
            for b in range(n):
                g = a * n + b
                a_sq = ring.mul(a, a)
                inverse = ring.neg(a) * n + ring.add(a_sq, ring.neg(b))
                assert group.op(g, inverse) == 0
                assert group.op(inverse, g) == 0
                assert group.inverse(g) == inverse


def test_malcev_works_on_nonassociative_ring():
    sc = np.zeros((2, 2, 2), dtype=int)
    sc[0, 0] = (0, 1)
    sc[1, 0] = (1, 0)
    from spectra.core import validate_ring
    from spectra.structure import is_associative

    ring = validate_ring((2, 2), sc)
    assert not is_associative(ring)
    group = malcev_group(ring)
    validate_group(group.table, group.identity)
    assert pr_c_group(group).value == pr_c_ring(ring).value
    assert lower_central_series(group).class_value <= 2


def test_malcev_respects_order_cap():
    with pytest.raises(OrderOverflowError):
        malcev_group(zn_ring(65))


# -- direct products --------------------------------------------------------------------

def test_product_group_z2_z3_is_cyclic6():
    product = direct_product_group(cyclic_group(2), cyclic_group(3))
    z6 = cyclic_group(6)
    assert product.n == 6
    assert pr_c_group(product).value == pr_c_group(z6).value == 1
    from spectra.structure import abelian_decomposition

    assert abelian_decomposition(product)[0] == (6,)


def test_product_ring_null_times_null_is_null():
    product = direct_product_ring(null_ring((2,)), null_ring((3,)))
    assert product.order == 6
    assert all(product.mul(x, y) == 0 for x in range(6) for y in range(6))


def test_product_ring_pr_ann_multiplies():
    pairs = [(zn_ring(4), zn_ring(9)), (ut3_ring(2), zn_ring(3))]
    for r1, r2 in pairs:
        product = direct_product_ring(r1, r2)
        assert pr_ann_ring(product).value == \
            pr_ann_ring(r1).value * pr_ann_ring(r2).value


def test_product_order_cap():
    with pytest.raises(OrderOverflowError):
        direct_product_group(cyclic_group(100), cyclic_group(100))


# -- catalog -------------------------------------------------------------------------------

def test_catalog_builds_every_name():
    cases = {
        "cyclic:5": (FiniteGroup, 5),
        "dihedral:6": (FiniteGroup, 12),
        "quaternion8": (FiniteGroup, 8),
        "symmetric:4": (FiniteGroup, 24),
        "heisenberg:3": (FiniteGroup, 27),
        "klein4": (FiniteGroup, 4),
        "null:2,2,2": (FiniteRing, 8),
        "zn:9": (FiniteRing, 9),
        "ut3:2": (FiniteRing, 8),
        "matrix:2,3": (FiniteRing, 81),
    }
    for name, (kind, order) in cases.items():
        obj = catalog(name)
        assert isinstance(obj, kind)
        assert (obj.n if kind is FiniteGroup else obj.order) == order


def test_catalog_aliases():
    assert catalog("zn_ring:6").order == 6
    assert catalog("null_ring:2,2").order == 4
    assert catalog("ut3_ring:3").order == 27


def test_catalog_cyclic_abelian():
    group = catalog("cyclic:5")
    assert pr_c_group(group).value == 1


def test_catalog_errors():
    with pytest.raises(UnknownNameError):
        catalog("frobnicate:3")
    with pytest.raises(ParamOutOfRangeError):
        catalog("symmetric:6")
    with pytest.raises(ParamOutOfRangeError):
        catalog("heisenberg:4")  # not prime
    with pytest.raises(ParamOutOfRangeError):
        catalog("zn:1")
    with pytest.raises(ParamOutOfRangeError):
        catalog("matrix:3,2")
    with pytest.raises(ParamOutOfRangeError):
        catalog("null:1,2")


def test_catalog_names_listing():
    names = catalog_names()
    assert "cyclic" in names and "ut3" in names and len(names) == 10


def test_heisenberg_paths_agree():
    for p in (2, 3, 5):
        direct = heisenberg_group(p)
        circled = circle_group(ut3_ring(p))
        assert direct.n == circled.n == p ** 3
        assert pr_c_group(direct).value == pr_c_group(circled).value
        assert lower_central_series(direct).class_value == \
            lower_central_series(circled).class_value


def test_klein4_is_elementary_abelian():
    group = klein_four_group()
    assert group.is_abelian
    assert all(group.op(x, x) == 0 for x in range(4))
