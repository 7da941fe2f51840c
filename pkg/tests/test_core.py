"""Core types: validation, element codecs, exact arithmetic."""

import random
from fractions import Fraction

import numpy as np
import pytest

from oracles import NaiveRing, perm_compose
from spectra.core import (
    COMMUTE,
    PolySpec,
    format_rational,
    group_inv,
    group_op,
    parse_rational,
    ring_add,
    ring_mul,
    trivial_ring,
    validate_group,
    validate_ring,
)
from spectra.errors import (
    IncompatibleOrderError,
    InvalidInvariantsError,
    MalformedVectorError,
    NoIdentityError,
    NotAssociativeError,
    NotClosedError,
    NotLatinError,
)


# -- groups --------------------------------------------------------------------

def test_validate_group_z2():
    group = validate_group([[0, 1], [1, 0]], 0)
    assert group.n == 2 and group.identity == 0


def test_validate_group_rejects_repeated_entry():
    with pytest.raises(NotLatinError):
        validate_group([[0, 1], [1, 1]], 0)


def test_validate_group_s3_from_permutations(s3_table):
    table, identity, _ = s3_table
    group = validate_group(table, identity, name="s3")
    assert group.n == 6


def test_validate_group_out_of_range_entry():
    with pytest.raises(NotClosedError):
        validate_group([[0, 1], [1, 7]], 0)


def test_validate_group_bad_identity():
    with pytest.raises(NoIdentityError):
        validate_group([[0, 1], [1, 0]], 1)
    with pytest.raises(NoIdentityError):
        validate_group([[0, 1], [1, 0]], 5)


def test_validate_group_nonassociative_loop(nonassociative_loop):
    with pytest.raises(NotAssociativeError) as err:
        validate_group(nonassociative_loop, 0)
    i, j, k = err.value.witness
    t = nonassociative_loop
    assert t[t[i, j], k] != t[i, t[j, k]]


def test_trivial_group_is_valid():
    assert validate_group([[0]], 0).n == 1


def test_group_helpers(s3_table):
    z3 = validate_group([[(a + b) % 3 for b in range(3)] for a in range(3)], 0)
    assert group_inv(z3, 1) == 2

    table, identity, perms = s3_table
    s3 = validate_group(table, identity)
    transposition = perms.index((1, 0, 2))
    assert group_op(s3, transposition, transposition) == identity
    assert perm_compose(perms[transposition], perms[transposition]) == (0, 1, 2)


# -- rings ---------------------------------------------------------------------

def test_validate_ring_z2():
    ring = validate_ring((2,), [[[1]]])
    assert ring.order == 2 and ring.mul(1, 1) == 1


def test_validate_ring_incompatible_order():
    sc = np.zeros((2, 2, 2), dtype=int)
    sc[0, 1] = (0, 1)  # additive order 4 in Z2 x Z4, gcd(2, 4) = 2
    with pytest.raises(IncompatibleOrderError) as err:
        validate_ring((2, 4), sc)
    assert err.value.position == (0, 1)
    assert err.value.order == 4 and err.value.divisor == 2


def test_validate_ring_null_of_order_8():
    ring = validate_ring((2, 2, 2), np.zeros((3, 3, 3)))
    assert ring.order == 8
    assert all(ring.mul(x, y) == 0 for x in range(8) for y in range(8))


def test_validate_ring_rejects_small_invariants():
    with pytest.raises(InvalidInvariantsError):
        validate_ring((1,), [[[0]]])
    with pytest.raises(InvalidInvariantsError):
        validate_ring((), np.zeros((0, 0, 0)))


def test_validate_ring_malformed_sc():
    with pytest.raises(MalformedVectorError):
        validate_ring((2, 2), np.zeros((2, 2)))
    bad = np.zeros((1, 1, 1), dtype=int)
    bad[0, 0, 0] = 5
    with pytest.raises(MalformedVectorError):
        validate_ring((4,), bad)


def test_ring_mul_examples():
    null = validate_ring((2, 2), np.zeros((2, 2, 2)))
    assert all(ring_mul(null, x, y) == 0 for x in range(4) for y in range(4))

    z4 = validate_ring((4,), [[[1]]])
    assert ring_mul(z4, 2, 3) == 2  # 2*3 = 6 = 2 mod 4

    # strict upper-triangular 3x3 over F2, basis order (e12, e13, e23)
    sc = np.zeros((3, 3, 3), dtype=int)
    sc[0, 2, 1] = 1
    ut = validate_ring((2, 2, 2), sc)
    e12 = ut.encode([1, 0, 0])
    e13 = ut.encode([0, 1, 0])
    e23 = ut.encode([0, 0, 1])
    assert ring_mul(ut, e12, e23) == e13
    assert ring_mul(ut, e23, e12) == 0


def test_ring_add_example():
    ring = validate_ring((2, 2), np.zeros((2, 2, 2)))
    x = ring.encode([1, 0])
    y = ring.encode([1, 1])
    assert list(ring.decode(ring_add(ring, x, y))) == [0, 1]


def test_encode_decode_round_trip():
    for invariants in ((2,), (2, 3), (4, 2, 3), (5, 5)):
        k = len(invariants)
        ring = validate_ring(invariants, np.zeros((k, k, k)))
        for x in range(ring.order):
            assert ring.encode(ring.decode(x)) == x


def test_trivial_ring_constant():
    one = trivial_ring()
    assert one.order == 1 and one.mul(0, 0) == 0 and one.add(0, 0) == 0


def _random_valid_ring(rng: random.Random, invariants):
    """Random compatible sc tensor (each entry from the right torsion subgroup)."""
    import math

    k = len(invariants)
    sc = np.zeros((k, k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            g = math.gcd(invariants[i], invariants[j])
            for m, d in enumerate(invariants):
                step = d // math.gcd(d, g)
                sc[i, j, m] = step * rng.randrange(d // step)
    return validate_ring(invariants, sc)


@pytest.mark.parametrize("invariants", [(2, 2), (3, 3), (2, 4), (6,), (2, 2, 2)])
def test_distributivity_and_oracle_parity(invariants):
    rng = random.Random(hash(invariants) & 0xFFFF)
    ring = _random_valid_ring(rng, invariants)
    naive = NaiveRing(invariants, [[tuple(ring.sc[i, j]) for j in range(ring.k)]
                                   for i in range(ring.k)])
    n = ring.order
    for x in range(n):
        for y in range(n):
            cx, cy = tuple(ring.decode(x)), tuple(ring.decode(y))
            assert tuple(ring.decode(ring.mul(x, y))) == naive.mul(cx, cy)
    for _ in range(200):
        x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        left = ring.mul(ring.add(x, y), z)
        assert left == ring.add(ring.mul(x, z), ring.mul(y, z))
        right = ring.mul(z, ring.add(x, y))
        assert right == ring.add(ring.mul(z, x), ring.mul(z, y))


def test_product_table_matches_on_demand():
    rng = random.Random(7)
    ring = _random_valid_ring(rng, (2, 4))
    table = ring.product_table(4096)
    fresh = validate_ring(ring.invariants, ring.sc)  # no cached table
    for x in range(ring.order):
        for y in range(ring.order):
            assert int(table[x, y]) == fresh.encode(
                fresh.mul_vec(fresh.coords[x], fresh.coords[y]))
    assert fresh.product_table(3) is None  # above threshold


# -- rationals -----------------------------------------------------------------

def test_rational_exactness():
    assert Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2)
    value = Fraction(40, 64)
    assert (value.numerator, value.denominator) == (5, 8)
    assert Fraction(value.numerator, value.denominator) == value  # normalization idempotent
    assert Fraction(2, -4) == Fraction(-1, 2)
    assert Fraction(2, 4).denominator > 0


def test_rational_formatting():
    assert format_rational(Fraction(5, 8)) == "5/8"
    assert format_rational(Fraction(1)) == "1"
    assert format_rational(Fraction(11, 27)) == "11/27"
    assert parse_rational("11/27") == Fraction(11, 27)
    assert parse_rational("1") == Fraction(1)


def test_polyspec_parse():
    assert PolySpec.parse("1,-1") == COMMUTE
    assert str(PolySpec(1, 0)) == "1,0"
    with pytest.raises(ValueError):
        PolySpec.parse("1")
