"""Structure-transport constructions between groups and rings, plus a catalog
of named test structures.

The four transports:
  nring(R)            ring on R x R with (a,x)(b,y) = (0, ab); same f-probabilities
  circle_group(N)     group on an associative nilpotent ring via a o b = a+b+ab
  commutator_ring(G)  ring on G/Z + Z with (aZ,x)(bZ,y) = (Z,[a,b]) for class-2 G
  malcev_group(R)     group on R x R with (a,b)(c,d) = (a+c, ac+b+d), any ring R
"""

from __future__ import annotations

import math
from itertools import permutations

import numpy as np

from . import kernels
from .config import DEFAULT_CAPS, Caps
from .core import FiniteGroup, FiniteRing, trivial_ring, validate_group, validate_ring
from .errors import (
    NotAssociativeError,
    NotClass2Error,
    NotNilpotentError,
    OrderOverflowError,
    ParamOutOfRangeError,
    UnknownNameError,
)
from .structure import (
    abelian_decomposition,
    associativity_witness,
    center_group,
    commutator,
    lower_central_series,
    quotient_group,
    ring_powers,
    subgroup_as_group,
)

_FULL_VALIDATE_MAX = 1000  # catalog groups above this get identity+Latin only


def _check_order(order: int, caps: Caps, what: str) -> None:
    if order > caps.order_cap:
        raise OrderOverflowError(
            f"{what} would have order {order} > cap {caps.order_cap}")


# ---------------------------------------------------------------------------
# ring -> ring
# ---------------------------------------------------------------------------

def nring(ring: FiniteRing, caps: Caps = DEFAULT_CAPS) -> FiniteRing:
    """Pair ring on R x R with (a,x)(b,y) = (0, ab).

    Nilpotent of class <= 3 and preserves every Pr_f of R.
    """
    _check_order(ring.order ** 2, caps, "nring")
    k = ring.k
    invariants = ring.invariants + ring.invariants
    sc = np.zeros((2 * k, 2 * k, 2 * k), dtype=np.int64)
    sc[:k, :k, k:] = ring.sc
    return FiniteRing(invariants, sc, name=f"nring({ring.name or 'R'})")


def direct_product_ring(r1: FiniteRing, r2: FiniteRing,
                        caps: Caps = DEFAULT_CAPS) -> FiniteRing:
    _check_order(r1.order * r2.order, caps, "product ring")
    k1, k2 = r1.k, r2.k
    invariants = r1.invariants + r2.invariants
    sc = np.zeros((k1 + k2, k1 + k2, k1 + k2), dtype=np.int64)
    sc[:k1, :k1, :k1] = r1.sc
    sc[k1:, k1:, k1:] = r2.sc
    return FiniteRing(invariants, sc,
                      name=f"{r1.name or 'R1'}x{r2.name or 'R2'}")


# ---------------------------------------------------------------------------
# ring -> group
# ---------------------------------------------------------------------------

def circle_group(ring: FiniteRing, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Group on the ring's elements under a o b = a + b + ab.

    Requires an associative nilpotent ring (checked); identity is 0.
    """
    witness = associativity_witness(ring)
    if witness is not None:
        i, j, m = witness
        raise NotAssociativeError(
            f"(e{i} e{j}) e{m} != e{i} (e{j} e{m}); circle operation needs an "
            "associative ring", witness=witness)
    report = ring_powers(ring)
    if not report.nilpotent:
        raise NotNilpotentError(
            "circle operation needs a nilpotent ring; the power chain "
            f"stabilizes at size {report.series_sizes[-1]}")
    n = ring.order
    out = np.empty((n, n), dtype=np.int32)
    nzi, nzj, nzv = ring.nonzero_sc()
    kernels.fill_rows(
        kernels.circle_table_block, out,
        (ring.coords, ring.dmods, ring.strides, ring.sc, nzi, nzj, nzv), n)
    return FiniteGroup(out, 0, name=f"circle({ring.name or 'N'})")


def malcev_group(ring: FiniteRing, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Group on R x R with (a,b)(c,d) = (a+c, ac+b+d); R may be any ring,
    associative or not.  Identity is (0,0); (a,b)^-1 = (-a, a^2 - b).
    """
    n = ring.order
    _check_order(n * n, caps, "malcev group")
    add_t = ring.addition_table()
    mul_t = ring.product_table(max(caps.table_threshold, n))
    out = np.empty((n * n, n * n), dtype=np.int32)
    kernels.fill_rows(kernels.malcev_table_block, out, (add_t, mul_t), n * n)
    return FiniteGroup(out, 0, name=f"malcev({ring.name or 'R'})")


# ---------------------------------------------------------------------------
# group -> ring / group -> group
# ---------------------------------------------------------------------------

def commutator_ring(group: FiniteGroup, caps: Caps = DEFAULT_CAPS,
                    rep_rng=None) -> FiniteRing:
    """Ring on G/Z + Z with (aZ,x)(bZ,y) = (Z,[a,b]) for a class-<=2 group.

    Strongly antisymmetric, nilpotent of class <= 3, |result| = |G| and
    Pr_ann(result) = Pr_c(G).  Coset representatives default to the lowest
    element index; rep_rng (a random.Random) picks random representatives
    instead, which must not change the result.
    """
    report = lower_central_series(group)
    if not (report.nilpotent and report.class_value <= 2):
        raise NotClass2Error(
            f"group is not nilpotent of class <= 2 (series sizes {report.series_sizes})")
    if group.n == 1:
        return trivial_ring(name=f"commring({group.name or 'G'})")
    center = center_group(group)
    quotient, coset_map, reps = quotient_group(group, center)
    q_invs, q_basis, _ = abelian_decomposition(quotient)
    z_group, z_elems = subgroup_as_group(group, center)
    z_invs, _, z_coords = abelian_decomposition(z_group)
    z_index = np.full(group.n, -1, dtype=np.int64)
    z_index[z_elems] = np.arange(z_elems.size)

    if rep_rng is not None:
        cosets = [np.nonzero(coset_map == c)[0] for c in range(quotient.n)]
        picks = np.array([int(rep_rng.choice(list(c))) for c in cosets], dtype=np.int64)
    else:
        picks = reps

    s, t = len(q_invs), len(z_invs)
    invariants = tuple(q_invs) + tuple(z_invs)
    sc = np.zeros((s + t, s + t, s + t), dtype=np.int64)
    for i in range(s):
        a = int(picks[q_basis[i]])
        for j in range(s):
            b = int(picks[q_basis[j]])
            c = commutator(group, a, b)
            zi = z_index[c]
            if zi < 0:
                raise AssertionError("commutator left the center in a class-2 group")
            sc[i, j, s:] = z_coords[zi]
    return validate_ring(invariants, sc, name=f"commring({group.name or 'G'})")


def direct_product_group(g1: FiniteGroup, g2: FiniteGroup,
                         caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    _check_order(g1.n * g2.n, caps, "product group")
    n1, n2 = g1.n, g2.n
    table = (g1.table.astype(np.int64)[:, None, :, None] * n2
             + g2.table.astype(np.int64)[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    return FiniteGroup(table, g1.identity * n2 + g2.identity,
                       name=f"{g1.name or 'G1'}x{g2.name or 'G2'}")


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, int(math.isqrt(p)) + 1):
        if p % q == 0:
            return False
    return True


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n, dtype=np.int64)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, 0, name=f"cyclic({n})")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; index f*n + r for s^f r^r."""
    idx = np.arange(2 * n, dtype=np.int64)
    f1, r1 = idx[:, None] // n, idx[:, None] % n
    f2, r2 = idx[None, :] // n, idx[None, :] % n
    rot = (r2 + np.where(f2 == 1, -r1, r1)) % n
    return FiniteGroup((f1 ^ f2) * n + rot, 0, name=f"dihedral({n})")


def quaternion_group() -> FiniteGroup:
    names = ["1", "i", "j", "k"]
    base = {("1", u): (0, u) for u in names}
    base.update({(u, "1"): (0, u) for u in names})
    base.update({("i", "i"): (1, "1"), ("j", "j"): (1, "1"), ("k", "k"): (1, "1"),
                 ("i", "j"): (0, "k"), ("j", "k"): (0, "i"), ("k", "i"): (0, "j"),
                 ("j", "i"): (1, "k"), ("k", "j"): (1, "i"), ("i", "k"): (1, "j")})
    table = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            sign, unit = base[(names[x // 2], names[y // 2])]
            table[x, y] = 2 * names.index(unit) + (x + y + sign) % 2
    return FiniteGroup(table, 0, name="quaternion8")


def symmetric_group(n: int) -> FiniteGroup:
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return FiniteGroup(np.array(table), 0, name=f"symmetric({n})")


def heisenberg_group(p: int) -> FiniteGroup:
    """Order p^3 on triples (a,b,c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')."""
    idx = np.arange(p ** 3, dtype=np.int64)
    a, b, c = idx % p, (idx // p) % p, idx // (p * p)
    a1, b1, c1 = a[:, None], b[:, None], c[:, None]
    a2, b2, c2 = a[None, :], b[None, :], c[None, :]
    table = (a1 + a2) % p + p * ((b1 + b2) % p) + p * p * ((c1 + c2 + a1 * b2) % p)
    return FiniteGroup(table, 0, name=f"heisenberg({p})")


def klein_four_group() -> FiniteGroup:
    idx = np.arange(4)
    return FiniteGroup(idx[:, None] ^ idx[None, :], 0, name="klein4")


def null_ring(invariants) -> FiniteRing:
    k = len(invariants)
    label = ",".join(str(d) for d in invariants)
    return validate_ring(invariants, np.zeros((k, k, k), dtype=np.int64),
                         name=f"null({label})")


def zn_ring(n: int) -> FiniteRing:
    return validate_ring((n,), np.ones((1, 1, 1), dtype=np.int64), name=f"zn({n})")


def ut3_ring(p: int) -> FiniteRing:
    """Strictly upper-triangular 3x3 matrices over F_p; basis e12, e13, e23."""
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    sc[0, 2, 1] = 1  # e12 * e23 = e13
    return validate_ring((p, p, p), sc, name=f"ut3({p})")


def matrix_ring(size: int, p: int) -> FiniteRing:
    """Full size x size matrix ring over F_p; basis e[r][c] in row-major order."""
    k = size * size
    sc = np.zeros((k, k, k), dtype=np.int64)
    for r1 in range(size):
        for c1 in range(size):
            for c2 in range(size):
                sc[r1 * size + c1, c1 * size + c2, r1 * size + c2] = 1
    return validate_ring((p,) * k, sc, name=f"matrix({size},{p})")


def _validated_catalog_group(group: FiniteGroup) -> FiniteGroup:
    if group.n <= _FULL_VALIDATE_MAX:
        return validate_group(group.table, group.identity, name=group.name)
    # large catalog groups: identity + Latin checks only (see ledger)
    n = group.n
    idx = np.arange(n, dtype=np.int32)
    e = group.identity
    assert np.array_equal(group.table[e], idx) and np.array_equal(group.table[:, e], idx)
    assert not (np.sort(group.table, axis=1) != idx).any()
    assert not (np.sort(group.table, axis=0) != idx[:, None]).any()
    return group


_GROUP_BUILDERS = {
    "cyclic": (1, lambda n: cyclic_group(n), lambda n: 1 <= n <= 4096),
    "dihedral": (1, lambda n: dihedral_group(n), lambda n: 2 <= n <= 2048),
    "quaternion8": (0, lambda: quaternion_group(), None),
    "symmetric": (1, lambda n: symmetric_group(n), lambda n: 1 <= n <= 5),
    "heisenberg": (1, lambda p: heisenberg_group(p), lambda p: _is_prime(p) and p <= 13),
    "klein4": (0, lambda: klein_four_group(), None),
}

_RING_BUILDERS = {
    "null": (-1, lambda *ds: null_ring(ds),
             lambda *ds: ds and all(d >= 2 for d in ds) and math.prod(ds) <= 4096),
    "zn": (1, lambda n: zn_ring(n), lambda n: 2 <= n <= 4096),
    "ut3": (1, lambda p: ut3_ring(p), lambda p: _is_prime(p) and p ** 3 <= 4096),
    "matrix": (2, lambda s, p: matrix_ring(s, p),
               lambda s, p: s == 2 and _is_prime(p) and p ** (s * s) <= 4096),
}

_ALIASES = {"null_ring": "null", "zn_ring": "zn", "ut3_ring": "ut3",
            "matrix_ring": "matrix"}


def catalog(name: str):
    """Build a named structure from CLI syntax, e.g. "heisenberg:3", "ut3:2",
    "symmetric:4", "null:2,2,2", "matrix:2,2".
    """
    head, _, tail = name.strip().partition(":")
    head = _ALIASES.get(head, head)
    params = tuple(int(x) for x in tail.split(",")) if tail else ()
    if head in _GROUP_BUILDERS:
        arity, builder, bounds = _GROUP_BUILDERS[head]
        _check_params(name, params, arity, bounds)
        return _validated_catalog_group(builder(*params))
    if head in _RING_BUILDERS:
        arity, builder, bounds = _RING_BUILDERS[head]
        _check_params(name, params, arity, bounds)
        return builder(*params)
    raise UnknownNameError(f"unknown catalog name {name!r}")


def _check_params(name, params, arity, bounds):
    if arity >= 0 and len(params) != arity:
        raise ParamOutOfRangeError(f"{name!r}: expected {arity} parameter(s)")
    if arity < 0 and not params:
        raise ParamOutOfRangeError(f"{name!r}: expected at least one parameter")
    if bounds is not None and not bounds(*params):
        raise ParamOutOfRangeError(f"{name!r}: parameters out of supported range")


def catalog_names() -> list[str]:
    return sorted(_GROUP_BUILDERS) + sorted(_RING_BUILDERS)
