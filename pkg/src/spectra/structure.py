"""Structural predicates and subobject computations for groups and rings:
centers, commutators, series, nilpotency classes, antisymmetry, parity and
p-primary decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import FiniteGroup, FiniteRing
from .errors import NotAbelianError, NotNormalError, ValidationError


@dataclass(frozen=True)
class SubgroupMask:
    """Membership bitset for a subgroup of a parent group's element set."""

    group: FiniteGroup
    members: np.ndarray  # bool, shape (n,)

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.members))

    def indices(self) -> np.ndarray:
        return np.nonzero(self.members)[0]

    def __contains__(self, x: int) -> bool:
        return bool(self.members[x])

    def same_as(self, other: "SubgroupMask") -> bool:
        return bool(np.array_equal(self.members, other.members))


def subgroup_mask(group: FiniteGroup, members) -> SubgroupMask:
    """Build a mask and check it really is a subgroup (identity, products, inverses)."""
    mask = np.zeros(group.n, dtype=bool)
    mask[np.asarray(list(members), dtype=np.int64)] = True
    if not mask[group.identity]:
        raise ValidationError("subgroup mask must contain the identity")
    idx = np.nonzero(mask)[0]
    prods = group.table[np.ix_(idx, idx)]
    if not mask[prods].all():
        raise ValidationError("subgroup mask is not closed under the group operation")
    if not mask[group.inverses[idx]].all():
        raise ValidationError("subgroup mask is not closed under inverses")
    mask.setflags(write=False)
    return SubgroupMask(group, mask)


@dataclass(frozen=True)
class NilpotencyReport:
    """Lower-central-series (groups) or power-chain (rings) summary.

    class_value is None when the chain stabilizes before reaching the
    trivial subgroup / zero ideal.
    """

    kind: str                      # "group" | "ring"
    class_value: int | None
    series_sizes: tuple[int, ...] = field(default=())

    @property
    def nilpotent(self) -> bool:
        return self.class_value is not None


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def center_group(group: FiniteGroup) -> SubgroupMask:
    """Elements commuting with everything."""
    mask = (group.table == group.table.T).all(axis=1)
    return subgroup_mask(group, np.nonzero(mask)[0])


def commutator(group: FiniteGroup, a: int, b: int) -> int:
    """a^-1 b^-1 a b."""
    t = group.table
    inv = group.inverses
    return int(t[t[inv[a], inv[b]], t[a, b]])


def commutator_block(group: FiniteGroup, rows: np.ndarray) -> np.ndarray:
    """Commutators [x, g] for x in rows and every g, as a (len(rows), n) array."""
    t = group.table
    inv = group.inverses
    left = t[np.ix_(inv[rows], inv)]
    right = t[rows, :]
    return t[left, right]


def generated_subgroup(group: FiniteGroup, seed) -> SubgroupMask:
    """Smallest subgroup containing the seed (worklist closure)."""
    n = group.n
    t = group.table
    inv = group.inverses
    mask = np.zeros(n, dtype=bool)
    mask[group.identity] = True
    queue = []
    for s in seed:
        s = int(s)
        if not mask[s]:
            mask[s] = True
            queue.append(s)
    while queue:
        x = queue.pop()
        current = np.nonzero(mask)[0]
        fresh = np.unique(np.concatenate((t[x, current], t[current, x], inv[x:x + 1])))
        for y in fresh:
            if not mask[y]:
                mask[y] = True
                queue.append(int(y))
    return subgroup_mask(group, np.nonzero(mask)[0])


def derived_subgroup(group: FiniteGroup) -> SubgroupMask:
    """Subgroup generated by all commutators."""
    comms = commutator_block(group, np.arange(group.n))
    return generated_subgroup(group, np.unique(comms))


def lower_central_series(group: FiniteGroup) -> NilpotencyReport:
    """Iterate G_i = [G_{i-1}, G] until {e} (class = step count) or stabilization."""
    current = subgroup_mask(group, np.arange(group.n))
    sizes = [current.size]
    step = 0
    while True:
        if current.size == 1:
            return NilpotencyReport("group", step, tuple(sizes))
        comms = commutator_block(group, current.indices())
        nxt = generated_subgroup(group, np.unique(comms))
        step += 1
        if nxt.same_as(current):
            return NilpotencyReport("group", None, tuple(sizes))
        sizes.append(nxt.size)
        current = nxt


def quotient_group(group: FiniteGroup, normal: SubgroupMask):
    """Quotient by a normal subgroup.

    Returns (quotient, coset_map, reps): a Cayley table over lowest-index
    coset representatives and the element -> coset index surjection.
    """
    t = group.table
    n = group.n
    nidx = normal.indices()
    conj = t[t[:, nidx], group.inverses[:, None]]
    if not normal.members[conj].all():
        g, j = np.argwhere(~normal.members[conj])[0]
        raise NotNormalError(
            f"subgroup is not normal: g{int(g)} n g{int(g)}^-1 leaves the subgroup "
            f"for n = g{int(nidx[j])}"
        )
    coset_map = np.full(n, -1, dtype=np.int64)
    reps = []
    for x in range(n):
        if coset_map[x] >= 0:
            continue
        coset = t[x, nidx]
        coset_map[coset] = len(reps)
        reps.append(x)
    reps = np.array(reps, dtype=np.int64)
    q_table = coset_map[t[np.ix_(reps, reps)]]
    quotient = FiniteGroup(q_table, int(coset_map[group.identity]),
                           name=f"{group.name or 'G'}/N")
    return quotient, coset_map, reps


def subgroup_as_group(group: FiniteGroup, mask: SubgroupMask):
    """Reindex a subgroup as a standalone group; returns (subgroup, elements)."""
    elems = mask.indices()
    lookup = np.full(group.n, -1, dtype=np.int64)
    lookup[elems] = np.arange(elems.size)
    table = lookup[group.table[np.ix_(elems, elems)]]
    sub = FiniteGroup(table, int(lookup[group.identity]),
                      name=f"{group.name or 'G'}|sub")
    return sub, elems


def _pow_element(group: FiniteGroup, g: int, m: int) -> int:
    result = group.identity
    base = g
    while m:
        if m & 1:
            result = group.op(result, base)
        base = group.op(base, base)
        m >>= 1
    return result


def abelian_decomposition(group: FiniteGroup):
    """Invariant factors (d_1 | d_2 | ... | d_k) with realizing basis and the
    full element -> coordinate map.

    Repeatedly splits off a maximal-order cyclic factor (lowest element index
    on ties) and lifts the basis of the quotient.
    """
    if not group.is_abelian:
        a, b = np.argwhere(group.table != group.table.T)[0]
        raise NotAbelianError(f"elements g{int(a)} and g{int(b)} do not commute")
    invariants, basis = _abelian_split(group)
    coords = _abelian_coords(group, invariants, basis)
    return tuple(invariants), [int(b) for b in basis], coords


def _abelian_split(group: FiniteGroup):
    if group.n == 1:
        return [], []
    orders = kernels.element_orders(group.table, group.identity)
    g = int(np.argmax(orders))
    d = int(orders[g])
    powers = {group.identity: 0}
    x = group.identity
    for t in range(1, d):
        x = group.op(x, g)
        powers[x] = t
    cyclic = subgroup_mask(group, list(powers.keys()))
    quotient, coset_map, reps = quotient_group(group, cyclic)
    sub_invs, sub_basis_q = _abelian_split(quotient)
    basis = []
    for hbar, m in zip(sub_basis_q, sub_invs):
        h = int(reps[hbar])
        s = powers[_pow_element(group, h, m)]
        # h^m = g^s with m | s; correct h so the lift has order exactly m
        u = (-(s // m)) % (d // m)
        basis.append(group.op(h, _pow_element(group, g, u)))
    invariants = sub_invs + [d]
    basis.append(g)
    return invariants, basis


def _abelian_coords(group: FiniteGroup, invariants, basis) -> np.ndarray:
    elems = np.array([group.identity], dtype=np.int64)
    coords = np.zeros((1, 0), dtype=np.int64)
    for pos, (g, d) in enumerate(zip(basis, invariants)):
        powers = np.empty(d, dtype=np.int64)
        x = group.identity
        for t in range(d):
            powers[t] = x
            x = group.op(x, g)
        new_elems = group.table[elems[:, None], powers[None, :]].reshape(-1)
        reps_t = np.tile(np.arange(d, dtype=np.int64), (elems.size, 1)).reshape(-1, 1)
        coords = np.hstack([np.repeat(coords, d, axis=0), reps_t])
        elems = new_elems.astype(np.int64)
    if np.unique(elems).size != group.n:
        raise AssertionError("abelian decomposition basis does not span the group")
    full = np.zeros((group.n, len(invariants)), dtype=np.int64)
    full[elems] = coords
    return full


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

def additive_span_mask(ring: FiniteRing, vectors) -> np.ndarray:
    """Element mask of the additive subgroup generated by coefficient vectors."""
    k = ring.k
    span = np.zeros((1, k), dtype=np.int64)
    seen = {0}
    for vec in vectors:
        vec = np.asarray(vec, dtype=np.int64) % ring.dmods
        if int(vec @ ring.strides) in seen:
            continue
        order = ring.vector_additive_order(vec)
        shifts = (np.arange(order, dtype=np.int64)[:, None] * vec[None, :]) % ring.dmods
        combined = (span[:, None, :] + shifts[None, :, :]).reshape(-1, k) % ring.dmods
        codes = combined @ ring.strides
        _, first = np.unique(codes, return_index=True)
        span = combined[np.sort(first)]
        seen = set(int(c) for c in codes)
    mask = np.zeros(ring.order, dtype=bool)
    mask[(span @ ring.strides)] = True
    return mask


def _basis_vectors(ring: FiniteRing) -> list[np.ndarray]:
    return [np.eye(ring.k, dtype=np.int64)[i] for i in range(ring.k)]


def _limit_span(ring: FiniteRing) -> np.ndarray:
    """Limit of the power chain, via U <- span(R*U + U*R).

    Unlike the convolution chain this recurrence is first-order, so two equal
    consecutive terms mean a true fixpoint; it converges in at most
    log2(|R|) strict drops and equals the chain's limit (a bracketed product
    of n factors sits at tree depth >= log2(n)).
    """
    basis = _basis_vectors(ring)
    gens = basis
    mask = np.ones(ring.order, dtype=bool)
    while True:
        products = []
        seen = set()
        for e in basis:
            for u in gens:
                for w in (ring.mul_vec(e, u), ring.mul_vec(u, e)):
                    code = int(w @ ring.strides)
                    if code and code not in seen:
                        seen.add(code)
                        products.append(w)
        nxt = additive_span_mask(ring, products)
        if np.array_equal(nxt, mask):
            return mask
        mask = nxt
        gens = products


def ring_powers(ring: FiniteRing) -> NilpotencyReport:
    """Power chain R^1 = R, R^n = additive span of all products R^i R^j with
    i + j = n (every bracketing covered by the convolution); class = least n
    with R^n = 0, None when the chain's limit is nonzero.

    The chain can plateau and then keep dropping in nonassociative rings, so
    termination is decided against the precomputed limit rather than by
    comparing consecutive terms.
    """
    if ring.order == 1:
        return NilpotencyReport("ring", 1, (1,))
    limit = _limit_span(ring)
    nilpotent = int(np.count_nonzero(limit)) == 1
    gens = {1: _basis_vectors(ring)}
    sizes = [ring.order]
    n = 1
    while True:
        n += 1
        products = []
        seen = set()
        for i in range(1, n):
            j = n - i
            for u in gens[i]:
                for v in gens[j]:
                    w = ring.mul_vec(u, v)
                    code = int(w @ ring.strides)
                    if code and code not in seen:
                        seen.add(code)
                        products.append(w)
        mask = additive_span_mask(ring, products)
        gens[n] = products
        sizes.append(int(np.count_nonzero(mask)))
        if nilpotent and sizes[-1] == 1:
            return NilpotencyReport("ring", n, tuple(sizes))
        if not nilpotent and np.array_equal(mask, limit):
            return NilpotencyReport("ring", None, tuple(sizes))
        if n > ring.order + 2:
            raise AssertionError("power chain failed to converge")


def is_associative(ring: FiniteRing) -> bool:
    """Associativity on generator triples; bilinearity lifts it to all elements."""
    return associativity_witness(ring) is None


def associativity_witness(ring: FiniteRing):
    basis = np.eye(ring.k, dtype=np.int64)
    for i in range(ring.k):
        for j in range(ring.k):
            left_ij = ring.sc[i, j]
            for m in range(ring.k):
                left = ring.mul_vec(left_ij, basis[m])
                right = ring.mul_vec(basis[i], ring.sc[j, m])
                if not np.array_equal(left, right):
                    return (i, j, m)
    return None


def is_antisymmetric(ring: FiniteRing) -> bool:
    """e_i e_j = -e_j e_i on all generator pairs (bilinearity lifts it)."""
    for i in range(ring.k):
        for j in range(ring.k):
            neg = (-ring.sc[j, i]) % ring.dmods
            if not np.array_equal(ring.sc[i, j], neg):
                return False
    return True


def is_strongly_antisymmetric(ring: FiniteRing) -> bool:
    """a^2 = 0 for every element; needs the full loop (even invariants admit
    cross terms that vanish on generators but not on sums).
    """
    for x in range(ring.order):
        cx = ring.coords[x]
        if ring.mul_vec(cx, cx).any():
            return False
    return True


@dataclass(frozen=True)
class ParityReport:
    order: int
    is_odd: bool
    prime_power: tuple[int, int] | None  # (p, exponent) when order = p^exponent

    def is_p_power(self, p: int) -> bool:
        return self.prime_power is not None and self.prime_power[0] == p


def _factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def parity_and_p(obj) -> ParityReport:
    """Order, oddness, and the prime when the order is a prime power."""
    order = obj.n if isinstance(obj, FiniteGroup) else obj.order
    factors = _factorize(order)
    prime_power = None
    if len(factors) == 1:
        (p, e), = factors.items()
        prime_power = (p, e)
    return ParityReport(order, order % 2 == 1, prime_power)


def p_primary_decomposition(ring: FiniteRing) -> list[tuple[int, FiniteRing]]:
    """Components of elements of p-power additive order, one per prime p
    dividing |R|, with induced structure constants.  Components of coprime
    order annihilate each other, so the original product structure is the
    direct product of the components.
    """
    factors = _factorize(ring.order)
    if len(factors) <= 1:
        return [(p, ring) for p in factors] or []
    out = []
    for p in sorted(factors):
        keep = []
        pparts = []
        cofactors = []
        for i, d in enumerate(ring.invariants):
            pe = p ** _factorize(d).get(p, 0)
            if pe > 1:
                keep.append(i)
                pparts.append(pe)
                cofactors.append(d // pe)
        sub_sc = np.zeros((len(keep), len(keep), len(keep)), dtype=np.int64)
        for a, i in enumerate(keep):
            for b, j in enumerate(keep):
                vec = (cofactors[a] * cofactors[b] * ring.sc[i, j]) % ring.dmods
                for c, m in enumerate(keep):
                    coeff = int(vec[m])
                    if coeff % cofactors[c] != 0:
                        raise AssertionError("p-component product left the component")
                    sub_sc[a, b, c] = (coeff // cofactors[c]) % pparts[c]
                for m in range(ring.k):
                    if m not in keep and vec[m] != 0:
                        raise AssertionError("p-component product left the component")
        out.append((p, FiniteRing(pparts, sub_sc, name=f"{ring.name or 'R'}_p{p}")))
    return out
