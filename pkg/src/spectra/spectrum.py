"""Enumeration of small rings and spectrum slices.

Spectra are sets of exact probability values with multiplicity counts over
labeled structures (no isomorphism reduction: values, not rings, are the
object of interest).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product

import numpy as np

from .config import DEFAULT_CAPS, Caps
from .core import FiniteRing, PolySpec, validate_ring
from .errors import (
    BudgetExceededError,
    CapExceededError,
    EmptyFamilyError,
    ParamOutOfRangeError,
)
from .probability import pr_ann_ring, pr_c_group, pr_c_ring, pr_f_ring
from .structure import is_strongly_antisymmetric, ring_powers


@dataclass(frozen=True)
class BilinearFamilySpec:
    """Rings on V + W with products (v,w)(v',w') = (0, beta(v,v')), where the
    pairing beta is determined by its generator values in W.  Alternating
    mode forces beta(e_i, e_i) = 0 and beta(e_j, e_i) = -beta(e_i, e_j).
    """

    v_invariants: tuple[int, ...]
    w_invariants: tuple[int, ...]
    alternating: bool = True

    @property
    def order(self) -> int:
        return math.prod(self.v_invariants) * math.prod(self.w_invariants)


@dataclass
class Spectrum:
    """Sorted duplicate-free probability values with per-value counts."""

    values: list[Fraction]
    counts: dict[Fraction, int]
    family: str
    poly: PolySpec
    witnesses: dict[Fraction, FiniteRing] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "Spectrum") -> "Spectrum":
        counts = dict(self.counts)
        witnesses = dict(self.witnesses)
        for v, c in other.counts.items():
            counts[v] = counts.get(v, 0) + c
            witnesses.setdefault(v, other.witnesses.get(v))
        return Spectrum(sorted(counts), counts,
                        f"{self.family}+{other.family}", self.poly, witnesses)


def spectrum_of(rings, poly: PolySpec, family: str = "",
                caps: Caps = DEFAULT_CAPS) -> Spectrum:
    """Collect Pr_f values over a stream of rings, with multiplicities."""
    counts: dict[Fraction, int] = {}
    witnesses: dict[Fraction, FiniteRing] = {}
    for ring in rings:
        value = pr_f_ring(ring, poly, caps).value
        counts[value] = counts.get(value, 0) + 1
        witnesses.setdefault(value, ring)
    if not counts:
        raise EmptyFamilyError(f"family {family!r} produced no rings")
    return Spectrum(sorted(counts), counts, family, poly, witnesses)


# ---------------------------------------------------------------------------
# enumerations
# ---------------------------------------------------------------------------

def _torsion_elements(invariants, bound: int) -> list[np.ndarray]:
    """All coefficient vectors over the invariants whose additive order divides bound."""
    per_axis = [range(0, d, d // math.gcd(d, bound)) for d in invariants]
    return [np.array(combo, dtype=np.int64) for combo in iter_product(*per_axis)]


def _shard_entries(entries: list, shard: tuple[int, int] | None):
    """Partition the sweep by splitting the first entry's choice list."""
    if shard is None or not entries:
        return entries
    index, total = shard
    first = entries[0]
    lo = len(first) * index // total
    hi = len(first) * (index + 1) // total
    return [first[lo:hi]] + entries[1:]


def enumerate_bilinear_rings(spec: BilinearFamilySpec, caps: Caps = DEFAULT_CAPS,
                             shard: tuple[int, int] | None = None):
    """Stream every order-compatible pairing for the family, one ring each.

    Every emitted ring is validated; in alternating mode it is also checked
    strongly antisymmetric with a power chain of class <= 3.
    """
    if not spec.v_invariants or not spec.w_invariants:
        raise ParamOutOfRangeError("bilinear family needs nonempty V and W invariants")
    if any(d < 2 for d in spec.v_invariants + spec.w_invariants):
        raise ParamOutOfRangeError("bilinear family invariants must be >= 2")
    if spec.order > caps.bilinear_max_order:
        raise CapExceededError(
            f"family order {spec.order} > bilinear cap {caps.bilinear_max_order}")
    v, w = spec.v_invariants, spec.w_invariants
    s, t = len(v), len(w)
    if spec.alternating:
        positions = [(i, j) for i in range(s) for j in range(i + 1, s)]
    else:
        positions = [(i, j) for i in range(s) for j in range(s)]
    choice_lists = [_torsion_elements(w, math.gcd(v[i], v[j])) for i, j in positions]
    count = math.prod(len(c) for c in choice_lists) if choice_lists else 1
    if count > caps.enum_budget:
        raise BudgetExceededError(
            f"{count} pairings exceed budget {caps.enum_budget}", candidates=count)
    invariants = v + w
    wmods = np.array(w, dtype=np.int64)
    label = "alt" if spec.alternating else "full"
    family = f"bilinear[{label}] V={v} W={w}"
    for number, combo in enumerate(iter_product(*_shard_entries(choice_lists, shard))):
        sc = np.zeros((s + t, s + t, s + t), dtype=np.int64)
        for (i, j), vec in zip(positions, combo):
            sc[i, j, s:] = vec
            if spec.alternating:
                sc[j, i, s:] = (-vec) % wmods
        ring = validate_ring(invariants, sc, name=f"{family} #{number}")
        if spec.alternating:
            if not is_strongly_antisymmetric(ring):
                raise AssertionError("alternating family emitted a non-dinipotent ring")
            report = ring_powers(ring)
            if not (report.nilpotent and report.class_value <= 3):
                raise AssertionError("alternating family emitted a ring of class > 3")
        yield ring


def general_sweep_size(invariants, caps: Caps = DEFAULT_CAPS) -> int:
    """Candidate count for the exhaustive sc sweep (cheap, runs before work starts)."""
    invariants = tuple(int(d) for d in invariants)
    total = 1
    for i in range(len(invariants)):
        for j in range(len(invariants)):
            g = math.gcd(invariants[i], invariants[j])
            total *= math.prod(math.gcd(d, g) for d in invariants)
    return total


def enumerate_general_rings(invariants, predicates=(), caps: Caps = DEFAULT_CAPS,
                            shard: tuple[int, int] | None = None):
    """Stream every compatible structure-constant tensor over the invariants,
    optionally filtered by predicates.  No isomorphism reduction.
    """
    invariants = tuple(int(d) for d in invariants)
    if not invariants or any(d < 2 for d in invariants):
        raise ParamOutOfRangeError("invariants must be nonempty with entries >= 2")
    order = math.prod(invariants)
    if order > caps.general_max_order:
        raise CapExceededError(
            f"ring order {order} > general sweep cap {caps.general_max_order}")
    count = general_sweep_size(invariants, caps)
    if count > caps.enum_budget:
        raise BudgetExceededError(
            f"{count} candidate tensors exceed budget {caps.enum_budget}",
            candidates=count)
    k = len(invariants)
    positions = [(i, j) for i in range(k) for j in range(k)]
    choice_lists = [_torsion_elements(invariants, math.gcd(invariants[i], invariants[j]))
                    for i, j in positions]
    label = ",".join(str(d) for d in invariants)
    for number, combo in enumerate(iter_product(*_shard_entries(choice_lists, shard))):
        sc = np.empty((k, k, k), dtype=np.int64)
        for (i, j), vec in zip(positions, combo):
            sc[i, j] = vec
        ring = FiniteRing(invariants, sc, name=f"sweep({label}) #{number}")
        if all(pred(ring) for pred in predicates):
            yield ring


# ---------------------------------------------------------------------------
# the >= 11/32 gate
# ---------------------------------------------------------------------------

_GATE_THRESHOLD = Fraction(11, 32)
_GATE_LISTED = {Fraction(1), Fraction(7, 16), Fraction(11, 27),
                Fraction(25, 64), Fraction(11, 32)}


def in_dyadic_family(value: Fraction) -> bool:
    """Membership in {(4^k + 1) / (2 * 4^k) : k >= 1}."""
    p, q = value.numerator, value.denominator
    base = p - 1
    if base < 4 or q != 2 * base:
        return False
    while base % 4 == 0:
        base //= 4
    return base == 1


@dataclass
class GateReport:
    passed: bool
    violations: list[tuple[Fraction, str]]
    contains_half: bool
    checked: int


def gate_check_32(spectrum: Spectrum) -> GateReport:
    """Every value >= 11/32 must be 1, 7/16, 11/27, 25/64, 11/32 or a member
    of the dyadic family (4^k+1)/(2*4^k); 1/2 must be absent entirely.
    """
    violations = []
    contains_half = Fraction(1, 2) in spectrum.counts
    for value in spectrum.values:
        if value >= _GATE_THRESHOLD and value not in _GATE_LISTED \
                and not in_dyadic_family(value):
            witness = spectrum.witnesses.get(value)
            violations.append((value, witness.name if witness else "?"))
    if contains_half and Fraction(1, 2) not in {v for v, _ in violations}:
        witness = spectrum.witnesses.get(Fraction(1, 2))
        violations.append((Fraction(1, 2), witness.name if witness else "?"))
    return GateReport(not violations, violations, contains_half, len(spectrum.values))


# ---------------------------------------------------------------------------
# odd-order round trip
# ---------------------------------------------------------------------------

@dataclass
class RoundTripReport:
    ring_instances: int
    group_instances: int
    max_order: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def _odd_rings(order_cap: int, caps: Caps):
    from .constructions import matrix_ring, null_ring, ut3_ring, zn_ring

    rings = []
    for n in (3, 5, 7, 9, 15, 21, 25, 27, 33, 45, 63, 81):
        if n <= order_cap:
            rings.append(zn_ring(n))
    for invs in ((3,), (5,), (7,), (9,), (3, 3), (11,), (13,), (3, 9), (5, 5),
                 (27,), (3, 3, 3), (81,)):
        if math.prod(invs) <= order_cap:
            rings.append(null_ring(invs))
    if 27 <= order_cap:
        rings.append(ut3_ring(3))
    if 81 <= order_cap:
        rings.append(matrix_ring(2, 3))
    fam = BilinearFamilySpec((3, 3), (3,), alternating=True)
    if fam.order <= order_cap:
        rings.extend(enumerate_bilinear_rings(fam, caps))
    rings.extend(enumerate_general_rings((3,), caps=caps))
    return [r for r in rings if r.order % 2 == 1 and r.order <= order_cap]


def odd_round_trip(order_cap: int, caps: Caps = DEFAULT_CAPS) -> RoundTripReport:
    """Check the odd-order spectrum equalities pointwise on structures of
    order <= order_cap:

      rings R:   Pr_c(R) = Pr_c(circle(nring(R)))   (|nring(R)| = |R|^2, still odd)
      groups G:  Pr_c(G) = Pr_ann(commring(G)) = Pr_c(commring(G))
    """
    from .constructions import (circle_group, commutator_ring, cyclic_group,
                                heisenberg_group, nring)

    inner_caps = caps.with_order_cap(max(caps.order_cap, order_cap ** 2))
    failures: list[str] = []
    max_order = 1
    rings = _odd_rings(order_cap, caps)
    groups = [cyclic_group(n) for n in range(3, order_cap + 1, 2)]
    if 27 <= order_cap:
        groups.append(heisenberg_group(3))
    for ring in rings:
        max_order = max(max_order, ring.order ** 2)
        lhs = pr_c_ring(ring, inner_caps).value
        circled = circle_group(nring(ring, inner_caps), inner_caps)
        rhs = pr_c_group(circled).value
        if lhs != rhs:
            failures.append(
                f"{ring.name}: Pr_c(R) = {lhs} but Pr_c(circle(nring(R))) = {rhs}")
        if ring.order ** 2 <= order_cap:
            groups.append(circled)
    for group in groups:
        max_order = max(max_order, group.n)
        commring = commutator_ring(group, inner_caps)
        a = pr_c_group(group).value
        b = pr_ann_ring(commring, inner_caps).value
        c = pr_c_ring(commring, inner_caps).value
        if not (a == b == c):
            failures.append(
                f"{group.name}: Pr_c(G) = {a}, Pr_ann(commring) = {b}, "
                f"Pr_c(commring) = {c}")
    return RoundTripReport(len(rings), len(groups), max_order, failures)
