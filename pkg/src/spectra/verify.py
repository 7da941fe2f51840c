"""Named verification suites: each runs one family of equalities over catalog
and enumerated instances and reports every violation with a witness.

Suite names are part of the CLI contract: lemma11, lemma31, lemma32, lemma33,
malcev, multiplicativity, thm21, odd22, gate32.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CAPS, Caps
from .core import ANNIHILATE, COMMUTE, FiniteGroup, FiniteRing, validate_group
from .probability import pr_ann_ring, pr_c_group, pr_c_ring, pr_f_ring
from .spectrum import (
    BilinearFamilySpec,
    enumerate_bilinear_rings,
    enumerate_general_rings,
    gate_check_32,
    odd_round_trip,
    spectrum_of,
)
from .structure import (
    is_antisymmetric,
    is_associative,
    is_strongly_antisymmetric,
    lower_central_series,
    ring_powers,
)


@dataclass
class Failure:
    message: str
    witness: dict | None = None


@dataclass
class VerifyReport:
    suite: str
    instances: int
    max_order: int
    failures: list[Failure] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures


def _witness(obj) -> dict:
    from .io import structure_to_dict

    return structure_to_dict(obj)


# ---------------------------------------------------------------------------
# instance pools
# ---------------------------------------------------------------------------

_NULL_INVARIANTS = [
    (2,), (3,), (4,), (2, 2), (5,), (7,), (8,), (2, 4), (9,), (3, 3),
    (2, 2, 2), (16,), (25,), (27,), (2, 2, 2, 2), (4, 4), (32,), (2, 16),
    (3, 9), (5, 5), (49,), (64,),
]


def catalog_ring_pool(max_order: int) -> list[FiniteRing]:
    from .constructions import matrix_ring, null_ring, nring, ut3_ring, zn_ring

    rings: list[FiniteRing] = []
    rings.extend(zn_ring(n) for n in range(2, 33) if n <= max_order)
    rings.extend(null_ring(invs) for invs in _NULL_INVARIANTS
                 if np.prod(invs) <= max_order)
    for p in (2, 3):
        if p ** 3 <= max_order:
            rings.append(ut3_ring(p))
    if 16 <= max_order:
        rings.append(matrix_ring(2, 2))
    for base in (2, 3, 4):
        if base ** 2 <= max_order:
            rings.append(nring(zn_ring(base)))
    return rings


def class2_group_pool(include_circles: bool = True,
                      caps: Caps = DEFAULT_CAPS) -> list[FiniteGroup]:
    from .constructions import (circle_group, cyclic_group, dihedral_group,
                                heisenberg_group, klein_four_group,
                                quaternion_group)

    groups = [cyclic_group(n) for n in range(1, 11)]
    groups.append(klein_four_group())
    groups.extend([dihedral_group(4), quaternion_group(),
                   heisenberg_group(3), heisenberg_group(5)])
    if include_circles:
        groups.extend(circle_group(ring, caps)
                      for ring in nilpotent_assoc_ring_pool(64, caps))
    return groups


def nilpotent_assoc_ring_pool(max_order: int, caps: Caps = DEFAULT_CAPS) -> list[FiniteRing]:
    """Associative nilpotent rings of class <= 3 and order <= max_order."""
    pool = list(catalog_ring_pool(max_order))
    pool.extend(enumerate_general_rings((2, 2), caps=caps))
    for spec in (BilinearFamilySpec((2, 2), (2,), alternating=True),
                 BilinearFamilySpec((2, 2), (2,), alternating=False),
                 BilinearFamilySpec((2, 2, 2), (2,), alternating=True),
                 BilinearFamilySpec((3, 3), (3,), alternating=True),
                 BilinearFamilySpec((2, 4), (2,), alternating=True)):
        if spec.order <= max_order:
            pool.extend(enumerate_bilinear_rings(spec, caps))
    keep = []
    for ring in pool:
        if ring.order > max_order or not is_associative(ring):
            continue
        report = ring_powers(ring)
        if report.nilpotent and report.class_value <= 3:
            keep.append(ring)
    return keep


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_lemma11(caps: Caps = DEFAULT_CAPS, seed: int = 0, max_order: int = 32,
                  min_instances: int = 20) -> VerifyReport:
    """Pr_f(R) = Pr_f(nring(R)) for both canonical pairings, and the pair
    ring is nilpotent of class <= 3.
    """
    from .constructions import nring

    start = time.perf_counter()
    report = VerifyReport("lemma11", 0, 0)
    rings = [r for r in catalog_ring_pool(max_order) if r.order <= max_order]
    rings.extend(list(enumerate_general_rings((2, 2), caps=caps))[:8])
    for ring in rings:
        report.instances += 1
        report.max_order = max(report.max_order, ring.order ** 2)
        doubled = nring(ring, caps)
        powers = ring_powers(doubled)
        if not (powers.nilpotent and powers.class_value <= 3):
            report.failures.append(Failure(
                f"{ring.name}: nring has class {powers.class_value}", _witness(ring)))
        for poly in (COMMUTE, ANNIHILATE):
            lhs = pr_f_ring(ring, poly, caps).value
            rhs = pr_f_ring(doubled, poly, caps).value
            if lhs != rhs:
                report.failures.append(Failure(
                    f"{ring.name}: Pr_({poly})(R) = {lhs} != {rhs} = Pr_({poly})(nring)",
                    _witness(ring)))
    if report.instances < min_instances:
        report.failures.append(Failure(
            f"only {report.instances} instances, need >= {min_instances}"))
    report.wall_time = time.perf_counter() - start
    return report


def _group_commutator_table(group: FiniteGroup) -> np.ndarray:
    t = group.table
    inv = group.inverses
    return t[t[np.ix_(inv, inv)], t]


def _ring_commutator_table(ring: FiniteRing, caps: Caps) -> np.ndarray:
    ptable = ring.product_table(max(caps.table_threshold, ring.order))
    diff = (ring.coords[ptable] - ring.coords[ptable.T]) % ring.dmods
    return (diff @ ring.strides).astype(np.int32)


def suite_lemma31(caps: Caps = DEFAULT_CAPS, seed: int = 0,
                  max_order: int = 64) -> VerifyReport:
    """For every associative nilpotent ring of class <= 3: the circle group
    validates, group and ring commutators agree on all pairs, the group has
    class <= 2, and Pr_c is preserved.
    """
    from .constructions import circle_group

    start = time.perf_counter()
    report = VerifyReport("lemma31", 0, 0)
    for ring in nilpotent_assoc_ring_pool(max_order, caps):
        report.instances += 1
        report.max_order = max(report.max_order, ring.order)
        circled = circle_group(ring, caps)
        try:
            validate_group(circled.table, circled.identity, name=circled.name)
        except Exception as exc:  # noqa: BLE001 - reported, not raised
            report.failures.append(Failure(
                f"{ring.name}: circle table fails validation: {exc}", _witness(ring)))
            continue
        group_comm = _group_commutator_table(circled)
        ring_comm = _ring_commutator_table(ring, caps)
        if not np.array_equal(group_comm, ring_comm):
            report.failures.append(Failure(
                f"{ring.name}: circle-group commutator differs from ring commutator",
                _witness(ring)))
        series = lower_central_series(circled)
        if not (series.nilpotent and series.class_value <= 2):
            report.failures.append(Failure(
                f"{ring.name}: circle group has class {series.class_value}",
                _witness(ring)))
        lhs = pr_c_ring(ring, caps).value
        rhs = pr_c_group(circled).value
        if lhs != rhs:
            report.failures.append(Failure(
                f"{ring.name}: Pr_c(N) = {lhs} != {rhs} = Pr_c(circle)", _witness(ring)))
    report.wall_time = time.perf_counter() - start
    return report


def suite_lemma32(caps: Caps = DEFAULT_CAPS, seed: int = 0) -> VerifyReport:
    """For class-<=2 groups: the commutator ring is strongly antisymmetric of
    class <= 3, has the same order, and Pr_c(G) = Pr_ann(commring(G)).
    """
    from .constructions import commutator_ring

    start = time.perf_counter()
    report = VerifyReport("lemma32", 0, 0)
    for group in class2_group_pool(include_circles=True, caps=caps):
        report.instances += 1
        report.max_order = max(report.max_order, group.n)
        ring = commutator_ring(group, caps)
        if ring.order != group.n:
            report.failures.append(Failure(
                f"{group.name}: |commring| = {ring.order} != |G| = {group.n}",
                _witness(group)))
        if ring.order > 1 and not is_strongly_antisymmetric(ring):
            report.failures.append(Failure(
                f"{group.name}: commring is not strongly antisymmetric", _witness(group)))
        powers = ring_powers(ring)
        if not (powers.nilpotent and powers.class_value <= 3):
            report.failures.append(Failure(
                f"{group.name}: commring has class {powers.class_value}", _witness(group)))
        lhs = pr_c_group(group).value
        rhs = pr_ann_ring(ring, caps).value
        if lhs != rhs:
            report.failures.append(Failure(
                f"{group.name}: Pr_c(G) = {lhs} != {rhs} = Pr_ann(commring)",
                _witness(group)))
    report.wall_time = time.perf_counter() - start
    return report


_ODD_FAMILIES = (
    BilinearFamilySpec((3, 3), (3,), alternating=False),
    BilinearFamilySpec((3, 3, 3), (3,), alternating=True),
    BilinearFamilySpec((5, 5), (5,), alternating=True),
    BilinearFamilySpec((3, 3), (9,), alternating=True),
    BilinearFamilySpec((9, 3), (3,), alternating=True),
    BilinearFamilySpec((3, 3, 3), (3, 3), alternating=True),
)


def suite_lemma33(caps: Caps = DEFAULT_CAPS, seed: int = 0,
                  min_instances: int = 50) -> VerifyReport:
    """Every odd-order antisymmetric ring from the bilinear families has
    Pr_c(R) = Pr_ann(R).
    """
    start = time.perf_counter()
    report = VerifyReport("lemma33", 0, 0)
    for spec in _ODD_FAMILIES:
        for ring in enumerate_bilinear_rings(spec, caps):
            if ring.order % 2 == 0 or not is_antisymmetric(ring):
                continue
            report.instances += 1
            report.max_order = max(report.max_order, ring.order)
            lhs = pr_c_ring(ring, caps).value
            rhs = pr_ann_ring(ring, caps).value
            if lhs != rhs:
                report.failures.append(Failure(
                    f"{ring.name}: Pr_c = {lhs} != {rhs} = Pr_ann", _witness(ring)))
    if report.instances < min_instances:
        report.failures.append(Failure(
            f"only {report.instances} instances, need >= {min_instances}"))
    report.wall_time = time.perf_counter() - start
    return report


def suite_malcev(caps: Caps = DEFAULT_CAPS, seed: int = 0,
                 min_instances: int = 20) -> VerifyReport:
    """The malcev group of any ring validates, is nilpotent of class <= 2 and
    has the ring's commuting probability.  Any violation would be a finding.
    """
    from .constructions import malcev_group, matrix_ring, null_ring, ut3_ring, zn_ring

    start = time.perf_counter()
    report = VerifyReport("malcev", 0, 0)
    rings = list(enumerate_general_rings((2, 2), caps=caps))
    rings.extend(zn_ring(n) for n in range(2, 7))
    rings.extend([ut3_ring(2), matrix_ring(2, 2), null_ring((3, 3))])
    saw_nonassociative = False
    for ring in rings:
        report.instances += 1
        saw_nonassociative = saw_nonassociative or not is_associative(ring)
        group = malcev_group(ring, caps)
        report.max_order = max(report.max_order, group.n)
        try:
            validate_group(group.table, group.identity, name=group.name)
        except Exception as exc:  # noqa: BLE001
            report.failures.append(Failure(
                f"{ring.name}: malcev table fails validation: {exc}", _witness(ring)))
            continue
        series = lower_central_series(group)
        if not (series.nilpotent and series.class_value <= 2):
            report.failures.append(Failure(
                f"{ring.name}: malcev group has class {series.class_value}",
                _witness(ring)))
        lhs = pr_c_ring(ring, caps).value
        rhs = pr_c_group(group).value
        if lhs != rhs:
            report.failures.append(Failure(
                f"{ring.name}: Pr_c(R) = {lhs} != {rhs} = Pr_c(malcev)", _witness(ring)))
    if not saw_nonassociative:
        report.failures.append(Failure("pool contained no nonassociative ring"))
    if report.instances < min_instances:
        report.failures.append(Failure(
            f"only {report.instances} instances, need >= {min_instances}"))
    report.wall_time = time.perf_counter() - start
    return report


def suite_multiplicativity(caps: Caps = DEFAULT_CAPS, seed: int = 0,
                           pairs: int = 25) -> VerifyReport:
    """Pr_f(R1 x R2) = Pr_f(R1) * Pr_f(R2) on random catalog pairs."""
    from .constructions import direct_product_ring

    start = time.perf_counter()
    report = VerifyReport("multiplicativity", 0, 0)
    pool = catalog_ring_pool(64)
    rng = random.Random(seed)
    tried = 0
    while report.instances < pairs and tried < 50 * pairs:
        tried += 1
        r1, r2 = rng.choice(pool), rng.choice(pool)
        if r1.order * r2.order > caps.order_cap:
            continue
        report.instances += 1
        product = direct_product_ring(r1, r2, caps)
        report.max_order = max(report.max_order, product.order)
        for poly in (COMMUTE, ANNIHILATE):
            lhs = pr_f_ring(product, poly, caps).value
            rhs = pr_f_ring(r1, poly, caps).value * pr_f_ring(r2, poly, caps).value
            if lhs != rhs:
                report.failures.append(Failure(
                    f"{product.name}: Pr_({poly}) = {lhs} != {rhs}", _witness(product)))
    report.wall_time = time.perf_counter() - start
    return report


def suite_thm21(caps: Caps = DEFAULT_CAPS, seed: int = 0) -> VerifyReport:
    """Both pointwise pipeline equalities: rings reach class-<=2 groups through
    circle(nring(R)) with the same Pr_c; class-<=2 groups reach strongly
    antisymmetric class-<=3 rings through commring(G) with Pr_c = Pr_ann.
    """
    from .constructions import circle_group, commutator_ring, nring

    start = time.perf_counter()
    report = VerifyReport("thm21", 0, 0)
    for ring in [r for r in catalog_ring_pool(40) if r.order <= 40]:
        report.instances += 1
        report.max_order = max(report.max_order, ring.order ** 2)
        circled = circle_group(nring(ring, caps), caps)
        series = lower_central_series(circled)
        if not (series.nilpotent and series.class_value <= 2):
            report.failures.append(Failure(
                f"{ring.name}: pipeline group has class {series.class_value}",
                _witness(ring)))
        lhs = pr_c_ring(ring, caps).value
        rhs = pr_c_group(circled).value
        if lhs != rhs:
            report.failures.append(Failure(
                f"{ring.name}: Pr_c(R) = {lhs} != {rhs} = Pr_c(circle(nring(R)))",
                _witness(ring)))
    for group in class2_group_pool(include_circles=False, caps=caps):
        report.instances += 1
        report.max_order = max(report.max_order, group.n)
        ring = commutator_ring(group, caps)
        lhs = pr_c_group(group).value
        rhs = pr_ann_ring(ring, caps).value
        if lhs != rhs:
            report.failures.append(Failure(
                f"{group.name}: Pr_c(G) = {lhs} != {rhs} = Pr_ann(commring(G))",
                _witness(group)))
    report.wall_time = time.perf_counter() - start
    return report


def suite_odd22(caps: Caps = DEFAULT_CAPS, seed: int = 0,
                order_cap: int = 81) -> VerifyReport:
    """Odd-order round trip through both constructions; zero failures expected."""
    start = time.perf_counter()
    trip = odd_round_trip(order_cap, caps)
    report = VerifyReport("odd22", trip.ring_instances + trip.group_instances,
                          trip.max_order,
                          [Failure(msg) for msg in trip.failures])
    report.wall_time = time.perf_counter() - start
    return report


_GATE_FAMILIES = (
    BilinearFamilySpec((2, 2), (2,), alternating=True),
    BilinearFamilySpec((2, 2), (2,), alternating=False),
    BilinearFamilySpec((2, 2, 2), (2,), alternating=True),
    BilinearFamilySpec((2, 2, 2), (2,), alternating=False),
    BilinearFamilySpec((3, 3), (3,), alternating=True),
    BilinearFamilySpec((3, 3), (3,), alternating=False),
)


def suite_gate32(caps: Caps = DEFAULT_CAPS, seed: int = 0) -> VerifyReport:
    """The commuting spectrum over the exhaustive (2,2) sweep and the bilinear
    families contains no value in [11/32, 1] outside the known list and never
    contains 1/2.
    """
    from fractions import Fraction

    start = time.perf_counter()
    report = VerifyReport("gate32", 0, 0)
    spectrum = spectrum_of(enumerate_general_rings((2, 2), caps=caps),
                           COMMUTE, "general(2,2)", caps)
    report.max_order = 4
    for spec in _GATE_FAMILIES:
        extra = spectrum_of(enumerate_bilinear_rings(spec, caps), COMMUTE,
                            f"bilinear{spec.v_invariants}/{spec.w_invariants}", caps)
        report.max_order = max(report.max_order, spec.order)
        spectrum = spectrum.merge(extra)
    report.instances = spectrum.total
    gate = gate_check_32(spectrum)
    for value, witness in gate.violations:
        report.failures.append(Failure(f"gate violation: {value} from {witness}"))
    if Fraction(1, 2) in spectrum.counts:
        report.failures.append(Failure("spectrum contains 1/2"))
    report.wall_time = time.perf_counter() - start
    return report


SUITES = {
    "lemma11": suite_lemma11,
    "lemma31": suite_lemma31,
    "lemma32": suite_lemma32,
    "lemma33": suite_lemma33,
    "malcev": suite_malcev,
    "multiplicativity": suite_multiplicativity,
    "thm21": suite_thm21,
    "odd22": suite_odd22,
    "gate32": suite_gate32,
}


def run_suite(name: str, caps: Caps = DEFAULT_CAPS, seed: int = 0,
              **overrides) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](caps=caps, seed=seed, **overrides)
