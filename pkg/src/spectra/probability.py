"""Exact probability kernels: the order-squared counting loops.

All results are exact reduced fractions; counts are over the full ordered
pair space, so total is always order**2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .config import DEFAULT_CAPS, Caps
from .core import ANNIHILATE, COMMUTE, FiniteGroup, FiniteRing, PolySpec


@dataclass(frozen=True)
class ProbabilityResult:
    value: Fraction
    favorable: int
    total: int
    method: str  # "brute" | "class-count"

    def __post_init__(self):
        assert self.value == Fraction(self.favorable, self.total)


def pr_c_group(group: FiniteGroup, method: str = "brute") -> ProbabilityResult:
    """Fraction of ordered pairs that commute.

    "brute" scans the pair space; "class-count" counts conjugacy classes and
    uses k(G)/|G|.  The two must agree on every valid group.
    """
    n = group.n
    if method == "class-count":
        k = int(kernels.conjugacy_count(group.table, group.inverses, group.identity))
        favorable = k * n
    elif method == "brute":
        favorable = kernels.count_rows(kernels.commuting_count, (group.table,), n)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ProbabilityResult(Fraction(favorable, n * n), favorable, n * n, method)


def pr_f_ring(ring: FiniteRing, poly: PolySpec, caps: Caps = DEFAULT_CAPS) -> ProbabilityResult:
    """Fraction of ordered pairs (x, y) with a*xy + b*yx = 0."""
    n = ring.order
    if n == 1:
        return ProbabilityResult(Fraction(1), 1, 1, "brute")
    table = ring.product_table(caps.table_threshold)
    if table is not None:
        # a*u + b*v = 0  <=>  encode(-(a*u)) == encode(b*v)
        neg_a_map = ((-poly.a * ring.coords) % ring.dmods @ ring.strides).astype(np.int32)
        b_map = ((poly.b * ring.coords) % ring.dmods @ ring.strides).astype(np.int32)
        favorable = kernels.count_rows(
            kernels.pairs_f_zero_table, (table, neg_a_map, b_map), n)
    else:
        nzi, nzj, nzv = ring.nonzero_sc()
        favorable = kernels.count_rows(
            kernels.pairs_f_zero_direct,
            (ring.coords, ring.dmods, ring.sc, nzi, nzj, nzv, poly.a, poly.b), n)
    return ProbabilityResult(Fraction(favorable, n * n), favorable, n * n, "brute")


def pr_c_ring(ring: FiniteRing, caps: Caps = DEFAULT_CAPS) -> ProbabilityResult:
    return pr_f_ring(ring, COMMUTE, caps)


def pr_ann_ring(ring: FiniteRing, caps: Caps = DEFAULT_CAPS) -> ProbabilityResult:
    return pr_f_ring(ring, ANNIHILATE, caps)
