"""Core value types: exact rationals, table groups, structure-constant rings.

Elements of both structures are dense indices.  For a group of order n they
index rows of the Cayley table; for a ring over invariants (d_1, ..., d_k)
they are little-endian mixed-radix encodings of the coefficient vector
(x_1, ..., x_k), x_i in Z_{d_i}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import (
    IncompatibleOrderError,
    InvalidInvariantsError,
    MalformedVectorError,
    NoIdentityError,
    NotAssociativeError,
    NotClosedError,
    NotLatinError,
)

# Exact reduced fraction; the value type of every probability and spectrum member.
Rational = Fraction


def format_rational(value: Fraction) -> str:
    """Render as "p/q" in lowest terms, or a bare integer ("1" for unity)."""
    return str(value)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class PolySpec:
    """Integer coefficient pair (a, b) for the pairing a*xy + b*yx."""

    a: int
    b: int

    def __str__(self) -> str:
        return f"{self.a},{self.b}"

    @staticmethod
    def parse(text: str) -> "PolySpec":
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"poly must be 'a,b', got {text!r}")
        return PolySpec(int(parts[0]), int(parts[1]))


COMMUTE = PolySpec(1, -1)
ANNIHILATE = PolySpec(1, 0)


class FiniteGroup:
    """Finite group given by an n x n Cayley table over indices 0..n-1.

    The constructor only normalizes storage; use validate_group() to check
    the group axioms exhaustively.
    """

    __slots__ = ("n", "table", "identity", "name", "_inv")

    def __init__(self, table: np.ndarray, identity: int, name: str = ""):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise NotClosedError(f"table must be square, got shape {table.shape}")
        table.setflags(write=False)
        self.table = table
        self.n = int(table.shape[0])
        self.identity = int(identity)
        self.name = name
        self._inv = None

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @property
    def inverses(self) -> np.ndarray:
        if self._inv is None:
            inv = np.argmax(self.table == self.identity, axis=1).astype(np.int32)
            inv.setflags(write=False)
            self._inv = inv
        return self._inv

    def inverse(self, a: int) -> int:
        return int(self.inverses[a])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"FiniteGroup({label}, order={self.n})"


class FiniteRing:
    """Finite (possibly nonassociative) ring from additive invariants plus
    a structure-constant tensor sc[i][j] = e_i * e_j as a coefficient vector.
    """

    __slots__ = ("invariants", "k", "order", "dmods", "strides", "coords", "sc",
                 "name", "_mul_table", "_nz")

    def __init__(self, invariants, sc, name: str = ""):
        self.invariants = tuple(int(d) for d in invariants)
        self.k = len(self.invariants)
        self.order = math.prod(self.invariants)
        self.dmods = np.array(self.invariants, dtype=np.int64)
        strides = np.ones(self.k, dtype=np.int64)
        for i in range(1, self.k):
            strides[i] = strides[i - 1] * self.invariants[i - 1]
        self.strides = strides
        sc = np.ascontiguousarray(np.asarray(sc, dtype=np.int64).reshape(self.k, self.k, self.k))
        sc.setflags(write=False)
        self.sc = sc
        idx = np.arange(self.order, dtype=np.int64)
        coords = (idx[:, None] // strides[None, :]) % self.dmods[None, :] if self.k else \
            np.zeros((1, 0), dtype=np.int64)
        coords = np.ascontiguousarray(coords)
        coords.setflags(write=False)
        self.coords = coords
        self.name = name
        self._mul_table = None
        self._nz = None

    # -- element codec ------------------------------------------------------

    def encode(self, vec) -> int:
        vec = np.asarray(vec, dtype=np.int64) % self.dmods
        return int(vec @ self.strides)

    def decode(self, x: int) -> np.ndarray:
        return self.coords[x].copy()

    # -- elementwise arithmetic ----------------------------------------------

    def add(self, x: int, y: int) -> int:
        return self.encode(self.coords[x] + self.coords[y])

    def neg(self, x: int) -> int:
        return self.encode(-self.coords[x])

    def scalar(self, m: int, x: int) -> int:
        return self.encode(m * self.coords[x])

    def mul_vec(self, u, v) -> np.ndarray:
        """Bilinear product of two coefficient vectors, reduced mod invariants."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if self.k == 0:
            return np.zeros(0, dtype=np.int64)
        return np.einsum("i,j,ijm->m", u, v, self.sc) % self.dmods

    def mul(self, x: int, y: int) -> int:
        if self._mul_table is not None:
            return int(self._mul_table[x, y])
        return self.encode(self.mul_vec(self.coords[x], self.coords[y]))

    # -- dense helpers --------------------------------------------------------

    def nonzero_sc(self):
        """(nzi, nzj, nzv): generator pairs with nonzero product vectors."""
        if self._nz is None:
            if self.k == 0:
                pos = np.zeros((0, 2), dtype=np.int64)
            else:
                pos = np.argwhere(self.sc.any(axis=2))
            nzi = np.ascontiguousarray(pos[:, 0].astype(np.int64)) if pos.size else \
                np.zeros(0, dtype=np.int64)
            nzj = np.ascontiguousarray(pos[:, 1].astype(np.int64)) if pos.size else \
                np.zeros(0, dtype=np.int64)
            nzv = np.ascontiguousarray(self.sc[nzi, nzj]) if pos.size else \
                np.zeros((0, self.k), dtype=np.int64)
            self._nz = (nzi, nzj, nzv)
        return self._nz

    def product_table(self, threshold: int) -> np.ndarray | None:
        """Dense |R| x |R| product table, cached; None above the threshold."""
        if self.order > threshold:
            return None
        if self._mul_table is None:
            out = np.empty((self.order, self.order), dtype=np.int32)
            nzi, nzj, nzv = self.nonzero_sc()
            kernels.fill_rows(
                kernels.mul_table_block, out,
                (self.coords, self.dmods, self.strides, self.sc, nzi, nzj, nzv),
                self.order,
            )
            out.setflags(write=False)
            self._mul_table = out
        return self._mul_table

    def addition_table(self) -> np.ndarray:
        """Dense addition table (only sensible at small orders)."""
        n, k = self.order, self.k
        if k == 0:
            return np.zeros((1, 1), dtype=np.int32)
        out = np.empty((n, n), dtype=np.int32)
        step = max(1, (1 << 22) // max(1, n * k))
        for lo in range(0, n, step):
            hi = min(lo + step, n)
            sums = (self.coords[lo:hi, None, :] + self.coords[None, :, :]) % self.dmods
            out[lo:hi] = sums @ self.strides
        return out

    def vector_additive_order(self, vec) -> int:
        """Order of a coefficient vector in the additive group."""
        vec = np.asarray(vec, dtype=np.int64) % self.dmods
        order = 1
        for d, v in zip(self.invariants, vec):
            order = math.lcm(order, d // math.gcd(d, int(v)))
        return order

    def __repr__(self) -> str:
        label = self.name or "ring"
        return f"FiniteRing({label}, invariants={self.invariants})"


def trivial_ring(name: str = "trivial") -> FiniteRing:
    """The one-element ring (special-cased: validate_ring rejects d_i < 2)."""
    return FiniteRing((), np.zeros((0, 0, 0), dtype=np.int64), name=name)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_group(table, identity: int, name: str = "") -> FiniteGroup:
    """Check the group axioms exhaustively and return the validated group.

    Raises NotClosedError, NoIdentityError, NotLatinError or
    NotAssociativeError (with the witness triple).
    """
    group = FiniteGroup(table, identity, name=name)
    t = group.table
    n = group.n
    if not (0 <= group.identity < n):
        raise NoIdentityError(f"identity index {group.identity} out of range 0..{n - 1}")
    if t.size and (t.min() < 0 or t.max() >= n):
        pos = np.argwhere((t < 0) | (t >= n))[0]
        raise NotClosedError(
            f"entry table[{pos[0]}][{pos[1]}] = {int(t[pos[0], pos[1]])} out of range 0..{n - 1}"
        )
    idx = np.arange(n, dtype=np.int32)
    e = group.identity
    if not (np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)):
        raise NoIdentityError(f"index {e} is not a two-sided identity")
    row_bad = np.nonzero((np.sort(t, axis=1) != idx).any(axis=1))[0]
    if row_bad.size:
        raise NotLatinError(f"row {int(row_bad[0])} is not a permutation of 0..{n - 1}")
    col_bad = np.nonzero((np.sort(t, axis=0) != idx[:, None]).any(axis=0))[0]
    if col_bad.size:
        raise NotLatinError(f"column {int(col_bad[0])} is not a permutation of 0..{n - 1}")
    witness = kernels.assoc_witness(t)
    if witness[0] >= 0:
        i, j, k = (int(w) for w in witness)
        raise NotAssociativeError(
            f"(g{i} g{j}) g{k} != g{i} (g{j} g{k})", witness=(i, j, k)
        )
    return group


def validate_ring(invariants, sc, name: str = "") -> FiniteRing:
    """Check well-formedness and order compatibility of the structure constants.

    Raises InvalidInvariantsError, MalformedVectorError or
    IncompatibleOrderError.
    """
    invariants = tuple(int(d) for d in invariants)
    if not invariants:
        raise InvalidInvariantsError("invariants must be nonempty (minimum d_i is 2)")
    if any(d < 2 for d in invariants):
        raise InvalidInvariantsError(f"every invariant must be >= 2, got {invariants}")
    k = len(invariants)
    sc = np.asarray(sc, dtype=np.int64)
    if sc.shape != (k, k, k):
        raise MalformedVectorError(f"sc must have shape ({k},{k},{k}), got {sc.shape}")
    dmods = np.array(invariants, dtype=np.int64)
    if sc.size and ((sc < 0) | (sc >= dmods[None, None, :])).any():
        i, j, m = np.argwhere((sc < 0) | (sc >= dmods[None, None, :]))[0]
        raise MalformedVectorError(
            f"sc[{i}][{j}] coefficient {m} = {int(sc[i, j, m])} outside 0..{invariants[m] - 1}"
        )
    ring = FiniteRing(invariants, sc, name=name)
    for i in range(k):
        for j in range(k):
            divisor = math.gcd(invariants[i], invariants[j])
            order = ring.vector_additive_order(sc[i, j])
            if divisor % order != 0:
                raise IncompatibleOrderError(
                    f"additive order {order} of sc[{i}][{j}] does not divide "
                    f"gcd(d_{i}, d_{j}) = {divisor}",
                    position=(i, j), order=order, divisor=divisor,
                )
    return ring


# ---------------------------------------------------------------------------
# free-function operation aliases
# ---------------------------------------------------------------------------

def ring_mul(ring: FiniteRing, x: int, y: int) -> int:
    return ring.mul(x, y)


def ring_add(ring: FiniteRing, x: int, y: int) -> int:
    return ring.add(x, y)


def ring_neg(ring: FiniteRing, x: int) -> int:
    return ring.neg(x)


def group_op(group: FiniteGroup, a: int, b: int) -> int:
    return group.op(a, b)


def group_inv(group: FiniteGroup, a: int) -> int:
    return group.inverse(a)
