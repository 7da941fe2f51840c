"""Hot counting and table-building kernels, with numba and pure-numpy backends.

Every kernel exists twice: a numba ``@njit`` build (fast path) and a pure-numpy
build (fallback).  The active backend is picked once at import time: numba is
used when it imports cleanly, unless the environment variable SPECTRA_NO_NUMBA
is set to anything other than "" or "0".  Both backends are kept importable in
``BACKENDS`` so tests can assert parity and the benchmark can time them
head-to-head.

Conventions shared by all kernels:
  - group Cayley tables are C-contiguous int32 arrays of shape (n, n)
  - ring elements are mixed-radix indices over ``invariants``; ``coords`` is
    the int64 (n, k) table of coefficient vectors, ``dmods`` the int64 (k,)
    moduli and ``strides`` the int64 (k,) little-endian encoding strides
  - ``nzi/nzj/nzv`` list the (i, j) generator pairs with a nonzero
    structure-constant vector and those vectors, so sparse multiplications
    skip zero terms
  - counting kernels take a row range [r0, r1) so the driver can partition
    work across threads; integer partial counts merge by addition, which
    keeps results independent of the partitioning.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_ENV_FLAG = "SPECTRA_NO_NUMBA"
_BLOCK = 64  # row block for the numpy table builders; bounds peak memory


def _want_numba() -> bool:
    if os.environ.get(_ENV_FLAG, "0") not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USE_NUMBA = _want_numba()


def worker_count() -> int:
    """Worker count for partitioned kernels; SPECTRA_THREADS overrides (default 1)."""
    raw = os.environ.get("SPECTRA_THREADS", "").strip()
    if not raw:
        return 1
    return max(1, int(raw))


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def commuting_count_numpy(table, r0, r1):
    return int(np.count_nonzero(table[r0:r1, :] == table[:, r0:r1].T))


def conjugacy_count_numpy(table, inv, identity):
    n = table.shape[0]
    visited = np.zeros(n, dtype=bool)
    classes = 0
    for a in range(n):
        if visited[a]:
            continue
        classes += 1
        visited[table[inv, table[a, :]]] = True  # g^-1 (a g) over all g
    return classes


def element_orders_numpy(table, identity):
    n = table.shape[0]
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    power = 1
    while True:
        hit = (cur == identity) & (orders == 0)
        orders[hit] = power
        if orders.all():
            return orders
        cur = table[cur, idx]
        power += 1


def assoc_witness_numpy(table):
    n = table.shape[0]
    for i in range(n):
        left = table[table[i, :], :]   # (i j) k
        right = table[i][table]        # i (j k)
        if not np.array_equal(left, right):
            j, k = np.argwhere(left != right)[0]
            return (i, int(j), int(k))
    return (-1, -1, -1)


def _encode_block(vecs, dmods, strides):
    vecs %= dmods
    return (vecs @ strides).astype(np.int32)


def mul_table_block_numpy(out, coords, dmods, strides, sc, nzi, nzj, nzv, r0, r1):
    n, k = coords.shape
    if k == 0:
        out[r0:r1] = 0
        return
    for b0 in range(r0, r1, _BLOCK):
        b1 = min(b0 + _BLOCK, r1)
        # rows[a][j, m] = sum_i coords[a, i] * sc[i, j, m]
        rows = np.einsum("ai,ijm->ajm", coords[b0:b1], sc)
        prod = np.matmul(coords[None, :, :], rows)  # (B, n, k), entry [a, b, m]
        out[b0:b1] = _encode_block(prod, dmods, strides)


def circle_table_block_numpy(out, coords, dmods, strides, sc, nzi, nzj, nzv, r0, r1):
    n, k = coords.shape
    if k == 0:
        out[r0:r1] = 0
        return
    for b0 in range(r0, r1, _BLOCK):
        b1 = min(b0 + _BLOCK, r1)
        rows = np.einsum("ai,ijm->ajm", coords[b0:b1], sc)
        prod = np.matmul(coords[None, :, :], rows)
        prod += coords[b0:b1, None, :]
        prod += coords[None, :, :]
        out[b0:b1] = _encode_block(prod, dmods, strides)


def pairs_f_zero_table_numpy(ptable, neg_a_map, b_map, r0, r1):
    return int(np.count_nonzero(neg_a_map[ptable[r0:r1, :]] == b_map[ptable[:, r0:r1].T]))


def pairs_f_zero_direct_numpy(coords, dmods, sc, nzi, nzj, nzv, a, b, r0, r1):
    n, k = coords.shape
    if k == 0:
        return (r1 - r0) * n
    count = 0
    for b0 in range(r0, r1, _BLOCK):
        b1 = min(b0 + _BLOCK, r1)
        rows_xy = np.einsum("ai,ijm->ajm", coords[b0:b1], sc)
        rows_yx = np.einsum("aj,ijm->aim", coords[b0:b1], sc)
        xy = np.matmul(coords[None, :, :], rows_xy)  # [x, y, m] = (x*y)_m
        yx = np.matmul(coords[None, :, :], rows_yx)  # [x, y, m] = (y*x)_m
        vals = (a * xy + b * yx) % dmods
        count += int(np.count_nonzero(np.all(vals == 0, axis=2)))
    return count


def malcev_table_block_numpy(out, add_t, mul_t, r0, r1):
    n = add_t.shape[0]
    for g in range(r0, r1):
        a, b = divmod(g, n)
        first = add_t[a, :].astype(np.int64) * n          # (c,)
        second = add_t[add_t[mul_t[a, :], b], :]          # (c, e) -> a*c + b + e
        out[g] = (first[:, None] + second).reshape(-1)


_NUMPY_IMPLS = {
    "commuting_count": commuting_count_numpy,
    "conjugacy_count": conjugacy_count_numpy,
    "element_orders": element_orders_numpy,
    "assoc_witness": assoc_witness_numpy,
    "mul_table_block": mul_table_block_numpy,
    "circle_table_block": circle_table_block_numpy,
    "pairs_f_zero_table": pairs_f_zero_table_numpy,
    "pairs_f_zero_direct": pairs_f_zero_direct_numpy,
    "malcev_table_block": malcev_table_block_numpy,
}


# ---------------------------------------------------------------------------
# numba backend (plain-python sources, jitted below)
# ---------------------------------------------------------------------------

def _commuting_count_py(table, r0, r1):
    n = table.shape[0]
    count = 0
    for a in range(r0, r1):
        for b in range(n):
            if table[a, b] == table[b, a]:
                count += 1
    return count


def _conjugacy_count_py(table, inv, identity):
    n = table.shape[0]
    visited = np.zeros(n, dtype=np.uint8)
    classes = 0
    for a in range(n):
        if visited[a]:
            continue
        classes += 1
        for g in range(n):
            visited[table[inv[g], table[a, g]]] = 1
    return classes


def _element_orders_py(table, identity):
    n = table.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    for a in range(n):
        x = a
        power = 1
        while x != identity:
            x = table[x, a]
            power += 1
        orders[a] = power
    return orders


def _assoc_witness_py(table):
    n = table.shape[0]
    for i in range(n):
        for j in range(n):
            ij = table[i, j]
            for k in range(n):
                if table[ij, k] != table[i, table[j, k]]:
                    return (i, j, k)
    return (-1, -1, -1)


def _mul_table_block_py(out, coords, dmods, strides, sc, nzi, nzj, nzv, r0, r1):
    n, k = coords.shape
    terms = nzi.shape[0]
    acc = np.zeros(k, dtype=np.int64)
    for a in range(r0, r1):
        for b in range(n):
            for m in range(k):
                acc[m] = 0
            for t in range(terms):
                ca = coords[a, nzi[t]]
                if ca == 0:
                    continue
                cb = coords[b, nzj[t]]
                if cb == 0:
                    continue
                w = ca * cb
                for m in range(k):
                    acc[m] += w * nzv[t, m]
            idx = 0
            for m in range(k):
                v = acc[m] % dmods[m]
                if v < 0:
                    v += dmods[m]
                idx += v * strides[m]
            out[a, b] = idx


def _circle_table_block_py(out, coords, dmods, strides, sc, nzi, nzj, nzv, r0, r1):
    n, k = coords.shape
    terms = nzi.shape[0]
    acc = np.zeros(k, dtype=np.int64)
    for a in range(r0, r1):
        for b in range(n):
            for m in range(k):
                acc[m] = coords[a, m] + coords[b, m]
            for t in range(terms):
                ca = coords[a, nzi[t]]
                if ca == 0:
                    continue
                cb = coords[b, nzj[t]]
                if cb == 0:
                    continue
                w = ca * cb
                for m in range(k):
                    acc[m] += w * nzv[t, m]
            idx = 0
            for m in range(k):
                v = acc[m] % dmods[m]
                if v < 0:
                    v += dmods[m]
                idx += v * strides[m]
            out[a, b] = idx


def _pairs_f_zero_table_py(ptable, neg_a_map, b_map, r0, r1):
    n = ptable.shape[0]
    count = 0
    for x in range(r0, r1):
        for y in range(n):
            if neg_a_map[ptable[x, y]] == b_map[ptable[y, x]]:
                count += 1
    return count


def _pairs_f_zero_direct_py(coords, dmods, sc, nzi, nzj, nzv, a, b, r0, r1):
    n, k = coords.shape
    terms = nzi.shape[0]
    xy = np.zeros(k, dtype=np.int64)
    yx = np.zeros(k, dtype=np.int64)
    count = 0
    for x in range(r0, r1):
        for y in range(n):
            for m in range(k):
                xy[m] = 0
                yx[m] = 0
            for t in range(terms):
                i = nzi[t]
                j = nzj[t]
                cxi = coords[x, i]
                cyj = coords[y, j]
                if cxi != 0 and cyj != 0:
                    w = cxi * cyj
                    for m in range(k):
                        xy[m] += w * nzv[t, m]
                cyi = coords[y, i]
                cxj = coords[x, j]
                if cyi != 0 and cxj != 0:
                    w = cyi * cxj
                    for m in range(k):
                        yx[m] += w * nzv[t, m]
            ok = True
            for m in range(k):
                v = (a * xy[m] + b * yx[m]) % dmods[m]
                if v < 0:
                    v += dmods[m]
                if v != 0:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def _malcev_table_block_py(out, add_t, mul_t, r0, r1):
    n = add_t.shape[0]
    for g in range(r0, r1):
        a = g // n
        b = g - a * n
        for c in range(n):
            first = add_t[a, c] * n
            ac_b = add_t[mul_t[a, c], b]
            for e in range(n):
                out[g, c * n + e] = first + add_t[ac_b, e]


_PY_SOURCES = {
    "commuting_count": _commuting_count_py,
    "conjugacy_count": _conjugacy_count_py,
    "element_orders": _element_orders_py,
    "assoc_witness": _assoc_witness_py,
    "mul_table_block": _mul_table_block_py,
    "circle_table_block": _circle_table_block_py,
    "pairs_f_zero_table": _pairs_f_zero_table_py,
    "pairs_f_zero_direct": _pairs_f_zero_direct_py,
    "malcev_table_block": _malcev_table_block_py,
}

BACKENDS: dict[str, dict] = {"numpy": _NUMPY_IMPLS}

if USE_NUMBA:
    from numba import njit

    _NUMBA_IMPLS = {
        name: njit(cache=True, nogil=True)(fn) for name, fn in _PY_SOURCES.items()
    }
    BACKENDS["numba"] = _NUMBA_IMPLS

ACTIVE_BACKEND = "numba" if USE_NUMBA else "numpy"
_ACTIVE = BACKENDS[ACTIVE_BACKEND]

commuting_count = _ACTIVE["commuting_count"]
conjugacy_count = _ACTIVE["conjugacy_count"]
element_orders = _ACTIVE["element_orders"]
assoc_witness = _ACTIVE["assoc_witness"]
mul_table_block = _ACTIVE["mul_table_block"]
circle_table_block = _ACTIVE["circle_table_block"]
pairs_f_zero_table = _ACTIVE["pairs_f_zero_table"]
pairs_f_zero_direct = _ACTIVE["pairs_f_zero_direct"]
malcev_table_block = _ACTIVE["malcev_table_block"]


# ---------------------------------------------------------------------------
# partitioned drivers
# ---------------------------------------------------------------------------

def _chunks(n: int, workers: int) -> list[tuple[int, int]]:
    workers = min(workers, n) if n else 1
    step = -(-n // workers)
    return [(lo, min(lo + step, n)) for lo in range(0, n, step)]


def count_rows(fn, args: tuple, n: int) -> int:
    """Sum fn(*args, r0, r1) over a row partition of [0, n)."""
    workers = worker_count()
    if workers <= 1 or n < 2 * workers:
        return int(fn(*args, 0, n))
    parts = _chunks(n, workers)
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        futs = [pool.submit(fn, *args, lo, hi) for lo, hi in parts]
        return int(sum(f.result() for f in futs))


def fill_rows(fn, out, args: tuple, n: int) -> None:
    """Run fn(out, *args, r0, r1) over a row partition; slices are disjoint."""
    workers = worker_count()
    if workers <= 1 or n < 2 * workers:
        fn(out, *args, 0, n)
        return
    parts = _chunks(n, workers)
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        futs = [pool.submit(fn, out, *args, lo, hi) for lo, hi in parts]
        for f in futs:
            f.result()
