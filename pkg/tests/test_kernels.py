"""Backend parity: the numba and numpy kernel builds must agree exactly,
and the env flag must select the numpy fallback."""

import os
import subprocess
import sys

import numpy as np
import pytest

from spectra import kernels
from spectra.constructions import dihedral_group, heisenberg_group, ut3_ring, zn_ring
from spectra.core import validate_ring

needs_both = pytest.mark.skipif(
    "numba" not in kernels.BACKENDS, reason="numba backend unavailable")


def _ring_args(ring):
    nzi, nzj, nzv = ring.nonzero_sc()
    return ring.coords, ring.dmods, ring.strides, ring.sc, nzi, nzj, nzv


@needs_both
def test_commuting_count_parity():
    group = dihedral_group(6)
    n = group.n
    for r0, r1 in ((0, n), (3, 9), (0, 0)):
        a = kernels.BACKENDS["numpy"]["commuting_count"](group.table, r0, r1)
        b = kernels.BACKENDS["numba"]["commuting_count"](group.table, r0, r1)
        assert int(a) == int(b)


@needs_both
def test_conjugacy_count_parity():
    group = heisenberg_group(3)
    args = (group.table, group.inverses, group.identity)
    assert int(kernels.BACKENDS["numpy"]["conjugacy_count"](*args)) == \
        int(kernels.BACKENDS["numba"]["conjugacy_count"](*args))


@needs_both
def test_element_orders_parity():
    group = dihedral_group(5)
    a = kernels.BACKENDS["numpy"]["element_orders"](group.table, group.identity)
    b = kernels.BACKENDS["numba"]["element_orders"](group.table, group.identity)
    assert np.array_equal(np.asarray(a), np.asarray(b))


@needs_both
def test_assoc_witness_parity(nonassociative_loop):
    table = np.ascontiguousarray(nonassociative_loop.astype(np.int32))
    w_np = kernels.BACKENDS["numpy"]["assoc_witness"](table)
    w_nb = kernels.BACKENDS["numba"]["assoc_witness"](table)
    assert tuple(int(x) for x in w_np) == tuple(int(x) for x in w_nb)
    ok = heisenberg_group(2).table
    assert tuple(kernels.BACKENDS["numpy"]["assoc_witness"](ok))[0] == -1
    assert tuple(kernels.BACKENDS["numba"]["assoc_witness"](ok))[0] == -1


@needs_both
@pytest.mark.parametrize("builder", [lambda: ut3_ring(3), lambda: zn_ring(12)])
def test_mul_and_circle_table_parity(builder):
    ring = builder()
    n = ring.order
    for name in ("mul_table_block", "circle_table_block"):
        out_np = np.zeros((n, n), dtype=np.int32)
        out_nb = np.zeros((n, n), dtype=np.int32)
        kernels.BACKENDS["numpy"][name](out_np, *_ring_args(ring), 0, n)
        kernels.BACKENDS["numba"][name](out_nb, *_ring_args(ring), 0, n)
        assert np.array_equal(out_np, out_nb)


@needs_both
@pytest.mark.parametrize("poly", [(1, -1), (1, 0), (2, 3), (-1, 1)])
def test_pairs_f_zero_parity_including_negative_coefficients(poly):
    a, b = poly
    ring = ut3_ring(3)
    n = ring.order
    coords, dmods, strides, sc, nzi, nzj, nzv = _ring_args(ring)
    direct_np = kernels.BACKENDS["numpy"]["pairs_f_zero_direct"](
        coords, dmods, sc, nzi, nzj, nzv, a, b, 0, n)
    direct_nb = kernels.BACKENDS["numba"]["pairs_f_zero_direct"](
        coords, dmods, sc, nzi, nzj, nzv, a, b, 0, n)
    assert int(direct_np) == int(direct_nb)

    table = ring.product_table(4096)
    neg_a = ((-a * ring.coords) % ring.dmods @ ring.strides).astype(np.int32)
    b_map = ((b * ring.coords) % ring.dmods @ ring.strides).astype(np.int32)
    via_table = kernels.BACKENDS["numpy"]["pairs_f_zero_table"](table, neg_a, b_map, 0, n)
    via_table_nb = kernels.BACKENDS["numba"]["pairs_f_zero_table"](table, neg_a, b_map, 0, n)
    assert int(direct_np) == int(via_table) == int(via_table_nb)


@needs_both
def test_malcev_table_parity():
    ring = validate_ring((2, 3), np.zeros((2, 2, 2)))
    add_t = ring.addition_table()
    mul_t = ring.product_table(4096)
    n2 = ring.order ** 2
    out_np = np.zeros((n2, n2), dtype=np.int32)
    out_nb = np.zeros((n2, n2), dtype=np.int32)
    kernels.BACKENDS["numpy"]["malcev_table_block"](out_np, add_t, mul_t, 0, n2)
    kernels.BACKENDS["numba"]["malcev_table_block"](out_nb, add_t, mul_t, 0, n2)
    assert np.array_equal(out_np, out_nb)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, SPECTRA_NO_NUMBA="1")
    code = "from spectra import kernels; print(kernels.ACTIVE_BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("SPECTRA_THREADS", raising=False)
    assert kernels.worker_count() == 1
    monkeypatch.setenv("SPECTRA_THREADS", "5")
    assert kernels.worker_count() == 5


def test_partitioned_count_independent_of_workers(monkeypatch):
    group = dihedral_group(9)
    args = (group.table,)
    monkeypatch.delenv("SPECTRA_THREADS", raising=False)
    single = kernels.count_rows(kernels.commuting_count, args, group.n)
    monkeypatch.setenv("SPECTRA_THREADS", "3")
    assert kernels.count_rows(kernels.commuting_count, args, group.n) == single
    monkeypatch.setenv("SPECTRA_THREADS", "7")
    assert kernels.count_rows(kernels.commuting_count, args, group.n) == single


def test_partitioned_fill_independent_of_workers(monkeypatch):
    ring = ut3_ring(2)
    n = ring.order
    nzi, nzj, nzv = ring.nonzero_sc()
    args = (ring.coords, ring.dmods, ring.strides, ring.sc, nzi, nzj, nzv)
    monkeypatch.delenv("SPECTRA_THREADS", raising=False)
    base = np.zeros((n, n), dtype=np.int32)
    kernels.fill_rows(kernels.circle_table_block, base, args, n)
    monkeypatch.setenv("SPECTRA_THREADS", "4")
    threaded = np.zeros((n, n), dtype=np.int32)
    kernels.fill_rows(kernels.circle_table_block, threaded, args, n)
    assert np.array_equal(base, threaded)
