"""Matrix permanents.

``permanent_naive`` sums over all permutations and is kept as a test oracle.
``permanent_ryser`` is the production kernel: Ryser's inclusion-exclusion
formula walked in Gray-code order, so each subset differs from the previous
one by a single column and the row sums update in O(n).

The subset index range ``[0, 2**n)`` is cut into contiguous blocks. Each
block is seeded with the row sums of its first Gray code word and
accumulated independently; block partials are added in index order. The
result therefore depends on the block size only, never on the number of
worker threads.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from .errors import SizeLimitError

NAIVE_MAX_DIM = 10
COMPENSATE_FROM = 20
DEFAULT_BLOCK_BITS = 16
ZERO_RTOL = 1e-12


def _square(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError("permanent of an empty matrix is not supported")
    return np.ascontiguousarray(a)


def permanent_naive(m) -> complex:
    """Sum of ``prod_i M[i, s(i)]`` over every permutation ``s``."""
    a = _square(m)
    n = a.shape[0]
    if n > NAIVE_MAX_DIM:
        raise SizeLimitError(f"permanent_naive is limited to dim <= {NAIVE_MAX_DIM}, got {n}")
    rows = np.arange(n)
    total = 0j
    perms = itertools.permutations(range(n))
    while True:
        chunk = np.array(list(itertools.islice(perms, 40320)), dtype=np.intp)
        if chunk.size == 0:
            break
        total += complex(np.prod(a[rows, chunk], axis=1).sum())
    return total


@numba.njit(cache=True, nogil=True)
def _ryser_block(a, start, stop, compensated):
    n = a.shape[0]
    rowsum = np.zeros(n, dtype=np.complex128)
    g = start ^ (start >> 1)
    for j in range(n):
        if (g >> j) & 1:
            for i in range(n):
                rowsum[i] += a[i, j]
    sre = 0.0
    sim = 0.0
    cre = 0.0
    cim = 0.0
    idx = start
    while idx < stop:
        if idx > start:
            # bit flipped between gray(idx-1) and gray(idx) is the lowest set bit of idx
            j = 0
            t = idx
            while (t & 1) == 0:
                t >>= 1
                j += 1
            if (g >> j) & 1:
                for i in range(n):
                    rowsum[i] -= a[i, j]
            else:
                for i in range(n):
                    rowsum[i] += a[i, j]
            g ^= 1 << j
        prod = 1.0 + 0.0j
        for i in range(n):
            prod *= rowsum[i]
        # (-1)^|S| with |S| = popcount(g)
        c = 0
        t = g
        while t:
            t &= t - 1
            c += 1
        if c & 1:
            prod = -prod
        if compensated:
            # Neumaier summation, real and imaginary parts separately
            x = prod.real
            s = sre + x
            if abs(sre) >= abs(x):
                cre += (sre - s) + x
            else:
                cre += (x - s) + sre
            sre = s
            x = prod.imag
            s = sim + x
            if abs(sim) >= abs(x):
                cim += (sim - s) + x
            else:
                cim += (x - s) + sim
            sim = s
        else:
            sre += prod.real
            sim += prod.imag
        idx += 1
    return complex(sre + cre, sim + cim)


def permanent_ryser(
    m,
    *,
    workers: int = 1,
    block_bits: int = DEFAULT_BLOCK_BITS,
    compensated: bool | None = None,
) -> complex:
    """Permanent by Ryser's formula with Gray-code subset iteration.

    Parameters
    ----------
    m : array_like
        Square complex matrix.
    workers : int
        Threads used to evaluate blocks. Does not change the result.
    block_bits : int
        Blocks span ``2**block_bits`` subsets.
    compensated : bool, optional
        Use compensated summation. Defaults to on for ``dim >= 20``.
    """
    a = _square(m)
    n = a.shape[0]
    if compensated is None:
        compensated = n >= COMPENSATE_FROM
    total_subsets = 1 << n
    size = 1 << min(block_bits, n)
    starts = range(0, total_subsets, size)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda s: _ryser_block(a, s, s + size, compensated), starts))
    else:
        parts = [_ryser_block(a, s, s + size, compensated) for s in starts]
    total = math.fsum(p.real for p in parts) + 1j * math.fsum(p.imag for p in parts)
    return complex(total if n % 2 == 0 else -total)


@dataclass(frozen=True)
class PermanentResult:
    value: complex
    numerically_zero: bool


def permanent(m, **kwargs) -> PermanentResult:
    """Ryser permanent plus a flag for results indistinguishable from zero.

    A value is flagged when ``|per| < 1e-12 * ||M||_F``; the value itself is
    returned unchanged.
    """
    a = _square(m)
    value = permanent_ryser(a, **kwargs)
    return PermanentResult(value, abs(value) < ZERO_RTOL * float(np.linalg.norm(a)))
