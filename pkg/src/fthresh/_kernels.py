"""Hot loops for sparse polynomial arithmetic over F_p.

Exponent vectors are packed into single int64 keys (mixed radix) by the
caller, so a product of two sparse polynomials becomes an outer sum of keys
plus an outer product of coefficients, followed by a sort-and-merge.

Two interchangeable backends implement each kernel:

* ``numba`` -- ``@njit`` loops, used when numba imports cleanly;
* ``numpy`` -- vectorized fallback.

Set ``FTHRESH_BACKEND=numpy`` to force the fallback (``numba`` forces the
jitted path and fails loudly if numba is missing).
"""

import os

import numpy as np

_requested = os.environ.get("FTHRESH_BACKEND", "").strip().lower()

try:
    if _requested == "numpy":
        raise ImportError("numba disabled by FTHRESH_BACKEND")
    import numba

    HAVE_NUMBA = True
except ImportError:
    if _requested == "numba":
        raise
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

# rows per chunk in the numpy divisibility scan; bounds the (rows, gens, nvars) temporary
_CHUNK_CELLS = 1 << 22
# key spans up to this size use a dense accumulator in the jitted product
_DENSE_SPAN = 1 << 22


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def mul_numpy(ka, ca, kb, cb, p):
    """Product of two packed polynomials; returns sorted keys and nonzero coefficients."""
    keys = np.add.outer(ka, kb).ravel()
    coefs = (np.multiply.outer(ca, cb) % p).ravel()
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    coefs = coefs[order]
    starts = np.flatnonzero(np.diff(keys)) + 1
    starts = np.concatenate((np.zeros(1, dtype=np.int64), starts))
    sums = np.add.reduceat(coefs, starts) % p
    mask = sums != 0
    return keys[starts][mask], sums[mask]


def all_divisible_numpy(exps, gens):
    """True iff every row of ``exps`` is componentwise >= some row of ``gens``."""
    m = exps.shape[0]
    if m == 0:
        return True
    if gens.shape[0] == 0:
        return False
    rows = max(1, _CHUNK_CELLS // max(1, gens.shape[0] * gens.shape[1]))
    for start in range(0, m, rows):
        block = exps[start:start + rows]
        hit = np.all(block[:, None, :] >= gens[None, :, :], axis=2).any(axis=1)
        if not hit.all():
            return False
    return True


def divisible_mask_numpy(exps, gens):
    """Boolean mask: row i of ``exps`` is divisible by some row of ``gens``."""
    m = exps.shape[0]
    out = np.zeros(m, dtype=np.bool_)
    if m == 0 or gens.shape[0] == 0:
        return out
    rows = max(1, _CHUNK_CELLS // max(1, gens.shape[0] * gens.shape[1]))
    for start in range(0, m, rows):
        block = exps[start:start + rows]
        out[start:start + rows] = np.all(block[:, None, :] >= gens[None, :, :], axis=2).any(axis=1)
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def mul_numba(ka, ca, kb, cb, p):
        m = ka.shape[0]
        k = kb.shape[0]
        if m == 0 or k == 0:
            return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
        lo = ka.min() + kb.min()
        span = ka.max() + kb.max() - lo + 1
        if span <= 16 * m * k and span <= _DENSE_SPAN:
            # dense accumulator over the key span; no sort needed
            acc = np.zeros(span, dtype=np.int64)
            # below 2^16 the unreduced sums cannot overflow int64
            lazy = p < 65536 and m * k < (1 << 30)
            for i in range(m):
                base = ka[i] - lo
                ci = ca[i]
                for j in range(k):
                    slot = base + kb[j]
                    if lazy:
                        acc[slot] += ci * cb[j]
                    else:
                        acc[slot] = (acc[slot] + ci * cb[j]) % p
            n = 0
            for s in range(span):
                if lazy:
                    acc[s] %= p
                if acc[s] != 0:
                    n += 1
            out_k = np.empty(n, dtype=np.int64)
            out_c = np.empty(n, dtype=np.int64)
            n = 0
            for s in range(span):
                if acc[s] != 0:
                    out_k[n] = s + lo
                    out_c[n] = acc[s]
                    n += 1
            return out_k, out_c
        keys = np.empty(m * k, dtype=np.int64)
        coefs = np.empty(m * k, dtype=np.int64)
        pos = 0
        for i in range(m):
            ki = ka[i]
            ci = ca[i]
            for j in range(k):
                keys[pos] = ki + kb[j]
                coefs[pos] = (ci * cb[j]) % p
                pos += 1
        order = np.argsort(keys)
        out_k = np.empty(m * k, dtype=np.int64)
        out_c = np.empty(m * k, dtype=np.int64)
        n = 0
        i = 0
        total = m * k
        while i < total:
            key = keys[order[i]]
            acc_c = 0
            while i < total and keys[order[i]] == key:
                acc_c += coefs[order[i]]
                i += 1
            acc_c %= p
            if acc_c != 0:
                out_k[n] = key
                out_c[n] = acc_c
                n += 1
        return out_k[:n].copy(), out_c[:n].copy()

    @numba.njit(cache=True, nogil=True)
    def _row_divisible(exps, row, gens):
        nv = exps.shape[1]
        for g in range(gens.shape[0]):
            ok = True
            for v in range(nv):
                if exps[row, v] < gens[g, v]:
                    ok = False
                    break
            if ok:
                return True
        return False

    @numba.njit(cache=True, nogil=True)
    def all_divisible_numba(exps, gens):
        for i in range(exps.shape[0]):
            if not _row_divisible(exps, i, gens):
                return False
        return True

    @numba.njit(cache=True, nogil=True)
    def divisible_mask_numba(exps, gens):
        out = np.zeros(exps.shape[0], dtype=np.bool_)
        for i in range(exps.shape[0]):
            out[i] = _row_divisible(exps, i, gens)
        return out

    mul = mul_numba
    all_divisible = all_divisible_numba
    divisible_mask = divisible_mask_numba
else:
    mul_numba = all_divisible_numba = divisible_mask_numba = None
    mul = mul_numpy
    all_divisible = all_divisible_numpy
    divisible_mask = divisible_mask_numpy


def warmup():
    """Compile (or load from cache) the jitted kernels with tiny inputs."""
    k = np.arange(3, dtype=np.int64)
    e = np.zeros((2, 2), dtype=np.int64)
    mul(k, k + 1, k, k + 1, 7)
    mul(k * 10**6, k + 1, k, k + 1, 7)
    all_divisible(e, e[:1])
    divisible_mask(e, e[:1])
