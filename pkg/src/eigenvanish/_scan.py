"""Hot kernel: stream t_k = Tr(alpha^k) for all k < q^n - 1 and histogram
(k mod p, t_k) pairs.

The trace sequence of powers of a generator satisfies the linear recurrence
given by the generator's minimal polynomial, so the scan is O(n) per step with
no polynomial multiplication. Two interchangeable backends: a numba-compiled
scalar loop (default when numba is importable) and a blocked pure-numpy path.
Selection: EIGENVANISH_BACKEND=numba|numpy, or the `backend` argument.
Both produce bit-identical count tables (asserted in the test suite).
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via EIGENVANISH_BACKEND
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


_BLOCK = 1 << 16


@njit(cache=True)
def _scan_scalar(rec, seed, total, p, q, counts):
    n = rec.shape[0]
    window = seed.copy()
    pos = 0
    m = 0
    for _ in range(total):
        counts[m, window[pos]] += 1
        acc = 0
        for j in range(n - pos):
            acc += rec[j] * window[pos + j]
        for j in range(pos):
            acc += rec[n - pos + j] * window[j]
        window[pos] = (-acc) % q
        pos += 1
        if pos == n:
            pos = 0
        m += 1
        if m == p:
            m = 0


def _companion(rec, q):
    n = rec.shape[0]
    mat = np.zeros((n, n), dtype=np.int64)
    mat[:-1, 1:] = np.eye(n - 1, dtype=np.int64)
    mat[-1] = (-rec) % q
    return mat


def _scan_blocked(rec, seed, total, p, q, counts):
    """Numpy path: advance the recurrence state a block at a time.

    With state s_k = (t_k .. t_{k+n-1}) and companion matrix C, row j of U is
    e_0^T C^j, so U @ s_k yields t_k .. t_{k+B-1} in one integer matmul.
    """
    n = rec.shape[0]
    block = max(_BLOCK, n)
    comp = _companion(rec, q)
    u = np.zeros((block, n), dtype=np.int64)
    u[0, 0] = 1
    for j in range(1, block):
        u[j] = u[j - 1] @ comp % q
    cpow = _mat_pow(comp, block, q)  # s_{k+block} = C^block s_k

    state = seed.astype(np.int64).copy()
    offsets = np.arange(block, dtype=np.int64)
    done = 0
    flat = counts.reshape(-1)
    while done < total:
        cnt = min(block, total - done)
        tvals = u[:cnt] @ state % q
        idx = (offsets[:cnt] + done) % p * q + tvals
        flat += np.bincount(idx, minlength=p * q)
        if cnt == block:
            state = cpow @ state % q
        done += cnt


def _mat_pow(mat, exponent, q):
    n = mat.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = mat % q
    while exponent:
        if exponent & 1:
            result = result @ base % q
        base = base @ base % q
        exponent >>= 1
    return result


def _scan_python(rec, seed, total, p, q, counts):
    """Plain-python reference used by the cross-checking tests."""
    n = len(rec)
    window = list(seed)
    m = 0
    for k in range(total):
        counts[m][window[k % n]] += 1
        acc = sum(rec[j] * window[(k + j) % n] for j in range(n))
        window[k % n] = (-acc) % q
        m += 1
        if m == p:
            m = 0


def default_backend() -> str:
    env = os.environ.get("EIGENVANISH_BACKEND", "").strip().lower()
    if env in ("numba", "numpy"):
        return env
    return "numba" if HAVE_NUMBA else "numpy"


def scan_counts(rec, seed, total: int, p: int, q: int, backend: str | None = None):
    """Histogram of (k mod p, Tr(alpha^k)) over k in [0, total)."""
    chosen = backend or default_backend()
    rec_arr = np.asarray(rec, dtype=np.int64)
    seed_arr = np.asarray(seed, dtype=np.int64)
    counts = np.zeros((p, q), dtype=np.int64)
    if chosen == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not installed")
        _scan_scalar(rec_arr, seed_arr, total, p, q, counts)
    elif chosen == "numpy":
        _scan_blocked(rec_arr, seed_arr, total, p, q, counts)
    elif chosen == "python":
        py_counts = [[0] * q for _ in range(p)]
        _scan_python(list(rec_arr), list(seed_arr), total, p, q, py_counts)
        counts = np.array(py_counts, dtype=np.int64)
    else:
        raise ValueError(f"unknown scan backend {chosen!r}")
    return counts
