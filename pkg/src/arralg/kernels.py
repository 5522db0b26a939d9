"""Hot loops for modular linear algebra and monomial filtering.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy version.
The environment variable ``ARRALG_KERNELS`` picks the path (``numba``, the
default, or ``numpy``).  The numba path falls back to numpy when numba cannot
be imported.  Moduli must stay below 2**31 so that products fit in int64.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba as nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    nb = None

njit_kwargs = {
    "nogil": True,
    "cache": True,
}


def backend() -> str:
    want = os.environ.get("ARRALG_KERNELS", "numba").strip().lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"ARRALG_KERNELS must be 'numba' or 'numpy', got {want!r}")
    if want == "numba" and nb is None:
        return "numpy"
    return want


# ---------------------------------------------------------------- numpy path


def echelon_mod_p_np(A: np.ndarray, p: int):
    """In-place row echelon form mod p. Returns (rank, pivot columns)."""
    A %= p
    nrows, ncols = A.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1:, c].copy()
        idx = np.nonzero(below)[0]
        if idx.size:
            rows = r + 1 + idx
            A[rows] = (A[rows] - (below[idx, None] * A[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return r, np.array(pivots, dtype=np.int64)


def divisible_mask_np(monos: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """mask[i] is True when some row of ``gens`` divides row i of ``monos``."""
    if gens.shape[0] == 0 or monos.shape[0] == 0:
        return np.zeros(monos.shape[0], dtype=np.bool_)
    out = np.zeros(monos.shape[0], dtype=np.bool_)
    for g in gens:
        out |= np.all(monos >= g[None, :], axis=1)
    return out


def rref_mod_p_np(A: np.ndarray, p: int):
    """In-place reduced row echelon form mod p. Returns (rank, pivot columns)."""
    r, piv = echelon_mod_p_np(A, p)
    for k in range(r - 1, -1, -1):
        c = piv[k]
        above = A[:k, c].copy()
        idx = np.nonzero(above)[0]
        if idx.size:
            A[idx] = (A[idx] - (above[idx, None] * A[k][None, :]) % p) % p
    return r, piv


def matmul_mod_p_np(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """A @ B mod p for p < 2**26, accumulating in int64 row by row."""
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        col = A[:, k]
        nz = np.nonzero(col)[0]
        if nz.size:
            out[nz] = (out[nz] + col[nz, None] * B[k][None, :]) % p
    return out


# ---------------------------------------------------------------- numba path

if nb is not None:

    @nb.njit(**njit_kwargs)
    def _echelon_mod_p_nb(A, p):
        nrows, ncols = A.shape
        for i in range(nrows):
            for j in range(ncols):
                A[i, j] = A[i, j] % p
        pivots = np.empty(min(nrows, ncols), dtype=np.int64)
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            k = -1
            for i in range(r, nrows):
                if A[i, c] != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != r:
                for j in range(ncols):
                    t = A[r, j]
                    A[r, j] = A[k, j]
                    A[k, j] = t
            # modular inverse by extended Euclid
            a = A[r, c]
            t0, t1, r0, r1 = 0, 1, p, a
            while r1 != 0:
                q = r0 // r1
                t0, t1 = t1, t0 - q * t1
                r0, r1 = r1, r0 - q * r1
            inv = t0 % p
            for j in range(c, ncols):
                A[r, j] = (A[r, j] * inv) % p
            for i in range(r + 1, nrows):
                f = A[i, c]
                if f != 0:
                    for j in range(c, ncols):
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r]

    @nb.njit(**njit_kwargs)
    def _rref_mod_p_nb(A, p):
        r, piv = _echelon_mod_p_nb(A, p)
        ncols = A.shape[1]
        for k in range(r - 1, -1, -1):
            c = piv[k]
            for i in range(k):
                f = A[i, c]
                if f != 0:
                    for j in range(c, ncols):
                        A[i, j] = (A[i, j] - f * A[k, j]) % p
        return r, piv

    @nb.njit(**njit_kwargs)
    def _matmul_mod_p_nb(A, B, p):
        n, m = A.shape
        q = B.shape[1]
        out = np.zeros((n, q), dtype=np.int64)
        for i in range(n):
            for k in range(m):
                a = A[i, k]
                if a != 0:
                    for j in range(q):
                        out[i, j] = (out[i, j] + a * B[k, j]) % p
        return out

    @nb.njit(**njit_kwargs)
    def _divisible_mask_nb(monos, gens):
        m, n = monos.shape
        g = gens.shape[0]
        out = np.zeros(m, dtype=np.bool_)
        for i in range(m):
            for k in range(g):
                ok = True
                for j in range(n):
                    if monos[i, j] < gens[k, j]:
                        ok = False
                        break
                if ok:
                    out[i] = True
                    break
        return out


# ---------------------------------------------------------------- dispatch


def echelon_mod_p(A, p: int):
    A = np.array(A, dtype=np.int64)
    if A.ndim != 2 or A.size == 0:
        return 0, np.zeros(0, dtype=np.int64), A
    if backend() == "numba":
        r, piv = _echelon_mod_p_nb(A, np.int64(p))
    else:
        r, piv = echelon_mod_p_np(A, p)
    return r, piv, A


def rref_mod_p(A, p: int):
    """Reduced row echelon form mod p: (rank, pivot columns, matrix)."""
    A = np.array(A, dtype=np.int64)
    if A.ndim != 2 or A.size == 0:
        return 0, np.zeros(0, dtype=np.int64), A
    if backend() == "numba":
        r, piv = _rref_mod_p_nb(A, np.int64(p))
    else:
        r, piv = rref_mod_p_np(A, p)
    return r, piv, A


def matmul_mod_p(A, B, p: int) -> np.ndarray:
    if p >= 2 ** 26:
        raise ValueError("matmul_mod_p needs p < 2**26")
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    if backend() == "numba":
        return _matmul_mod_p_nb(A, B, np.int64(p))
    return matmul_mod_p_np(A, B, p)


def rank_mod_p(rows, p: int) -> int:
    return echelon_mod_p(rows, p)[0]


def divisible_mask(monos, gens) -> np.ndarray:
    monos = np.asarray(monos, dtype=np.int64).reshape(len(monos), -1) if len(monos) else np.zeros((0, 1), np.int64)
    gens = np.asarray(gens, dtype=np.int64).reshape(len(gens), -1) if len(gens) else np.zeros((0, monos.shape[1]), np.int64)
    if backend() == "numba":
        return _divisible_mask_nb(monos, gens)
    return divisible_mask_np(monos, gens)
