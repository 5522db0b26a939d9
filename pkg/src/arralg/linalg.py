"""Exact linear algebra over a :class:`FieldSpec`.

Dense helpers work on lists of lists.  :class:`SparseEchelon` keeps an
incrementally built echelon form of sparse rows (dicts column -> value) and is
the workhorse of the fixed-degree oracles.  Over prime fields the dense rank
and nullspace routines dispatch to :mod:`arralg.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Dict, List, Optional, Sequence, Tuple

import gmpy2
import numpy as np

from . import kernels
from .polycore.field import FieldSpec


def _copy(F: FieldSpec, rows) -> List[list]:
    return [[F.convert(x) for x in r] for r in rows]


def rref(F: FieldSpec, rows: Sequence[Sequence]) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = _copy(F, rows)
    if not A:
        return [], []
    ncols = len(A[0])
    piv: List[int] = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(x, inv) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                t = A[i][c]
                A[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], piv


def rank(F: FieldSpec, rows: Sequence[Sequence]) -> int:
    if not rows or not len(rows[0]):
        return 0
    if F.p:
        from . import kernels

        return kernels.rank_mod_p(rows, F.p)
    return len(rref(F, rows)[1])


def nullspace(F: FieldSpec, rows: Sequence[Sequence], ncols: Optional[int] = None) -> List[list]:
    """Basis of {v : A v = 0}."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(F, rows)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(R, piv):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def determinant(F: FieldSpec, M: Sequence[Sequence]):
    A = _copy(F, M)
    n = len(A)
    det = F.one
    for c in range(n):
        k = next((i for i in range(c, n) if A[i][c] != 0), None)
        if k is None:
            return F.zero
        if k != c:
            A[c], A[k] = A[k], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != 0:
                t = F.mul(A[i][c], inv)
                A[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(A[i], A[c])]
    return det


def inverse(F: FieldSpec, M: Sequence[Sequence]) -> List[list]:
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(_copy(F, M))]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def matmul(F: FieldSpec, A, B) -> List[list]:
    out = []
    for row in A:
        r = []
        for j in range(len(B[0])):
            s = F.zero
            for k, a in enumerate(row):
                if a != 0:
                    s = F.add(s, F.mul(a, B[k][j]))
            r.append(s)
        out.append(r)
    return out


def transpose(A) -> List[list]:
    return [list(c) for c in zip(*A)]


class SparseEchelon:
    """Incremental echelon form of sparse vectors.

    Each stored row has a distinct pivot (its smallest column) with value one.
    ``add`` reduces a vector against the stored rows and keeps it if a nonzero
    remainder is left.  ``reduce`` only reports the remainder.
    """

    def __init__(self, F: FieldSpec):
        self.F = F
        self.rows: Dict[int, Dict[int, object]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Dict[int, object]) -> Dict[int, object]:
        F = self.F
        p = F.p
        v = {k: x for k, x in vec.items() if x != 0}
        rows = self.rows
        # eliminate pivots in increasing column order
        done: Dict[int, object] = {}
        while v:
            c = min(v)
            x = v.pop(c)
            row = rows.get(c)
            if row is None:
                done[c] = x
                continue
            for k, y in row.items():
                if k == c:
                    continue
                t = v.get(k)
                if p:
                    nv = ((t or 0) - x * y) % p
                else:
                    nv = (t if t is not None else 0) - x * y
                if nv:
                    v[k] = nv
                elif t is not None:
                    del v[k]
        return done

    def add(self, vec: Dict[int, object]) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        inv = self.F.inv(r[c])
        self.rows[c] = {k: self.F.mul(x, inv) for k, x in r.items()}
        return True

    def contains(self, vec: Dict[int, object]) -> bool:
        return not self.reduce(vec)


# ---------------------------------------------------------------- multimodular span solving


def rational_reconstruct(a: int, N: int):
    """(num, den) with num/den = a mod N and |num|, den <= sqrt(N/2), or None."""
    a %= N
    bound = isqrt(N // 2)
    r0, r1 = N, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, s1) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return r1, s1


def _primes(start: int, count: int) -> List[int]:
    out = []
    q = start
    while len(out) < count:
        q = int(gmpy2.next_prime(q))
        out.append(q)
    return out


SOLVE_PRIMES = _primes(2 ** 30 + 2 ** 29, 64)
CHECK_PRIMES = _primes(2 ** 25, 256)


@dataclass
class SpanSolution:
    """Outcome of writing each target column as a combination of basis columns.

    ``coeffs[k]`` is None for a non-member, else a list of exact field
    elements (mpq over Q, ints over F_p), one per basis column.  ``verified``
    is set once B @ coeffs = targets has been proven exactly.
    """

    member: List[bool]
    coeffs: List[Optional[list]]
    primes: List[int]
    verified: bool


def _obj(A) -> np.ndarray:
    if isinstance(A, np.ndarray) and A.dtype == object:
        return A
    out = np.empty((len(A), len(A[0]) if len(A) else 0), dtype=object)
    for i, row in enumerate(A):
        out[i, :] = [int(x) for x in row]
    return out


def _mod_matrix(A, p: int) -> np.ndarray:
    return (_obj(A) % p).astype(np.int64)


def _solve_mod(B, T, p: int):
    nb = B.shape[1]
    aug = np.concatenate([B, T], axis=1)
    rk, piv, R = kernels.rref_mod_p(aug, p)
    piv = [int(c) for c in piv]
    basis_piv = [c for c in piv if c < nb]
    nbp = len(basis_piv)
    member = [not R[nbp:rk, nb + k].any() for k in range(T.shape[1])]
    sol = R[:nbp, nb:]
    return tuple(basis_piv), member, sol


def _check_exact(B_int, C_int, T_int, scale: List[int]) -> bool:
    """Prove B @ C = T * diag(scale) over Z by comparing modulo enough small primes."""
    B_int, C_int, T_int = _obj(B_int), _obj(C_int), _obj(T_int)
    maxB = int(np.abs(B_int).max()) if B_int.size else 0
    maxC = int(np.abs(C_int).max()) if C_int.size else 0
    maxT = int(np.abs(T_int).max()) if T_int.size else 0
    bound = 2 * (C_int.shape[0] * maxB * maxC + maxT * max(scale, default=1)) + 1
    prod = 1
    TS = T_int * np.array([int(x) for x in scale], dtype=object)[None, :]
    for q in CHECK_PRIMES:
        lhs = kernels.matmul_mod_p(_mod_matrix(B_int, q), _mod_matrix(C_int, q), q)
        if not np.array_equal(lhs, _mod_matrix(TS, q)):
            return False
        prod *= q
        if prod > bound:
            return True
    raise RuntimeError("exact check needs more primes than available")


def solve_span(F: FieldSpec, B, T) -> SpanSolution:
    """Solve B c_k = t_k for every target column t_k of T.

    B (rows x nb) and T (rows x nt) hold integers (over Q) or residues (over
    F_p).  Over F_p one elimination is exact.  Over Q the system is solved
    modulo word-size primes, lifted by CRT and rational reconstruction, and the
    lifted combination is proven by an exact integer identity check.  A
    non-member verdict over Q needs two primes agreeing on the pivot pattern.
    """
    rows = len(B)
    nb = len(B[0]) if rows else 0
    nt = len(T[0]) if rows else 0
    B, T = _obj(B), _obj(T)
    if F.p:
        p = F.p
        piv, member, sol = _solve_mod(_mod_matrix(B, p), _mod_matrix(T, p), p)
        coeffs = []
        for k in range(nt):
            if not member[k]:
                coeffs.append(None)
                continue
            c = [0] * nb
            for i, col in enumerate(piv):
                c[col] = int(sol[i, k])
            coeffs.append(c)
        C = [[coeffs[k][i] if coeffs[k] else 0 for k in range(nt)] for i in range(nb)]
        lhs = np.array([[sum(int(B[r][i]) * C[i][k] for i in range(nb)) % p for k in range(nt)] for r in range(rows)],
                       dtype=object).reshape(rows, nt)
        ok = all(lhs[r][k] == int(T[r][k]) % p for r in range(rows) for k in range(nt) if member[k])
        return SpanSolution(member, coeffs, [p], ok)
    best = None         # (rank, pivots) of the most trusted prime so far
    residues = None
    modulus = 1
    used: List[int] = []
    agree = 0
    last = None
    for p in SOLVE_PRIMES:
        piv, member, sol = _solve_mod(_mod_matrix(B, p), _mod_matrix(T, p), p)
        key = (len(piv), tuple(-c for c in piv))
        if best is None or key > best[0]:
            best = (key, piv, member)
            residues = [[int(x) for x in row] for row in sol]
            modulus = p
            used = [p]
            agree = 1
            last = None
            continue
        if key < best[0]:
            continue
        if member != best[2]:
            continue
        used.append(p)
        agree += 1
        new = []
        for old_row, row in zip(residues, sol):
            new.append([int(gmpy2.mpz(o) + modulus * (((int(x) - o) * pow(modulus, -1, p)) % p))
                        for o, x in zip(old_row, row)])
        residues = new
        modulus *= p
        piv_b, member_b = best[1], best[2]
        lifted = []
        failed = False
        cols = [k for k in range(nt) if member_b[k]]
        for row in residues:
            out = {}
            for k in cols:
                rr = rational_reconstruct(row[k], modulus)
                if rr is None:
                    failed = True
                    break
                out[k] = rr
            if failed:
                break
            lifted.append(out)
        if failed:
            continue
        if lifted != last:
            last = lifted
            continue
        # stable over two consecutive primes: prove it
        C_int = [[0] * len(cols) for _ in range(nb)]
        scale = []
        for j, k in enumerate(cols):
            den = 1
            for i in range(len(piv_b)):
                den = den * lifted[i][k][1] // gcd(den, lifted[i][k][1])
            scale.append(den)
            for i, col in enumerate(piv_b):
                num, d = lifted[i][k]
                C_int[col][j] = num * (den // d)
        T_sub = T[:, cols]
        if cols and not _check_exact(B, C_int, T_sub, scale):
            last = None
            continue
        coeffs: List[Optional[list]] = [None] * nt
        for j, k in enumerate(cols):
            coeffs[k] = [gmpy2.mpq(C_int[i][j], scale[j]) for i in range(nb)]
        return SpanSolution(list(member_b), coeffs, used, True)
    raise RuntimeError("multimodular solve did not stabilize")
