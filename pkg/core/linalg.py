"""
Dense exact linear algebra over a prime field F_p.

Matrices are ``numpy`` int64 arrays holding canonical representatives in
``[0, p)`` with ``p <= 2**31 - 1``.  Under that bound the product of two
entries fits in int64, so elementwise row operations never overflow; matrix
products split the right factor into 16-bit halves to keep every partial
sum below 2**63.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

_HALF_BITS = 16
_HALF_MASK = (1 << _HALF_BITS) - 1


def mod_p(A, p: int) -> np.ndarray:
    """Reduce *A* to canonical representatives as an int64 array."""
    return np.asarray(np.asarray(A, dtype=np.int64) % p, dtype=np.int64)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Product ``A @ B`` over F_p without int64 overflow."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    if A.shape[1] >= (1 << _HALF_BITS):
        raise ValueError("inner dimension too large for split multiplication")
    lo = A @ (B & _HALF_MASK)
    hi = (A @ (B >> _HALF_BITS)) % p
    return ((hi << _HALF_BITS) + lo % p) % p


def rref_mod(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p.  Returns ``(R, pivot_cols)``."""
    R = mod_p(A, p).copy()
    m, n = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r]) % p) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod(A: np.ndarray, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref_mod(A, p)[1])


def nullspace_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace of *A*; the columns of the result form a basis."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n)
    R, pivots = rref_mod(A, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = zeros(n, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-R[row, f]) % p
    return basis


def column_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Columns of *A* forming a basis of its column space."""
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return zeros(A.shape[0], 0)
    _, pivots = rref_mod(A, p)
    return mod_p(A[:, pivots], p)


def complement_basis(U: np.ndarray, p: int) -> np.ndarray:
    """Standard basis vectors completing the independent columns of *U*."""
    n = U.shape[0]
    if U.shape[1] == 0:
        return identity(n)
    _, pivots = rref_mod(U.T, p)
    rest = [j for j in range(n) if j not in set(pivots)]
    return identity(n)[:, rest]


def solve_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Solve ``A X = B`` for *A* of full column rank; raises if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    m, n = A.shape
    aug = np.concatenate([A, B], axis=1)
    R, pivots = rref_mod(aug, p)
    if any(pc >= n for pc in pivots) or len(pivots) < n:
        raise ValueError("system has no unique solution over F_p")
    return R[:n, n:].copy()


def inv_mod_mat(A: np.ndarray, p: int) -> np.ndarray:
    """Gauss-Jordan inverse over F_p.  Raises ValueError if singular."""
    n = A.shape[0]
    if n == 0:
        return zeros(0, 0)
    aug = np.concatenate([mod_p(A, p), identity(n)], axis=1)
    R, _ = rref_mod(aug, p)
    if not np.array_equal(R[:, :n], identity(n)):
        raise ValueError("matrix not invertible mod p")
    return R[:, n:].copy()


def is_invertible(A: np.ndarray, p: int) -> bool:
    A = np.asarray(A)
    if A.shape[0] != A.shape[1]:
        return False
    return rank_mod(A, p) == A.shape[0]


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


# ---------------------------------------------------------------------------
#  Polynomials of matrices
# ---------------------------------------------------------------------------

def _poly_mul_linear(poly: List[int], a: int, p: int) -> List[int]:
    """Multiply a low-first coefficient list by ``(x - a)``."""
    out = [0] * (len(poly) + 1)
    for i, c in enumerate(poly):
        out[i + 1] = (out[i + 1] + c) % p
        out[i] = (out[i] - a * c) % p
    return out


def _hessenberg(A: np.ndarray, p: int) -> np.ndarray:
    H = mod_p(A, p).copy()
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.nonzero(H[m:, m - 1])[0]
        if nz.size == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        inv = pow(int(H[m, m - 1]), p - 2, p)
        for j in range(m + 1, n):
            u = int(H[j, m - 1]) * inv % p
            if u:
                H[j] = (H[j] - u * H[m]) % p
                H[:, m] = (H[:, m] + u * H[:, j]) % p
    return H


def charpoly_mod(A: np.ndarray, p: int) -> List[int]:
    """Monic characteristic polynomial, coefficients highest degree first."""
    n = A.shape[0]
    H = _hessenberg(A, p)
    polys: List[List[int]] = [[1]]
    for k in range(n):
        pk = _poly_mul_linear(polys[k], int(H[k, k]), p)
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * int(H[i + 1, i]) % p
            if prod == 0:
                break
            c = int(H[i, k]) * prod % p
            if c:
                for j, coeff in enumerate(polys[i]):
                    pk[j] = (pk[j] - c * coeff) % p
        polys.append(pk)
    return list(reversed(polys[n]))


def poly_eval_matrix(coeffs: Sequence[int], A: np.ndarray, p: int) -> np.ndarray:
    """Horner evaluation of a highest-first polynomial at a square matrix."""
    n = A.shape[0]
    out = zeros(n, n)
    for c in coeffs:
        out = (matmul_mod(out, A, p) + int(c) % p * identity(n)) % p
    return out


def matrix_power_mod(A: np.ndarray, e: int, p: int) -> np.ndarray:
    result = identity(A.shape[0])
    base = mod_p(A, p)
    while e:
        if e & 1:
            result = matmul_mod(result, base, p)
        base = matmul_mod(base, base, p)
        e >>= 1
    return result
