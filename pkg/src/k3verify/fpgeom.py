"""Vectorized point enumeration over F_p for (P^1)^4 complete intersections and P^3 quartics.

Everything here is exact modular integer arithmetic on numpy int64 arrays;
intermediate products stay far below 2^63 for the primes used (p < 2^10).
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .exactfield import smallest_root
from .polyring import FACTORS, MultiPoly, VARIABLES, var_index

MAX_PRIME = 1 << 10


def check_prime(p: int) -> None:
    smallest_root(p)  # raises unless p is prime and 1 mod 24
    if p >= MAX_PRIME:
        raise ValueError(f"p = {p} too large for int64 enumeration")


def p1_points(p: int) -> np.ndarray:
    """Normalized points of P^1(F_p): [a:1] for a = 0..p-1, then [1:0]."""
    pts = np.zeros((p + 1, 2), dtype=np.int64)
    pts[:p, 0] = np.arange(p)
    pts[:p, 1] = 1
    pts[p] = (1, 0)
    return pts


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for k in range(1, p):
        inv[k] = pow(k, -1, p)
    return inv


def normalize_pairs(pairs: np.ndarray, p: int) -> np.ndarray:
    """Normalize nonzero pairs (..., 2) to [a:1] or [1:0]."""
    inv = inverse_table(p)
    out = np.empty_like(pairs)
    affine = pairs[..., 1] % p != 0
    out[..., 0] = np.where(affine, pairs[..., 0] * inv[pairs[..., 1] % p] % p, 1)
    out[..., 1] = np.where(affine, 1, 0)
    return out


def fp_tensor(poly: MultiPoly, p: int, factors: Sequence[tuple[str, str]] = FACTORS) -> np.ndarray:
    """Coefficient tensor T[i,j,k,l] of a multidegree-(1,1,1,1) form reduced mod p."""
    idx = [(var_index(a), var_index(b)) for a, b in factors]
    tensor = np.zeros((2,) * len(factors), dtype=np.int64)
    for m, c in poly.reduce_mod(p).items():
        d = dict(m)
        key = []
        for i0, i1 in idx:
            e0, e1 = d.pop(i0, 0), d.pop(i1, 0)
            if (e0, e1) not in ((1, 0), (0, 1)):
                raise ValueError("form is not of multidegree (1,1,1,1)")
            key.append(0 if e0 else 1)
        if d:
            raise ValueError(f"unexpected variables {[VARIABLES[i] for i in d]}")
        tensor[tuple(key)] = c
    return tensor


def evaluate_tensor(T: np.ndarray, pts: np.ndarray, p: int) -> np.ndarray:
    """Values at points pts of shape (N, 4, 2)."""
    return np.einsum("ijkl,ni,nj,nk,nl->n", T, pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3]) % p


_PARTIAL = ["ijkl,nj,nk,nl->ni", "ijkl,ni,nk,nl->nj", "ijkl,ni,nj,nl->nk", "ijkl,ni,nj,nk->nl"]


def tensor_partials(T: np.ndarray, pts: np.ndarray, p: int) -> np.ndarray:
    """All eight homogeneous partial derivatives, shape (N, 4, 2)."""
    out = np.empty(pts.shape, dtype=np.int64)
    for m in range(4):
        others = [pts[:, k] for k in range(4) if k != m]
        out[:, m] = np.einsum(_PARTIAL[m], T, *others) % p
    return out


def points_p1x4(equations: Sequence[MultiPoly], p: int) -> np.ndarray:
    """All F_p points of (f = g = 0) in (P^1)^4, shape (N, 4, 2), normalized."""
    check_prime(p)
    if len(equations) != 2:
        raise ValueError("expected two equations")
    L = p1_points(p)
    n = p + 1
    coeffs = []
    for eq in equations:
        T = fp_tensor(eq, p)
        A = np.einsum("ijkl,ai->ajkl", T, L) % p
        A = np.einsum("ajkl,bj->abkl", A, L) % p
        A = np.einsum("abkl,ck->abcl", A, L) % p
        coeffs.append(A.reshape(-1, 2))
    (P, Q), (R, S) = (coeffs[0].T, coeffs[1].T)
    row1 = (P != 0) | (Q != 0)
    row2 = (R != 0) | (S != 0)
    det = (P * S - Q * R) % p
    single = (det == 0) & (row1 | row2)
    v = np.where(row1[:, None], np.stack([-Q % p, P], axis=1), np.stack([-S % p, R], axis=1))
    sel = np.nonzero(single)[0]
    a, b, c = np.unravel_index(sel, (n, n, n))
    chunks = [np.stack([L[a], L[b], L[c], normalize_pairs(v[sel], p)], axis=1)]
    full = np.nonzero(~row1 & ~row2)[0]
    if len(full):
        a, b, c = np.unravel_index(full, (n, n, n))
        for k in range(n):
            kk = np.full(len(full), k)
            chunks.append(np.stack([L[a], L[b], L[c], L[kk]], axis=1))
    pts = np.concatenate(chunks, axis=0)
    order = np.lexsort(tuple(pts.reshape(len(pts), -1).T[::-1]))
    return pts[order]


def jacobian_rank_deficient(equations: Sequence[MultiPoly], pts: np.ndarray, p: int,
                            factors: Sequence[int] = (0, 1, 2, 3)) -> np.ndarray:
    """Boolean mask: rank of the Jacobian (restricted to the given factors) is < 2."""
    cols = []
    for eq in equations:
        J = tensor_partials(fp_tensor(eq, p), pts, p)
        cols.append(J[:, list(factors)].reshape(len(pts), -1))
    Jf, Jg = cols
    k = Jf.shape[1]
    deficient = np.ones(len(pts), dtype=bool)
    for i in range(k):
        for j in range(i + 1, k):
            minor = (Jf[:, i] * Jg[:, j] - Jf[:, j] * Jg[:, i]) % p
            deficient &= minor == 0
    return deficient


# -- P^3 -----------------------------------------------------------------------------

def p3_points(p: int) -> np.ndarray:
    """Normalized points of P^3(F_p) (first nonzero coordinate 1), shape (N, 4)."""
    chunks = []
    r = np.arange(p, dtype=np.int64)
    for lead in range(4):
        free = 3 - lead
        grids = np.meshgrid(*([r] * free), indexing="ij") if free else []
        m = p ** free
        block = np.zeros((m, 4), dtype=np.int64)
        block[:, lead] = 1
        for k, g in enumerate(grids):
            block[:, lead + 1 + k] = g.reshape(-1)
        chunks.append(block)
    return np.concatenate(chunks, axis=0)


def eval_poly_vec(poly: MultiPoly, columns: Mapping[str, np.ndarray], p: int) -> np.ndarray:
    """Evaluate a polynomial mod p at many points given per-variable value arrays."""
    cols = {var_index(k): np.asarray(v, dtype=np.int64) % p for k, v in columns.items()}
    size = len(next(iter(cols.values())))
    total = np.zeros(size, dtype=np.int64)
    powers: dict[tuple[int, int], np.ndarray] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = cols[i] if e == 1 else power(i, e - 1) * cols[i] % p
        return powers[key]

    for m, c in poly.reduce_mod(p).items():
        term = np.full(size, c, dtype=np.int64)
        for i, e in m:
            term = term * power(i, e) % p
        total = (total + term) % p
    return total


def points_on_quartic(poly: MultiPoly, p: int, names: Sequence[str] = ("x", "y", "z", "w")) -> np.ndarray:
    check_prime(p)
    pts = p3_points(p)
    vals = eval_poly_vec(poly, {n: pts[:, k] for k, n in enumerate(names)}, p)
    return pts[vals == 0]


def normalize_p3(vecs: np.ndarray, p: int) -> np.ndarray:
    """Normalize nonzero rows so the first nonzero coordinate is 1."""
    inv = inverse_table(p)
    vecs = vecs % p
    lead = np.argmax(vecs != 0, axis=1)
    scale = inv[vecs[np.arange(len(vecs)), lead]]
    return vecs * scale[:, None] % p
