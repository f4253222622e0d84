"""Exact linear algebra over Z/p and Z/p^2.

Matrices are plain numpy arrays holding reduced residues.  The heavy
routine is :func:`rref`, a blocked Gauss-Jordan elimination that pushes the
trailing updates through float32 BLAS products; entries stay small enough
that every intermediate is an exactly representable integer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

# float32 holds integers exactly up to 2**24; keep headroom so that
# rint(x / p) stays exact after float32 rounding
_SAFE = 1 << 22
_DENSE_LIMIT = 256


_ROWBLOCK = 4096


def inv_mod(a: int, m: int) -> int:
    return pow(int(a) % m, -1, m)


def _reduce_inplace(x: np.ndarray, p: int, scratch: np.ndarray | None = None) -> None:
    """Replace integer-valued floats by symmetric residues mod p."""
    if p == 2:
        np.fmod(x, 2, out=x)
        return
    if scratch is None and x.ndim == 2 and x.size > _ROWBLOCK * 1024:
        # bounded temporaries for big matrices
        step = max(1, (_ROWBLOCK * 1024) // max(1, x.shape[1]))
        for s in range(0, x.shape[0], step):
            _reduce_inplace(x[s:s + step], p)
        return
    # x/p is never within 1/(2p) of a half-integer, so rint is exact here
    t = np.multiply(x, np.float32(1.0 / p), out=scratch)
    np.rint(t, out=t)
    t *= p
    x -= t


def _panel_pivots(panel: np.ndarray, p: int, leaf: int = 16) -> tuple[list[int], list[int]]:
    """Pivot rows and columns of a narrow panel, in pivot-column order.

    Wide panels are split in half; pivots of the left half are eliminated from
    the right half by one matrix product before recursing.
    """
    m, w = panel.shape
    if w > leaf:
        h = w // 2
        rl, cl = _panel_pivots(panel[:, :h], p, leaf)
        right = np.array(panel[:, h:], dtype=np.float32)
        if rl:
            q = _inverse_small(panel[np.ix_(rl, cl)], p).astype(np.float32)
            top = q @ right[rl]
            upd = panel[:, cl].astype(np.float32) @ top
            right -= upd
            _reduce_inplace(right, p, scratch=upd)
        rest = np.setdiff1d(np.arange(m), rl)
        rr, cr = _panel_pivots(right[rest], p, leaf)
        return rl + [int(rest[i]) for i in rr], cl + [h + c for c in cr]
    work = panel.astype(np.int64) % p
    rows, cols = [], []
    free = np.ones(m, dtype=bool)
    for c in range(w):
        cand = np.flatnonzero((work[:, c] != 0) & free)
        if cand.size == 0:
            continue
        r = int(cand[0])
        free[r] = False
        rows.append(r)
        cols.append(c)
        rest = cand[1:]
        if rest.size:
            f = (work[rest, c] * inv_mod(work[r, c], p)) % p
            work[rest, c:] = (work[rest, c:] - np.outer(f, work[r, c:])) % p
    return rows, cols


def _inverse_small(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([a.astype(np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = c + int(np.flatnonzero(aug[c:, c])[0])
        if piv != c:
            aug[[c, piv]] = aug[[piv, c]]
        aug[c] = (aug[c] * inv_mod(aug[c, c], p)) % p
        col = aug[:, c].copy()
        col[c] = 0
        nz = np.flatnonzero(col)
        if nz.size:
            aug[nz] = (aug[nz] - np.outer(col[nz], aug[c])) % p
    return aug[:, n:]


def rref(a: np.ndarray, p: int, panel: int = 128, chunk: int = 4096, overwrite: bool = False,
         as_float: bool = False) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Returns ``(R, pivots)`` where ``R`` holds only the ``rank`` nonzero rows
    and ``pivots`` their pivot columns.  Elimination order is fixed by column
    index.  With ``overwrite`` a float32 input is eliminated in place, and
    ``as_float`` returns R as a float32 view instead of an int64 copy; both
    matter for the largest resolution steps.
    """
    a = np.asarray(a)
    m, n = a.shape
    if m == 0 or n == 0:
        return np.zeros((0, n), dtype=np.float32 if as_float else np.int64), []
    h = max(1, (p - 1) // 2)
    if panel * h * h >= _SAFE:
        raise ValueError("panel too wide for exact float32 accumulation")
    if overwrite and a.dtype == np.float32 and a.flags.c_contiguous:
        work = a
    else:
        work = np.array(np.mod(a, p) if a.dtype.kind in "iu" else a, dtype=np.float32)
    _reduce_inplace(work, p)
    # entries are integer-valued floats; `bound` caps their absolute value and
    # the trailing block is only reduced when the next update could overflow
    bound = h
    r = 0
    pivots: list[int] = []
    for c0 in range(0, n, panel):
        if r == m:
            break
        c1 = min(c0 + panel, n)
        if bound > h:
            _reduce_inplace(work[:, c0:c1], p)
        prow, pcol = _panel_pivots(work[r:, c0:c1], p)
        if not prow:
            continue
        k = len(prow)
        rows_abs = [r + i for i in prow]
        pc = [c0 + c for c in pcol]
        q = _inverse_small(work[np.ix_(rows_abs, pc)], p).astype(np.float32)
        src = work[rows_abs, c0:]
        if bound > h:
            _reduce_inplace(src, p)
        top = q @ src
        _reduce_inplace(top, p)
        if bound + k * h * h >= _SAFE:
            _reduce_inplace(work[:, c1:], p)
            bound = h
        bound += k * h * h
        for s in range(0, m, chunk):
            blk = work[s:s + chunk]
            coef = blk[:, pc]
            if not coef.any():
                continue
            blk[:, c0:] -= coef @ top
        # bring pivot rows to positions r..r+k-1, in pivot order
        taken = set(rows_abs)
        others = [i for i in range(r, r + k) if i not in taken]
        spare = [i for i in rows_abs if i >= r + k]
        for i, j in zip(others, spare):
            work[[i, j]] = work[[j, i]]
        work[r:r + k, :] = 0
        work[r:r + k, c0:] = top
        r += k
        pivots.extend(pc)
    out = work[:r]
    _reduce_inplace(out, p)
    np.add(out, p, out=out, where=out < 0)
    if as_float:
        return out, pivots
    return out.astype(np.int64), pivots


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : a @ x = 0} over F_p."""
    a = np.asarray(a)
    n = a.shape[1]
    r, piv = rref(a, p)
    free = np.setdiff1d(np.arange(n), piv)
    basis = np.zeros((free.size, n), dtype=np.int64)
    basis[np.arange(free.size), free] = 1
    if piv:
        basis[:, piv] = (-r[:, free].T) % p
    return basis


def left_nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {x : x @ a = 0}."""
    return nullspace(np.asarray(a).T, p)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b (b may be a matrix of columns), or None."""
    a = np.asarray(a)
    b = np.asarray(b)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    n = a.shape[1]
    r, piv = rref(np.concatenate([a, b], axis=1), p)
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    if piv:
        x[piv] = r[:, n:]
    return x[:, 0] if vec else x


def row_solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solve x @ a = b for row vectors x (b one row or a stack of rows)."""
    x = solve(np.asarray(a).T, np.asarray(b).T, p)
    return None if x is None else x.T


def image_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Echelon basis of the column space, as rows."""
    return rref(np.asarray(a).T, p)[0]


def rank_kernel_image(m: np.ndarray, p: int) -> tuple[int, np.ndarray, np.ndarray]:
    """Rank, kernel basis (rows x with m @ x = 0) and column-space basis (rows)."""
    m = np.asarray(m) % p
    ker = nullspace(m, p)
    img = image_basis(m, p)
    assert not ((m @ ker.T) % p).any()
    return img.shape[0], ker, img


def in_span(rows: np.ndarray, v: np.ndarray, p: int) -> bool:
    if rows.shape[0] == 0:
        return not (np.asarray(v) % p).any()
    return rank(np.vstack([rows, v]), p) == rank(rows, p)


@dataclass(frozen=True)
class FpMatrix:
    """Sparse-or-dense matrix over F_p.

    Storage is a scipy CSC matrix (column-major adjacency lists) unless both
    dimensions are below the dense threshold.
    """

    p: int
    data: object

    @classmethod
    def from_array(cls, a, p: int) -> "FpMatrix":
        a = np.asarray(a) % p
        if max(a.shape) >= _DENSE_LIMIT:
            return cls(p, sp.csc_matrix(a))
        return cls(p, a.astype(np.int64))

    @classmethod
    def from_coo(cls, rows, cols, vals, shape, p: int) -> "FpMatrix":
        mat = sp.coo_matrix((np.asarray(vals, dtype=np.int64) % p, (rows, cols)), shape=shape).tocsc()
        mat.data %= p
        mat.eliminate_zeros()
        if max(shape) < _DENSE_LIMIT:
            return cls(p, mat.toarray())
        return cls(p, mat)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.data)

    def dense(self) -> np.ndarray:
        d = self.data.toarray() if self.is_sparse else self.data
        return np.asarray(d, dtype=np.int64) % self.p

    def rank_kernel_image(self):
        return rank_kernel_image(self.dense(), self.p)

    def rank(self) -> int:
        return rank(self.dense(), self.p)


# --- Z/p^2 -------------------------------------------------------------------


@dataclass(frozen=True)
class Zp2Matrix:
    """Matrix over the local ring Z/p^2."""

    p: int
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", np.asarray(self.data, dtype=np.int64) % (self.p * self.p))

    def reduce(self) -> np.ndarray:
        return self.data % self.p


def solve_local(m: np.ndarray, b: np.ndarray, p: int):
    """Solve m @ x = b over Z/p^2.

    Returns ``(x, None)`` on success or ``(None, y)`` where the certificate
    ``y`` is a row vector with ``y @ m = 0`` and ``y @ b != 0`` mod p^2.
    Full pivoting on entries of least p-adic valuation diagonalises
    ``U m V = D``; the system then splits coordinatewise.
    """
    q = p * p
    m = np.asarray(m, dtype=np.int64) % q
    b = np.asarray(b, dtype=np.int64).reshape(-1) % q
    rows, cols = m.shape
    a = m.copy()
    u = np.eye(rows, dtype=np.int64)
    v = np.eye(cols, dtype=np.int64)
    diag: list[int] = []
    k = 0
    while k < min(rows, cols):
        sub = a[k:, k:]
        units = np.argwhere(sub % p != 0)
        nz = units if units.size else np.argwhere(sub != 0)
        if nz.size == 0:
            break
        i, j = (int(t) + k for t in nz[0])
        a[[k, i]] = a[[i, k]]
        u[[k, i]] = u[[i, k]]
        a[:, [k, j]] = a[:, [j, k]]
        v[:, [k, j]] = v[:, [j, k]]
        piv = int(a[k, k])
        if piv % p:
            inv = inv_mod(piv, q)
            a[k] = a[k] * inv % q
            u[k] = u[k] * inv % q
            diag.append(1)
        else:
            inv = inv_mod(piv // p, p)
            a[k] = a[k] * inv % q
            u[k] = u[k] * inv % q
            diag.append(p)
        d = diag[-1]
        # every remaining entry is divisible by d, so these quotients are exact
        f = (a[k + 1:, k] // d) % q
        a[k + 1:] = (a[k + 1:] - np.outer(f, a[k])) % q
        u[k + 1:] = (u[k + 1:] - np.outer(f, u[k])) % q
        g = (a[k, k + 1:] // d) % q
        a[:, k + 1:] = (a[:, k + 1:] - np.outer(a[:, k], g)) % q
        v[:, k + 1:] = (v[:, k + 1:] - np.outer(v[:, k], g)) % q
        k += 1
    ub = u @ b % q
    y = np.zeros(cols, dtype=np.int64)
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        if d == 1:
            y[i] = ub[i]
        elif d == p:
            if ub[i] % p:
                return None, p * u[i] % q
            y[i] = ub[i] // p
        elif ub[i]:
            return None, u[i] % q
    x = v @ y % q
    assert not ((m @ x - b) % q).any()
    return x, None
