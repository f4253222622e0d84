"""Minimal free resolutions of F_p over F_p[G] for a finite p-group G.

A vector of the free module P_n = F_p[G]^b lives in F_p^(N*b) with position
``j*N + h`` holding the coefficient of h e_j.  A G-map out of P_n is given by
the images of the generators e_j.

Each step keeps, for the restricted differential d_n: P_n -> K_(n-1) written
in kernel coordinates, a pivot set and the inverse E of the pivot block.
Every later lifting problem d_n x = y is then one product E @ y.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup
from .linalg import left_nullspace, rref

log = logging.getLogger(__name__)

MAX_ORDER = 3000
MAX_DEGREE = 8

# float32 products are exact while the inner dimension times (p-1)^2 stays
# below 2**24
_F32 = 1 << 24


def matmul_mod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """(a @ b) mod m for nonnegative residues, exact, via float BLAS."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    if inner == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    dtype = np.float32 if m * m <= 64 else np.float64
    limit = _F32 if dtype == np.float32 else 1 << 52
    step = max(1, limit // ((m - 1) ** 2 + 1) - 1)
    out = None
    for s in range(0, inner, step):
        part = a[..., s:s + step].astype(dtype) @ b[s:s + step].astype(dtype)
        part = np.fmod(part, m)
        out = part if out is None else np.fmod(out + part, m)
    return out.astype(np.int64) % m


def minimal_generators(g: FiniteGroup) -> list[int]:
    """A minimal generating subset of the stored generators (as indices)."""
    from .groups import _closure_idx

    cand = [int(i) for i in dict.fromkeys(g.gen_index.tolist()) if i != g.identity]
    chosen: list[int] = []
    for c in cand:
        if _closure_idx(g, chosen).size == g.order:
            break
        if c not in set(_closure_idx(g, chosen).tolist()):
            chosen.append(c)
    for c in list(chosen):
        rest = [x for x in chosen if x != c]
        if _closure_idx(g, rest).size == g.order:
            chosen = rest
    return chosen


@dataclass
class _Solver:
    """Data for solving d_n x = y with y in K_(n-1)."""

    free_prev: np.ndarray  # kernel coordinates of K_(n-1) inside P_(n-1)
    pivots: np.ndarray  # pivot positions in P_n
    inv: np.ndarray  # E with E @ M'[:, pivots] = I


@dataclass
class MinimalResolution:
    """A degreewise-minimal resolution P_D -> ... -> P_0 -> F_p.

    ``images[n]`` (n >= 1) has shape (b_n, N * b_(n-1)): row j is d_n(e_j).
    """

    group: FiniteGroup
    p: int
    images: list[np.ndarray] = field(default_factory=list)
    betti: list[int] = field(default_factory=list)
    solvers: list[_Solver] = field(default_factory=list)
    timings: list[float] = field(default_factory=list)
    _lift: list[np.ndarray] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def max_degree(self) -> int:
        return len(self.betti) - 1

    def dim(self, n: int) -> int:
        return 1 if n < 0 else self.order * self.betti[n]

    # --- module arithmetic -------------------------------------------------

    @property
    def _idx(self) -> np.ndarray:
        # idx[x, h] = position of h^-1 x, so (h.v)[x] = v[idx[x, h]]
        if not hasattr(self, "_idx_cache"):
            g = self.group
            self._idx_cache = g.table[g.inverse[None, :], np.arange(g.order)[:, None]]
        return self._idx_cache

    def expand(self, imgs: np.ndarray, tgt_blocks: int, rows: np.ndarray | None = None,
               elem_map: np.ndarray | None = None, dtype=np.float32) -> np.ndarray:
        """Matrix of the G-map with generator images ``imgs``.

        Columns are indexed by (j, h) of the source, rows by (i, x) of the
        target free module with ``tgt_blocks`` blocks.  ``elem_map`` sends
        source group elements into this group (for maps along a homomorphism).
        ``rows`` selects target rows.
        """
        n = self.order
        imgs = np.asarray(imgs)
        nsrc = imgs.shape[0]
        hs = np.arange(n) if elem_map is None else np.asarray(elem_map)
        ncol = hs.size
        idx = self._idx[:, hs]  # (n, ncol)
        out_rows = tgt_blocks * n if rows is None else len(rows)
        out = np.empty((out_rows, nsrc * ncol), dtype=dtype)
        v = imgs.reshape(nsrc, tgt_blocks, n)
        if rows is None:
            for j in range(nsrc):
                blk = v[j][:, idx]  # (tgt_blocks, n, ncol)
                out[:, j * ncol:(j + 1) * ncol] = blk.reshape(tgt_blocks * n, ncol)
        else:
            rows = np.asarray(rows)
            bi, xi = np.divmod(rows, n)
            for j in range(nsrc):
                out[:, j * ncol:(j + 1) * ncol] = v[j][bi[:, None], idx[xi]]
        return out

    def apply(self, imgs: np.ndarray, x: np.ndarray, tgt_blocks: int, m: int | None = None,
              elem_map: np.ndarray | None = None) -> np.ndarray:
        """Apply the G-map with generator images ``imgs`` to columns of x."""
        m = self.p if m is None else m
        x = np.asarray(x)
        vec = x.ndim == 1
        if vec:
            x = x[:, None]
        imgs = np.asarray(imgs) % m
        n = self.order
        hs = np.arange(n) if elem_map is None else np.asarray(elem_map)
        ncol = hs.size
        idx = self._idx[:, hs]
        nsrc = imgs.shape[0]
        v = imgs.reshape(nsrc, tgt_blocks, n)
        out = np.zeros((tgt_blocks * n, x.shape[1]), dtype=np.int64)
        for j in range(nsrc):
            xj = x[j * ncol:(j + 1) * ncol] % m
            if not xj.any():
                continue
            blk = v[j][:, idx].reshape(tgt_blocks * n, ncol)
            out = (out + matmul_mod(blk, xj, m)) % m
        return out[:, 0] if vec else out

    @staticmethod
    def augment(x: np.ndarray, n_blocks: int, order: int) -> np.ndarray:
        """Per-block coefficient sums (the map P -> F_p^b); rows are blocks."""
        x = np.asarray(x)
        return x.reshape(n_blocks, order, *x.shape[1:]).sum(axis=1)

    def differential(self, n: int) -> np.ndarray:
        """Dense matrix of d_n: P_n -> P_(n-1), entries mod p (int64)."""
        if n == 0:
            return np.ones((1, self.order), dtype=np.int64)
        return self.expand(self.images[n], self.betti[n - 1], dtype=np.int64) % self.p

    def d(self, n: int, x: np.ndarray, m: int | None = None, lifted: bool = False) -> np.ndarray:
        """d_n applied to columns of x (over Z/p^2 with ``lifted``)."""
        m = self.p if m is None else m
        if n == 0:
            return self.augment(x, 1, self.order) % m
        imgs = self.lift(n) if lifted else self.images[n]
        return self.apply(imgs, x, self.betti[n - 1], m)

    # --- construction -------------------------------------------------------

    @classmethod
    def build(cls, g: FiniteGroup, degree: int, max_order: int = MAX_ORDER,
              solve_top: bool = True) -> "MinimalResolution":
        """Resolve to ``degree``.

        Solving d_n x = y needs the elimination data of step n; for the top
        degree that step costs as much as the next Betti number, so
        ``solve_top=False`` skips it when only Betti numbers are wanted.
        """
        if g.order > max_order:
            raise RuntimeError(f"group order {g.order} exceeds the resolution cap {max_order}")
        if degree > MAX_DEGREE:
            raise RuntimeError(f"degree {degree} exceeds the cap {MAX_DEGREE}")
        res = cls(g, g.p)
        res.betti = [1]
        res.images = [np.zeros((1, 1), dtype=np.int64)]
        for n in range(degree):
            res._step(n, want_next=True)
        if solve_top:
            res._step(degree, want_next=False)
        return res

    def extend(self, degree: int, solve_top: bool = True) -> None:
        """Continue the resolution to a higher degree."""
        top = self.max_degree
        if len(self.solvers) == top + 1:
            self.solvers.pop()
        for n in range(top, degree):
            self._step(n, want_next=True)
        if solve_top and len(self.solvers) == degree:
            self._step(degree, want_next=False)

    def can_solve(self, n: int) -> bool:
        return n < len(self.solvers)

    def _step(self, n: int, want_next: bool) -> None:
        """Eliminate d_n in kernel coordinates; optionally find generators of ker d_n."""
        t0 = time.time()
        p, order = self.p, self.order
        if n == 0:
            free_prev = np.array([0])
            mp = np.ones((1, order), dtype=np.float32)
        else:
            free_prev = self._free_prev
            mp = self.expand(self.images[n], self.betti[n - 1], rows=free_prev)
        k, cols = mp.shape
        aug = np.empty((k, cols + k), dtype=np.float32)
        aug[:, :cols] = mp
        del mp
        aug[:, cols:] = np.eye(k, dtype=np.float32)
        r, piv = rref(aug, p, overwrite=True, as_float=True)
        if len(piv) != k or (piv and piv[-1] >= cols):
            raise RuntimeError("restricted differential does not have full row rank")
        piv = np.array(piv, dtype=np.int64)
        inv = np.ascontiguousarray(r[:, cols:])
        self.solvers.append(_Solver(free_prev, piv, inv))
        if want_next:
            free = np.setdiff1d(np.arange(cols), piv)
            kmat = np.zeros((cols, free.size), dtype=np.float32)
            kmat[free, np.arange(free.size)] = 1
            kmat[piv] = r[:, free]
            kmat[piv] *= -1
            kmat[piv] %= p
            del r, aug
            gens = self._kernel_generators(kmat, free, self.betti[n])
            self.images.append(np.ascontiguousarray(kmat[:, gens].T).astype(np.int64))
            self.betti.append(len(gens))
            self._free_prev = free
            log.info("degree %d: kernel dim %d, betti %d", n, free.size, len(gens))
        self.timings.append(time.time() - t0)

    def _kernel_generators(self, kmat: np.ndarray, free: np.ndarray, blocks: int) -> list[int]:
        """Kernel coordinates whose basis vectors span K / I K.

        Functionals on K vanishing on (g - 1) K for the generators g of G
        form the dual of K / I K; they are found one generator at a time.
        """
        p, order = self.p, self.order
        k = free.size
        blk, x = np.divmod(free, order)
        phi = None
        for g in minimal_generators(self.group):
            ginv = self.group.inverse[g]
            src = blk * order + self.group.table[ginv, x]
            # column f holds the kernel coordinates of g . k_f
            a = kmat[src]
            a[np.arange(k), np.arange(k)] -= 1
            a %= p
            if phi is None:
                phi = left_nullspace(a, p)
            else:
                m = matmul_mod(phi, a, p)
                psi = left_nullspace(m, p)
                phi = matmul_mod(psi, phi, p)
            if phi.shape[0] == 0:
                break
        if phi is None or phi.shape[0] == 0:
            return []
        _, piv = rref(phi, p)
        return list(piv)

    # --- solving -------------------------------------------------------------

    def solve(self, n: int, y: np.ndarray, check: bool = True) -> np.ndarray:
        """x in P_n with d_n x = y, for columns y lying in ker d_(n-1)."""
        sol = self.solvers[n]
        y = np.asarray(y) % self.p
        vec = y.ndim == 1
        if vec:
            y = y[:, None]
        x = np.zeros((self.dim(n), y.shape[1]), dtype=np.int64)
        x[sol.pivots] = matmul_mod(sol.inv, y[sol.free_prev], self.p)
        if check and ((self.d(n, x) - y) % self.p).any():
            raise ArithmeticError(f"right-hand side not in the image of d_{n}")
        return x[:, 0] if vec else x

    # --- Z/p^2 lift -------------------------------------------------------------

    def lift(self, n: int) -> np.ndarray:
        """Generator images of a lift of d_n to Z/p^2 with d~ d~ = 0 mod p^2."""
        q = self.p * self.p
        while len(self._lift) <= n:
            m = len(self._lift)
            if m == 0:
                self._lift.append(self.images[0])
                continue
            naive = self.images[m] % self.p
            err = self.d(m - 1, naive.T, m=q, lifted=True) if m > 1 else \
                self.augment(naive.T, 1, self.order) % q
            if (err % self.p).any():
                raise ArithmeticError("differentials do not compose to zero")
            e = (err // self.p) % self.p
            corr = self.solve(m - 1, (-e) % self.p) if m > 1 else self._solve0(-e)
            self._lift.append((naive + self.p * corr.T) % q)
        return self._lift[n]

    def _solve0(self, e: np.ndarray) -> np.ndarray:
        out = np.zeros((self.order, e.shape[1]), dtype=np.int64)
        out[self.group.identity] = e[0] % self.p
        return out


def resolution(g: FiniteGroup, degree: int) -> MinimalResolution:
    return MinimalResolution.build(g, degree)
