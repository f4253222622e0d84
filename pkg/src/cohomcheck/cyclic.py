"""The reduced permutation module of a cyclic group of order p.

C_p = <g> permutes t^(1..p) cyclically; the span of u^(i) = t^(i) - t^(i+1)
(i < p) is a submodule of rank p - 1.  Matrices act on column coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .groups import check_prime
from .linalg import image_basis, in_span, nullspace, rank, solve


def _mat_pow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    for _ in range(k):
        out = (out @ a) % p
    return out


@dataclass(frozen=True)
class CpModule:
    p: int

    def __post_init__(self):
        check_prime(self.p)

    @property
    def dim(self) -> int:
        return self.p - 1

    @cached_property
    def permutation(self) -> np.ndarray:
        """g on the ambient basis t^(1..p): t^(i) -> t^(i+1), indices mod p."""
        p = self.p
        m = np.zeros((p, p), dtype=np.int64)
        m[(np.arange(p) + 1) % p, np.arange(p)] = 1
        return m

    @cached_property
    def embedding(self) -> np.ndarray:
        """Columns u^(i) = t^(i) - t^(i+1) in ambient coordinates."""
        p = self.p
        e = np.zeros((p, p - 1), dtype=np.int64)
        for i in range(p - 1):
            e[i, i] = 1
            e[i + 1, i] = p - 1
        return e

    @cached_property
    def action(self) -> np.ndarray:
        """g on the u-basis, re-derived from the ambient permutation."""
        x = solve(self.embedding, (self.permutation @ self.embedding) % self.p, self.p)
        if x is None:
            raise ArithmeticError("span of the u^(i) is not g-stable")
        return x % self.p

    def stated_action(self) -> np.ndarray:
        """g u^(i) = u^(i+1) for i < p-1 and g u^(p-1) = -(u^(1) + ... + u^(p-1))."""
        p = self.p
        m = np.zeros((p - 1, p - 1), dtype=np.int64)
        for i in range(p - 2):
            m[i + 1, i] = 1
        m[:, p - 2] = p - 1
        return m

    @cached_property
    def one_minus_g(self) -> np.ndarray:
        return (np.eye(self.dim, dtype=np.int64) - self.action) % self.p

    @cached_property
    def norm(self) -> np.ndarray:
        return sum(_mat_pow(self.action, k, self.p) for k in range(self.p)) % self.p

    @cached_property
    def u_tilde(self) -> np.ndarray:
        """sum_i i u^(i)."""
        return np.arange(1, self.p, dtype=np.int64) % self.p

    def module_checks(self) -> dict[str, bool]:
        p = self.p
        top = _mat_pow(self.one_minus_g, p - 1, p)
        return {
            "action matches the stated formula": bool(np.array_equal(self.action, self.stated_action())),
            "g^p = 1": bool(np.array_equal(_mat_pow(self.action, p, p), np.eye(self.dim, dtype=np.int64))),
            "(1-g)^(p-1) = norm": bool(np.array_equal(top, self.norm)),
            "(1-g)^(p-1) = 0": not top.any(),
        }


def kernel_image_analysis(p: int) -> dict:
    """Kernel and image of 1 - g and of (1 - g)^(p-1) on the reduced module."""
    m = CpModule(p)
    a = m.one_minus_g
    ker = nullspace(a, p)
    img = image_basis(a, p)
    top = _mat_pow(a, p - 1, p)
    ker_top = nullspace(top, p)
    ut = m.u_tilde
    stated_img = np.array([[1 if j == i else (p - 1 if j == i + 1 else 0) for j in range(p - 1)]
                           for i in range(p - 2)], dtype=np.int64).reshape(p - 2, p - 1)
    return {
        "p": p,
        "ker": ker.tolist(),
        "im": img.tolist(),
        "ker_top": ker_top.tolist(),
        "dim_ker": int(ker.shape[0]),
        "dim_im": int(img.shape[0]),
        "dim_ker_top": int(ker_top.shape[0]),
        "u_tilde": ut.tolist(),
        "u_tilde_spans_ker": bool(ker.shape[0] == 1 and rank(np.vstack([ker, ut]), p) == 1 and ut.any()),
        "u_tilde_in_im": bool(in_span(img, ut, p)),
        "stated_image_spans": bool(rank(stated_img, p) == p - 2 and rank(np.vstack([img, stated_img]), p) == img.shape[0])
        if p > 2 else True,
        "top_power_zero": not top.any(),
        **{k: v for k, v in m.module_checks().items()},
    }


def cp_cohomology(action: np.ndarray, p: int, n: int) -> tuple[int, np.ndarray, np.ndarray]:
    """H^n(C_p; M) from the periodic resolution: dimension, cycle basis, boundary basis.

    H^0 = ker(1-g); odd degrees ker N / im(1-g); even positive degrees
    ker(1-g) / im N, with N = (1-g)^(p-1).
    """
    d = action.shape[0]
    a = (np.eye(d, dtype=np.int64) - action) % p
    nrm = _mat_pow(a, p - 1, p)
    if n == 0:
        cyc, bnd = nullspace(a, p), np.zeros((0, d), dtype=np.int64)
    elif n % 2:
        cyc, bnd = nullspace(nrm, p), image_basis(a, p)
    else:
        cyc, bnd = nullspace(a, p), image_basis(nrm, p)
    return cyc.shape[0] - bnd.shape[0], cyc, bnd


def e2_terms(p: int) -> dict:
    """E_2^{0,2} = ker(1-g) and E_2^{1,2} = ker(1-g)^(p-1) / im(1-g), with representatives."""
    m = CpModule(p)
    d0, cyc0, _ = cp_cohomology(m.action, p, 0)
    d1, cyc1, bnd1 = cp_cohomology(m.action, p, 1)
    u1 = np.zeros(p - 1, dtype=np.int64)
    u1[0] = 1
    return {
        "p": p,
        "E2_02_dim": int(d0),
        "E2_02_rep": m.u_tilde.tolist(),
        "E2_02_rep_spans": bool(d0 == 1 and in_span(cyc0, m.u_tilde, p) and m.u_tilde.any()),
        "E2_12_dim": int(d1),
        "E2_12_rep": u1.tolist(),
        "E2_12_rep_spans": bool(d1 == 1 and in_span(cyc1, u1, p) and not in_span(bnd1, u1, p)),
    }
