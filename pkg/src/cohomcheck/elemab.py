"""Identification of computed cohomology of (Z/p)^n with the symbolic model.

Degree-one generators are the duals of a chosen generating set of the group;
degree-two generators are their Bocksteins.  Every monomial is evaluated in
the computed ring, giving a matrix per degree that must be invertible and
intertwine the two Bocksteins.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cohomology import CohomologyClass, RingTable, h1_class, hom_values, ring_table
from .groups import FiniteGroup
from .linalg import rank, solve
from .resolution import MinimalResolution
from .symbolic import SymbolicClass, SymbolicRing


@dataclass
class ElemAbModel:
    group: FiniteGroup
    res: MinimalResolution
    table: RingTable
    ring: SymbolicRing
    top: int
    duals: list[CohomologyClass]
    mats: dict[int, np.ndarray] = field(default_factory=dict)  # (b_n x dim_n), columns = monomials

    @classmethod
    def build(cls, group: FiniteGroup, gen_elements: list[int], names: tuple[str, ...], top: int = 4,
              ) -> "ElemAbModel":
        p = group.p
        res = MinimalResolution.build(group, top + 1, solve_top=False)
        table = ring_table(res, top)
        if res.betti[1] != len(gen_elements):
            raise ValueError("generator count differs from the rank of the group")
        duals = []
        for i in range(len(gen_elements)):
            vals = hom_values(group, {e: int(i == j) for j, e in enumerate(gen_elements)})
            duals.append(h1_class(res, vals))
        out = cls(group, res, table, SymbolicRing(p, names), top, duals)
        out._evaluate_monomials()
        return out

    @property
    def p(self) -> int:
        return self.group.p

    def _evaluate_monomials(self) -> None:
        t = self.table
        polys = [t.bockstein(a) for a in self.duals]
        for n in range(self.top + 1):
            cols = []
            for mask, exps in self.ring.basis(n):
                u = t.one()
                for i, a in enumerate(self.duals):
                    if mask >> i & 1:
                        u = t.mul(u, a)
                for i, e in enumerate(exps):
                    for _ in range(e):
                        u = t.mul(u, polys[i])
                cols.append(u.array)
            self.mats[n] = np.array(cols, dtype=np.int64).T.reshape(t.betti[n], len(cols))

    def checks(self) -> dict[str, bool]:
        p = self.p
        sym = RingTable.from_symbolic(self.ring, self.top)
        out = {"bijective": all(m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0] for m in self.mats.values())}
        out["bockstein compatible"] = all(
            np.array_equal((self.table.q0[n] @ self.mats[n]) % p, (self.mats[n + 1] @ sym.q0[n]) % p)
            for n in range(self.top))
        return out

    def to_table(self, u: SymbolicClass) -> CohomologyClass:
        n = u.degree
        return CohomologyClass.of(n, self.mats[n] @ u.vector(n), self.p)

    def to_symbolic(self, c: CohomologyClass) -> SymbolicClass:
        x = solve(self.mats[c.degree], c.array, self.p)
        if x is None:
            raise ArithmeticError("class outside the image of the symbolic model")
        basis = self.ring.basis(c.degree)
        return SymbolicClass(self.ring, {basis[k]: int(v) for k, v in enumerate(np.ravel(x) % self.p) if v})


def a2_model(cat, top: int = 4) -> ElemAbModel:
    """A2 with x, y dual to the images of alpha and beta."""
    g = cat.a2
    return ElemAbModel.build(g, [cat.central_element(g, "alpha"), cat.central_element(g, "beta")], ("x", "y"), top)


def a3_model(cat, top: int = 4) -> ElemAbModel:
    """A3 with x, y, z dual to D.alpha, D.beta, G2.xi."""
    g = cat.a3
    elems = [cat.central_element(g, n) for n in ("D.alpha", "D.beta", "G2.xi")]
    return ElemAbModel.build(g, elems, ("x", "y", "z"), top)


def a3p_model(cat, top: int = 4) -> ElemAbModel:
    """A3' with x, y, z dual to G1.alpha, G2.beta, G2.xi."""
    g = cat.a3p
    elems = [cat.central_element(g, n) for n in ("G1.alpha", "G2.beta", "G2.xi")]
    return ElemAbModel.build(g, elems, ("x", "y", "z"), top)
