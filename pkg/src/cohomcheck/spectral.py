"""Spectral sequences of central extensions by Z/p.

E_2 = H*(base) (x) Lambda(z1) (x) F_p[z2].  With the fibre column at height t
spanned by z1^e z2^k (e + 2k = t), every position E_2^{s,t} is a copy of the
base in degree s, so elements are plain vectors in the base basis.

Only the Gysin pattern is supported: d2(z1) = c, d2(z2) = 0, d3(z2) = tau,
base classes permanent.  d2 and d3 are extended as derivations.  Pages are
kept as subquotients Z_r / B_r of E_2 position by position.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cohomology import CohomologyClass, RingTable
from .linalg import nullspace, rank, rref

Position = tuple[int, int]


def _mult_matrix(base: RingTable, s: int, c: CohomologyClass) -> np.ndarray:
    """Matrix (b_(s+deg c) x b_s) of b -> b c."""
    t = base.products[(s, c.degree)]  # (b_s, b_deg, b_out)
    return np.einsum("klj,l->jk", t, c.array) % base.p


def _span(rows: np.ndarray, p: int) -> np.ndarray:
    """Reduced row basis of the span of rows."""
    rows = np.asarray(rows, dtype=np.int64) % p
    if rows.shape[0] == 0 or not rows.any():
        return np.zeros((0, rows.shape[1]), dtype=np.int64)
    r, piv = rref(rows, p)
    return np.asarray(r[: len(piv)], dtype=np.int64)


def _preimage(m: np.ndarray, target_rows: np.ndarray, p: int, ncols: int) -> np.ndarray:
    """Rows x with m @ x in the row span of target_rows (m maps columns)."""
    if m.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    if target_rows.shape[0]:
        # x in preimage iff m x is killed by a complement functional basis
        ann = nullspace(target_rows % p, p)  # functionals vanishing on the span
        comp = (ann @ m) % p
    else:
        comp = m % p
    return nullspace(comp, p)


@dataclass
class Page:
    r: int
    cycles: dict[Position, np.ndarray]      # row bases of Z_r in E_2 coordinates
    boundaries: dict[Position, np.ndarray]  # row bases of B_r (subspace of Z_r)

    def dim(self, pos: Position) -> int | None:
        if pos not in self.cycles:
            return None
        return self.cycles[pos].shape[0] - self.boundaries[pos].shape[0]


@dataclass
class CentralSS:
    """Configured spectral sequence; positions with s + t <= dtot are tracked."""

    base: RingTable
    dtot: int
    d2z1: CohomologyClass | None = None
    d3z2: CohomologyClass | None = None
    pages: dict[int, Page] = field(default_factory=dict)

    def __post_init__(self):
        if self.base.max_degree < 2:
            raise ValueError("base table too shallow")

    @property
    def p(self) -> int:
        return self.base.p

    # --- configuration ---------------------------------------------------------------

    def set_transgressions(self, d2z1: CohomologyClass, d3z2: CohomologyClass) -> "CentralSS":
        if d2z1.degree != 2 or d3z2.degree != 3:
            raise ValueError("transgressions must have degrees 2 and 3")
        self.d2z1, self.d3z2 = d2z1, d3z2
        self.pages.clear()
        if self.base.max_degree >= 6 and not self.base.mul(d3z2, d3z2).is_zero():
            raise ValueError("d3 o d3 != 0: the degree-3 transgression squares to a nonzero class")
        return self

    def _present(self, pos: Position) -> bool:
        s, t = pos
        return s >= 0 and t >= 0 and s <= self.base.max_degree

    def e2_dim(self, pos: Position) -> int:
        return self.base.betti[pos[0]] if self._present(pos) else 0

    def d2_matrix(self, pos: Position) -> np.ndarray:
        """E_2^{s,t} -> E_2^{s+2,t-1}."""
        s, t = pos
        tgt = (s + 2, t - 1)
        if t % 2 == 0 or not self._present(tgt) or self.d2z1 is None:
            return np.zeros((self.e2_dim(tgt), self.e2_dim(pos)), dtype=np.int64)
        return ((-1) ** s * _mult_matrix(self.base, s, self.d2z1)) % self.p

    def d3_matrix(self, pos: Position) -> np.ndarray:
        """Derivation extension of d3(z2) = tau on E_2 representatives: E_2^{s,t} -> E_2^{s+3,t-2}."""
        s, t = pos
        tgt = (s + 3, t - 2)
        k = t // 2
        if k == 0 or not self._present(tgt) or self.d3z2 is None:
            return np.zeros((self.e2_dim(tgt), self.e2_dim(pos)), dtype=np.int64)
        return ((-1) ** s * k * _mult_matrix(self.base, s, self.d3z2)) % self.p

    # --- pages ---------------------------------------------------------------------

    def positions(self, total: int | None = None) -> list[Position]:
        top = self.dtot if total is None else total
        return [(s, n - s) for n in range(top + 1) for s in range(n + 1) if self._present((s, n - s))]

    def _shift(self, r: int) -> Position:
        return (r, 1 - r)

    def _trivially_zero(self, r: int, pos: Position) -> bool:
        """d_r vanishes on E_2^{s,t} for fibre reasons or lands outside the quadrant."""
        s, t = pos
        if t + 1 - r < 0:
            return True
        return t % 2 == 0 if r == 2 else t < 2

    def _step(self, r: int, prev: Page) -> Page:
        """E_{r+1} from E_r, with d_r computed on E_2 representatives."""
        dmat = self.d2_matrix if r == 2 else self.d3_matrix
        ds, dt = self._shift(r)
        cyc, bnd = {}, {}
        for pos, z in prev.cycles.items():
            s, t = pos
            tgt, src = (s + ds, t + dt), (s - ds, t - dt)
            if self._trivially_zero(r, pos):
                newz = z
            elif tgt in prev.cycles:
                coeff = _preimage((dmat(pos) @ z.T) % self.p, prev.boundaries[tgt], self.p, z.shape[0])
                newz = _span((coeff @ z) % self.p, self.p)
            else:
                continue  # target not computed: position unknown from here on
            imgs = [prev.boundaries[pos]]
            if src[0] >= 0 and not self._trivially_zero(r, src):
                if src not in prev.cycles:
                    continue
                imgs.append(((dmat(src) @ prev.cycles[src].T) % self.p).T)
            newb = _span(np.vstack(imgs), self.p)
            if newb.shape[0] and rank(np.vstack([newz, newb]), self.p) != newz.shape[0]:
                raise ArithmeticError(f"d_{r} o d_{r} != 0 near {pos}")
            cyc[pos], bnd[pos] = newz, newb
        return Page(r + 1, cyc, bnd)

    def page(self, r: int) -> Page:
        if r in self.pages:
            return self.pages[r]
        if self.d2z1 is None:
            raise RuntimeError("transgressions not set")
        if r == 2:
            cyc, bnd = {}, {}
            for pos in self.positions(self.dtot + 2):
                n = self.e2_dim(pos)
                cyc[pos] = np.eye(n, dtype=np.int64)
                bnd[pos] = np.zeros((0, n), dtype=np.int64)
            pg = Page(2, cyc, bnd)
        elif r in (3, 4):
            pg = self._step(r - 1, self.page(r - 1))
        else:
            raise ValueError("only pages 2, 3 and 4 are defined for the Gysin pattern")
        self.pages[r] = pg
        return pg

    def dim(self, r: int, pos: Position) -> int | None:
        """dim E_r^{s,t}; 0 outside the quadrant, None where not computed."""
        if pos[0] < 0 or pos[1] < 0:
            return 0
        return self.page(r).dim(pos)

    # --- E_infinity --------------------------------------------------------------------

    def _known_zero(self, pos: Position, r: int) -> bool:
        s, t = pos
        if s < 0 or t < 0:
            return True
        for q in range(r, 1, -1):
            d = self.page(q).dim(pos) if q in (2, 3, 4) else None
            if d == 0:
                return True
        return False

    def certificate(self, pos: Position, r: int = 4) -> str | None:
        """Why E_r^{s,t} = E_inf^{s,t}, or None if that cannot be certified.

        Differentials d_q (q >= r) into (s,t) start at (s-q, t+q-1) and out of
        it land at (s+q, t-q+1); it suffices that all of those are zero or
        outside the first quadrant.
        """
        s, t = pos
        if self.page(r).dim(pos) is None:
            return None
        if self.page(r).dim(pos) == 0:
            return f"E_{r} vanishes"
        for q in range(r, s + t + 3):
            if s - q >= 0 and not self._known_zero((s - q, t + q - 1), r):
                return None
            if t - q + 1 >= 0 and not self._known_zero((s + q, t - q + 1), r):
                return None
        return f"no differential of length >= {r} can reach or leave ({s},{t})"

    def e_infinity(self, total: int) -> dict[Position, dict]:
        out = {}
        pg = self.page(4)
        for s in range(total + 1):
            pos = (s, total - s)
            cert = self.certificate(pos)
            out[pos] = {"dim": pg.dim(pos), "certified": cert is not None, "reason": cert}
        return out

    def assemble_dims(self, n: int) -> int:
        table = self.e_infinity(n)
        bad = [pos for pos, v in table.items() if not v["certified"]]
        if bad:
            raise RuntimeError(f"positions not certified stable: {bad}")
        return sum(v["dim"] for v in table.values())

    # --- elements ------------------------------------------------------------------------

    def element(self, base_class: CohomologyClass, fibre: tuple[int, int]) -> tuple[Position, np.ndarray]:
        """b z1^e z2^k as (position, vector)."""
        e, k = fibre
        return (base_class.degree, e + 2 * k), base_class.array % self.p

    def d(self, r: int, pos: Position, vec: np.ndarray) -> tuple[Position, np.ndarray]:
        """d_r on an E_2 representative (r = 2 or 3)."""
        m = self.d2_matrix(pos) if r == 2 else self.d3_matrix(pos)
        shift = (2, -1) if r == 2 else (3, -2)
        return (pos[0] + shift[0], pos[1] + shift[1]), (m @ vec) % self.p

    def survives(self, r: int, pos: Position, vec: np.ndarray) -> bool:
        """Is vec a cycle through page r-1, i.e. does it define an element of E_r?"""
        z = self.page(r).cycles[pos]
        return rank(np.vstack([z, vec]), self.p) == z.shape[0]

    def is_boundary(self, r: int, pos: Position, vec: np.ndarray) -> bool:
        b = self.page(r).boundaries[pos]
        if b.shape[0] == 0:
            return not (np.asarray(vec) % self.p).any()
        return rank(np.vstack([b, vec]), self.p) == b.shape[0]

    def spans_page(self, r: int, pos: Position, vecs: list[np.ndarray]) -> bool:
        """The vecs survive to E_r and their classes form a basis of E_r^{s,t}."""
        pg = self.page(r)
        z, b = pg.cycles[pos], pg.boundaries[pos]
        if not all(self.survives(r, pos, v) for v in vecs):
            return False
        stacked = np.vstack([b] + [np.asarray(v)[None, :] for v in vecs]) if vecs else b
        return rank(stacked, self.p) == b.shape[0] + len(vecs) == z.shape[0]

    def projected_kernel(self, r: int, pos: Position, keep: np.ndarray) -> np.ndarray:
        """Row basis of ker(P o d_r) on E_2^{s,t}, P the coordinate projection onto keep."""
        m = self.d2_matrix(pos) if r == 2 else self.d3_matrix(pos)
        return nullspace(m[np.asarray(keep, dtype=bool)] % self.p, self.p)

    def derivation_defect(self, r: int) -> int:
        """Number of basis pairs (x, y) in E_2 violating d(xy) = d(x) y + (-1)^|x| x d(y).

        Only pairs with x, y, xy in the tracked range and with base classes and
        fibre monomials both taken from a basis are tested.
        """
        base, p = self.base, self.p
        fib = [(e, k) for k in range(self.dtot // 2 + 1) for e in (0, 1) if e + 2 * k <= self.dtot]
        bad = 0
        for s1 in range(self.dtot + 1):
            for s2 in range(self.dtot + 1 - s1):
                for f1 in fib:
                    for f2 in fib:
                        t1, t2 = f1[0] + 2 * f1[1], f2[0] + 2 * f2[1]
                        if s1 + s2 + t1 + t2 > self.dtot or (f1[0] and f2[0]):
                            continue
                        for u in base.basis(s1):
                            for v in base.basis(s2):
                                bad += not self._leibniz(u, f1, v, f2, r)
        return bad

    def _mul(self, u: CohomologyClass, f1: tuple[int, int], v: CohomologyClass, f2: tuple[int, int]):
        """(u z^f1)(v z^f2) = sign * uv z^(f1+f2)."""
        if f1[0] and f2[0]:
            return None
        sign = -1 if (f1[0] * v.degree) % 2 else 1
        prod = self.base.mul(u, v)
        return self.base.scale(prod, sign), (f1[0] + f2[0], f1[1] + f2[1])

    def _dval(self, r: int, u: CohomologyClass, f: tuple[int, int]):
        pos, vec = self.element(u, f)
        tpos, tvec = self.d(r, pos, vec)
        return tpos, tvec

    def _leibniz(self, u, f1, v, f2, r) -> bool:
        p = self.p
        prod = self._mul(u, f1, v, f2)
        if prod is None:
            return True
        w, f = prod
        tpos, lhs = self._dval(r, w, f)
        if not self._present(tpos):
            return True
        total = np.zeros_like(lhs)
        dx_pos, dx = self._dval(r, u, f1)
        step = (1, 0) if r == 2 else (0, 1)
        if dx.any():
            fx = (f1[0] - step[0], f1[1] - step[1])
            dcls = CohomologyClass.of(dx_pos[0], dx, p)
            prod = self._mul(dcls, fx, v, f2)
            if prod is not None:
                total = (total + prod[0].array) % p
        dy_pos, dy = self._dval(r, v, f2)
        if dy.any():
            fy = (f2[0] - step[0], f2[1] - step[1])
            dcls = CohomologyClass.of(dy_pos[0], dy, p)
            prod = self._mul(u, f1, dcls, fy)
            if prod is not None:
                sx = (-1) ** (u.degree + f1[0] + 2 * f1[1])
                total = (total + sx * prod[0].array) % p
        return bool(np.array_equal(lhs % p, total % p))


def bpu_table(p: int, top: int = 6) -> RingTable:
    """Reference constants for H*(BPU(p); F_p) in low degrees.

    Degrees 0..6 are spanned by 1, u2, u3 = Q0 u2, u2^2, u2^3 (zero in
    degrees 1 and 5, where u2 u3 = 0).  Degree 6 holds only u2^3 for p >= 3.
    """
    if top > 6:
        raise ValueError("constants are entered only up to degree 6")
    names = {0: ["1"], 1: [], 2: ["u2"], 3: ["u3"], 4: ["u2^2"], 5: [], 6: ["u2^3"]}
    betti = [len(names[n]) for n in range(top + 1)]
    mono = {"1": (0, 0), "u2": (1, 0), "u3": (0, 1), "u2^2": (2, 0), "u2^3": (3, 0)}
    where = {mono[nm]: (n, k) for n in range(top + 1) for k, nm in enumerate(names[n])}
    products = {}
    for a in range(top + 1):
        for b in range(top + 1 - a):
            t = np.zeros((betti[a], betti[b], betti[a + b]), dtype=np.int64)
            for k, x in enumerate(names[a]):
                for l, y in enumerate(names[b]):
                    e2 = mono[x][0] + mono[y][0]
                    e3 = mono[x][1] + mono[y][1]
                    if e3 > 1 or (e3 == 1 and e2 > 0):
                        continue  # u3^2 = 0 and u2 u3 = 0
                    hit = where.get((e2, e3))
                    if hit is not None:
                        t[k, l, hit[1]] = 1
            products[(a, b)] = t
    q0 = {n: np.zeros((betti[n + 1], betti[n]), dtype=np.int64) for n in range(top)}
    if top >= 3:
        q0[2][0, 0] = 1
    out = RingTable(p, top, betti, products, q0, labels=[names[n] for n in range(top + 1)])
    out.named.update({"u2": CohomologyClass.of(2, [1], p), "u3": CohomologyClass.of(3, [1], p)})
    return out


def bg_case(p: int, dtot: int = 4) -> tuple[CentralSS, dict[str, CohomologyClass]]:
    """BPU(p) x BPU(p) base, d2(z1) = a2, d3(z2) = a3 with a_i = u_i (x) 1 - 1 (x) u_i."""
    one = bpu_table(p)
    base = one.tensor(one)
    u2, u3 = one.named["u2"], one.named["u3"]
    b2, b3 = base.from_left(u2), base.from_left(u3)
    a2 = base.add(b2, base.from_right(u2), -1)
    a3 = base.add(b3, base.from_right(u3), -1)
    ss = CentralSS(base, dtot).set_transgressions(a2, a3)
    return ss, {"a2": a2, "a3": a3, "b2": b2, "b3": b3}


def ph2_setup(p: int = 3, top: int = 6, cat=None):
    """Resolution, ring table and named classes of the projective image of H2.

    v1, w1 are dual to the images of sigma_1 and beta; u2 is minus the class
    of H2 -> PH2 (the sign convention of the transgression) and u3 = Q0 u2.
    """
    from .catalog import GroupCatalog
    from .cohomology import extension_class, h1_class, hom_values, ring_table
    from .resolution import MinimalResolution

    cat = GroupCatalog(p) if cat is None else cat
    g = cat.ph2
    res = MinimalResolution.build(g, top, solve_top=False)
    table = ring_table(res, top)
    s1, be = cat.central_element(g, "sigma1"), cat.central_element(g, "beta")
    v1 = h1_class(res, hom_values(g, {s1: 1, be: 0}))
    w1 = h1_class(res, hom_values(g, {s1: 0, be: 1}))
    ext = extension_class(res, cat.proj_h2, cat.central_element(cat.h2, "xi"))
    u2 = table.scale(ext, -1)
    u3 = table.bockstein(u2)
    table.named.update({"v1": v1, "w1": w1, "u2": u2, "u3": u3})
    return res, table


def bh_case(p: int = 3, dtot: int = 4, ph2_table: RingTable | None = None,
            ) -> tuple[CentralSS, dict[str, CohomologyClass]]:
    """Base A2 x PH2 (Kunneth of the symbolic A2 model and the PH2 table),
    d2(z1) = x1 y1 - u2 and d3(z2) = x2 y1 - x1 y2 - u3, u_i pulled back to PH2."""
    from .symbolic import SymbolicRing

    top = dtot + 2
    right = ph2_table if ph2_table is not None else ph2_setup(p, top)[1]
    left = RingTable.from_symbolic(SymbolicRing(p, ("x", "y")), top)
    base = left.tensor(right)
    n = base.named
    x1y1 = base.mul(n["x1"], n["y1"])
    d2 = base.add(x1y1, n["u2"], -1)
    d3 = base.add(base.add(base.mul(n["x2"], n["y1"]), base.mul(n["x1"], n["y2"]), -1), n["u3"], -1)
    ss = CentralSS(base, dtot).set_transgressions(d2, d3)
    return ss, dict(n, d2z1=d2, d3z2=d3)


def exterior_mask(ss: CentralSS, degree: int) -> np.ndarray:
    """For a BH base: True on basis vectors whose A2 factor involves x1 or y1."""
    base = ss.base
    ring_basis = [base.left.ring.basis(i) for i in range(degree + 1)]
    return np.array([ring_basis[i][a][0] != 0 for i, a, _ in base.pairs[degree]], dtype=bool)
