"""Cohomology classes, products, Bocksteins and induced maps.

With a minimal resolution every cochain Hom_G(P_n, F_p) = F_p^(b_n) is a
cocycle and no coboundary is nonzero, so a class of degree n is simply a
vector of length b_n: its value on the generator e_j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np
import scipy.sparse as sp

from .groups import FiniteGroup, Homomorphism
from .linalg import nullspace, rank, rref, solve
from .resolution import MinimalResolution, matmul_mod


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    vector: tuple[int, ...]

    @classmethod
    def of(cls, degree: int, vec, p: int) -> "CohomologyClass":
        return cls(degree, tuple(int(a) % p for a in np.asarray(vec).ravel()))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vector, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(self.vector)


def evaluate(res: MinimalResolution, n: int, u: np.ndarray, x: np.ndarray, m: int | None = None) -> np.ndarray:
    """Value of the cochain u (length b_n) on the columns of x in P_n."""
    m = res.p if m is None else m
    sums = MinimalResolution.augment(x, res.betti[n], res.order) % m
    return (np.asarray(u) @ sums) % m


# --- chain maps ---------------------------------------------------------------------


def chain_map(src: MinimalResolution, tgt: MinimalResolution, start: np.ndarray, shift: int, top: int,
              elem_map: np.ndarray | None = None) -> list[np.ndarray]:
    """Lift a map P^src_shift -> P^tgt_0 to maps P^src_(shift+i) -> P^tgt_i, i <= top.

    ``start`` holds the images of the generators of P^src_shift in P^tgt_0 and
    must satisfy (augmentation) o start o d = 0.  Maps are equivariant along
    ``elem_map`` (source element index -> target element index).  Returns the
    generator images per level, each of shape (b^src_(shift+i), dim P^tgt_i).
    """
    maps = [np.asarray(start, dtype=np.int64) % tgt.p]
    for i in range(1, top + 1):
        n = shift + i
        dx = src.images[n].T  # columns d(e_j) in P^src_(n-1)
        rhs = tgt.apply(maps[-1], dx, tgt.betti[i - 1], elem_map=elem_map)
        maps.append(tgt.solve(i, rhs).T)
    return maps


def unit_lift(res: MinimalResolution, n: int, u: np.ndarray) -> np.ndarray:
    """Images in P_0 of the generators of P_n for the cochain u: e_j -> u_j * 1."""
    out = np.zeros((res.betti[n], res.order), dtype=np.int64)
    out[:, res.group.identity] = np.asarray(u) % res.p
    return out


# --- products and Bockstein -----------------------------------------------------------

# Yoneda composition differs from the cup product by a degree-dependent sign;
# this convention makes Q0 a graded derivation and matches the elementary
# abelian model (see tests).
def _cup_sign(a: int, b: int) -> int:
    return -1 if (a * b) % 2 else 1


def product_matrix(res: MinimalResolution, a: int, u: np.ndarray, top: int) -> dict[int, np.ndarray]:
    """For u in H^a: the matrices of v -> u v from H^b to H^(a+b), b <= top.

    Entry [j, l] is the coefficient of e_j in u * e_l.
    """
    if a == 0:
        return {b: (int(np.asarray(u).ravel()[0]) * np.eye(res.betti[b], dtype=np.int64)) % res.p
                for b in range(top + 1)}
    maps = chain_map(res, res, unit_lift(res, a, u), a, top)
    out = {}
    for b in range(top + 1):
        sums = MinimalResolution.augment(maps[b].T, res.betti[b], res.order) % res.p  # (b_b, b_(a+b))
        out[b] = (_cup_sign(a, b) * sums.T) % res.p
    return out


def cup(res: MinimalResolution, u: CohomologyClass, v: CohomologyClass) -> CohomologyClass:
    a, b = u.degree, v.degree
    if a + b > res.max_degree:
        raise ValueError("product degree exceeds the resolution")
    mat = product_matrix(res, a, u.array, b)[b]
    return CohomologyClass.of(a + b, mat @ v.array, res.p)


def bockstein_matrix(res: MinimalResolution, n: int) -> np.ndarray:
    """Matrix (b_(n+1) x b_n) of Q0: H^n -> H^(n+1)."""
    p = res.p
    q = p * p
    lifted = res.lift(n + 1)  # rows: d~(e_j) in P_n over Z/p^2
    sums = MinimalResolution.augment(lifted.T, res.betti[n], res.order) % q  # (b_n, b_(n+1))
    if (sums % p).any():
        raise ArithmeticError("resolution is not minimal")
    return ((sums // p) % p).T


def bockstein(res: MinimalResolution, u: CohomologyClass) -> CohomologyClass:
    return CohomologyClass.of(u.degree + 1, bockstein_matrix(res, u.degree) @ u.array, res.p)


# --- induced maps ------------------------------------------------------------------------


def induced_map(h: Homomorphism, src: MinimalResolution, tgt: MinimalResolution, n: int) -> np.ndarray:
    """Matrix (b^src_n x b^tgt_n) of h^*: H^n(target) -> H^n(source).

    The chain map P^src -> P^tgt along h is solved in the target resolution,
    so this works for any homomorphism (restrictions and inflations alike).
    """
    if src.group is not h.source or tgt.group is not h.target:
        raise ValueError("resolutions do not match the homomorphism")
    start = np.zeros((1, tgt.order), dtype=np.int64)
    start[0, tgt.group.identity] = 1
    maps = chain_map(src, tgt, start, 0, n, elem_map=h.table)
    sums = MinimalResolution.augment(maps[n].T, tgt.betti[n], tgt.order) % tgt.p  # (b^tgt_n, b^src_n)
    return sums.T


@dataclass
class CosetRestriction:
    """Restriction to a subgroup solved entirely in the subgroup's resolution.

    P^G restricted to K is free over F_p[K] on t e_j (t a right coset
    representative); a chain map from it to P^K over the identity induces
    the restriction.  The big resolution only supplies its differentials.
    """

    big: MinimalResolution
    small: MinimalResolution
    h: Homomorphism
    maps: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        if not self.h.is_injective:
            raise ValueError("coset restriction needs an injective map")
        g, k = self.big.group, self.small.group
        img = self.h.table  # K index -> G index
        inv_img = np.full(g.order, -1, dtype=np.int64)
        inv_img[img] = np.arange(k.order)
        # right cosets K t: label every g by its coset and K-part
        coset = np.full(g.order, -1, dtype=np.int64)
        kpart = np.full(g.order, -1, dtype=np.int64)
        reps = []
        for x in range(g.order):
            if coset[x] >= 0:
                continue
            members = g.table[img, x]  # phi(k) x
            coset[members] = len(reps)
            kpart[members] = np.arange(k.order)
            reps.append(x)
        self.reps = np.array(reps)
        self._translated: dict[int, np.ndarray] = {}
        self.coset = coset
        self.kpart = kpart

    @property
    def index(self) -> int:
        return self.reps.size

    def to_k_coords(self, x: np.ndarray, blocks: int) -> np.ndarray:
        """Columns in P^G (blocks * |G|) -> K-free coordinates ((j, c), k)."""
        nk = self.small.order
        ng = self.big.order
        out = np.zeros((blocks * self.index * nk, x.shape[1]), dtype=np.int64)
        for j in range(blocks):
            pos = (j * self.index + self.coset) * nk + self.kpart
            out[pos] = x[j * ng:(j + 1) * ng]
        return out

    def translate(self, n: int) -> np.ndarray:
        """Columns t_c . d(e_j) for all (j, c), in K-free coordinates.

        Left translation by t permutes the coordinates of each block (g -> t g).
        """
        if n in self._translated:
            return self._translated[n]
        g = self.big
        table = g.group.table
        bprev = g.betti[n - 1]
        blocks = np.asarray(g.images[n]).reshape(g.betti[n], bprev, g.order) % g.p
        out = np.zeros((g.betti[n], self.index, bprev, g.order), dtype=np.int64)
        for c, t in enumerate(self.reps):
            out[:, c][:, :, table[t]] = blocks
        cols = out.reshape(g.betti[n] * self.index, bprev * g.order).T
        self._translated[n] = self.to_k_coords(cols, bprev)
        return self._translated[n]

    def build(self, top: int) -> None:
        small = self.small
        if not self.maps:
            m0 = np.zeros((self.index, small.order), dtype=np.int64)
            m0[:, small.group.identity] = 1
            self.maps.append(m0)
        for n in range(len(self.maps), top + 1):
            rhs = small.apply(self.maps[-1], self.translate(n), small.betti[n - 1])
            self.maps.append(small.solve(n, rhs).T)

    def coboundary(self, n: int) -> np.ndarray:
        """delta: Hom_K(P^G_(n-1), F_p) -> Hom_K(P^G_n, F_p) in (j, c) coordinates."""
        g = self.big
        if n == 0:
            return np.zeros((self.index, 0), dtype=np.int64)
        tx = self.translate(n)  # rows ((i, c'), k), columns (j, c)
        sums = tx.reshape(g.betti[n - 1] * self.index, self.small.order, -1).sum(axis=1)
        return sums.T % g.p

    def matrix(self, n: int) -> np.ndarray:
        """Matrix (b^K_n x b^G_n) of restriction H^n(G) -> H^n(K)."""
        self.build(n)
        p = self.big.p
        small = self.small
        chi = MinimalResolution.augment(self.maps[n].T, small.betti[n], small.order) % p  # (b^K_n, |T| b^G_n)
        delta = self.coboundary(n)
        lhs = np.concatenate([chi.T, delta], axis=1)
        bg = self.big.betti[n]
        rhs = np.zeros((bg * self.index, bg), dtype=np.int64)
        for j in range(bg):
            rhs[j * self.index:(j + 1) * self.index, j] = 1
        sol = solve(lhs, rhs, p)
        if sol is None:
            raise ArithmeticError("restriction system inconsistent")
        return sol[:small.betti[n]] % p


# --- extension classes --------------------------------------------------------------------


def _cocycle_table(ext: Homomorphism, z: int, section: np.ndarray) -> np.ndarray:
    """c(g, h) = s(g) s(h) s(gh)^-1 as exponents of z."""
    big, small = ext.source, ext.target
    p = big.p
    zpow = {big.identity: 0}
    cur = big.identity
    for e in range(1, p):
        cur = int(big.table[cur, z])
        zpow[cur] = e
    if len(zpow) != p or int(big.table[cur, z]) != big.identity:
        raise ValueError("kernel generator must have order p")
    n = small.order
    s = section
    prod = big.table[s[:, None], s[None, :]]
    sgh = s[small.table]
    val = big.table[prod, big.inverse[sgh]]
    lut = np.full(big.order, -1, dtype=np.int64)
    for k, e in zpow.items():
        lut[k] = e
    out = lut[val]
    if (out < 0).any():
        raise ValueError("section values do not differ by kernel elements")
    return out.reshape(n, n)


def default_section(ext: Homomorphism, shift: np.ndarray | None = None, z: int | None = None) -> np.ndarray:
    """Least preimage of each element (identity over identity); optionally times z^shift."""
    small = ext.target
    s = np.full(small.order, -1, dtype=np.int64)
    for x in range(ext.source.order - 1, -1, -1):
        s[ext.table[x]] = x
    s[small.identity] = ext.source.identity
    if shift is not None:
        big = ext.source
        for g in range(small.order):
            for _ in range(int(shift[g]) % big.p):
                s[g] = big.table[s[g], z]
    return s


def extension_class(res: MinimalResolution, ext: Homomorphism, z: int, section: np.ndarray | None = None,
                    ) -> CohomologyClass:
    """Class in H^2(G) of the central extension ext: E -> G with kernel <z> of order p.

    The cocycle is pulled back along the comparison map into the normalised
    bar resolution: for d_2(e_j) = sum_i c_ji e_i and d_1(e_i) = a_i,
    the value on e_j is sum_i c_ji^T C a_i.
    """
    big, g = ext.source, ext.target
    if res.group is not g:
        raise ValueError("resolution is not of the quotient group")
    p = res.p
    if not np.array_equal(big.table[z], big.table[:, z]):
        raise ValueError("kernel generator is not central")
    ker = np.sort(ext.kernel)
    zpowers = [big.identity]
    for _ in range(p - 1):
        zpowers.append(int(big.table[zpowers[-1], z]))
    if not ext.is_surjective or sorted(zpowers) != ker.tolist():
        raise ValueError("kernel of the extension is not <z> of order p")
    sec = default_section(ext) if section is None else section
    if sec[g.identity] != big.identity:
        raise ValueError("section must send the identity to the identity")
    return bar_class2(res, _cocycle_table(ext, z, sec))


def bar_class2(res: MinimalResolution, cc: np.ndarray) -> CohomologyClass:
    """Class of a normalised inhomogeneous 2-cocycle given as a |G| x |G| table."""
    n = res.order
    a = res.images[1].reshape(res.betti[1], n)  # d_1(e_i) in F_p[G]
    c2 = res.images[2].reshape(res.betti[2], res.betti[1], n)
    vals = np.einsum("jig,gh,ih->j", c2, np.asarray(cc) % res.p, a)
    return CohomologyClass.of(2, vals, res.p)


# --- bar-complex oracle ---------------------------------------------------------------------

BAR_BUDGET = 20000


def bar_coboundary(g: FiniteGroup, k: int) -> sp.csr_matrix:
    """Normalised inhomogeneous coboundary C^k -> C^(k+1) with trivial coefficients.

    Cochains are functions on (G minus 1)^k, indexed in mixed radix base |G|-1.
    """
    p = g.p
    nonid = np.array([x for x in range(g.order) if x != g.identity])
    m = nonid.size
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[nonid] = np.arange(m)
    if k == 0:
        return sp.csr_matrix((m, 1), dtype=np.int64)
    tuples = np.array(list(iproduct(range(m), repeat=k + 1)), dtype=np.int64).reshape(-1, k + 1)
    elems = nonid[tuples]
    rows, cols, vals = [], [], []
    nrow = tuples.shape[0]
    ridx = np.arange(nrow)
    weights = m ** np.arange(k - 1, -1, -1)

    def add(args, sign):
        # args: list of element-index columns; drop terms with an identity entry
        ok = np.ones(nrow, dtype=bool)
        code = np.zeros(nrow, dtype=np.int64)
        for t, col in enumerate(args):
            ok &= col != g.identity
            code += pos[col].clip(0) * weights[t]
        rows.append(ridx[ok])
        cols.append(code[ok])
        vals.append(np.full(ok.sum(), sign % p, dtype=np.int64))

    cols_e = [elems[:, t] for t in range(k + 1)]
    add(cols_e[1:], 1)
    for i in range(1, k + 1):
        merged = g.table[cols_e[i - 1], cols_e[i]]
        args = cols_e[:i - 1] + [merged] + cols_e[i + 1:]
        add(args, (-1) ** i)
    add(cols_e[:k], (-1) ** (k + 1))
    mat = sp.coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                        shape=(nrow, m ** k)).tocsr()
    mat.sum_duplicates()
    mat.data %= p
    mat.eliminate_zeros()
    return mat


def sparse_rank(mat: sp.csr_matrix, p: int, first_block: int | None = None, chunk: int = 20000,
                seed: int = 0) -> int:
    """Exact rank over F_p of a tall sparse matrix.

    A dense elimination on a first block of rows leaves a small kernel; the
    remaining rows are streamed against that kernel, which only shrinks.
    The rank is cols - final kernel dimension.
    """
    nrow, ncol = mat.shape
    if ncol == 0 or nrow == 0:
        return 0
    order = np.random.default_rng(seed).permutation(nrow)
    first = min(nrow, first_block or ncol + 32)
    head = mat.astype(np.float32)[order[:first]].toarray()
    r, piv = rref(head, p, overwrite=True, as_float=True)
    del head
    free = np.setdiff1d(np.arange(ncol), piv)
    kern = np.zeros((ncol, free.size), dtype=np.float32)
    kern[free, np.arange(free.size)] = 1
    if len(piv):
        kern[np.asarray(piv)] = (-r[:, free]) % p
    del r
    for s in range(first, nrow, chunk):
        if kern.shape[1] == 0:
            break
        blk = mat[order[s:s + chunk]]
        img = (blk @ kern.astype(np.float64)) % p
        if not img.any():
            continue
        ns = nullspace(img.astype(np.int64), p)  # (d', d)
        kern = matmul_mod(kern, ns.T, p).astype(np.float32)
    return ncol - kern.shape[1]


def bar_oracle(g: FiniteGroup, n: int, budget: int = BAR_BUDGET) -> int:
    """dim H^n(G; F_p) from ranks of normalised bar coboundaries."""
    m = g.order - 1
    if m ** n > budget:
        raise RuntimeError(f"bar oracle budget exceeded: |C^{n}| = {m ** n} > {budget}")
    p = g.p
    r_n = sparse_rank(bar_coboundary(g, n), p) if n >= 0 else 0
    r_prev = sparse_rank(bar_coboundary(g, n - 1), p) if n >= 1 else 0
    return m ** n - r_n - r_prev


# --- ring tables ------------------------------------------------------------------------------


@dataclass
class RingTable:
    """Truncated cohomology ring: dual-basis classes per degree, products and Q0.

    ``products[(a, b)][k, l]`` is the coefficient vector (length b_(a+b)) of
    the product of basis classes k (degree a) and l (degree b).
    ``q0[n]`` has shape (b_(n+1), b_n).
    """

    p: int
    max_degree: int
    betti: list[int]
    products: dict[tuple[int, int], np.ndarray]
    q0: dict[int, np.ndarray]
    named: dict[str, CohomologyClass] = field(default_factory=dict)
    labels: list[list[str]] | None = None
    ring: object | None = None  # symbolic ring for tables built by from_symbolic

    def basis(self, n: int) -> list[CohomologyClass]:
        return [CohomologyClass.of(n, np.eye(self.betti[n], dtype=np.int64)[i], self.p) for i in range(self.betti[n])]

    def zero(self, n: int) -> CohomologyClass:
        return CohomologyClass.of(n, np.zeros(self.betti[n] if n <= self.max_degree else 0, dtype=np.int64), self.p)

    def one(self) -> CohomologyClass:
        return CohomologyClass.of(0, [1], self.p)

    def mul(self, u: CohomologyClass, v: CohomologyClass) -> CohomologyClass:
        a, b = u.degree, v.degree
        if a + b > self.max_degree:
            raise ValueError("product beyond the table")
        t = self.products[(a, b)]
        vec = np.einsum("k,l,klj->j", u.array, v.array, t) % self.p
        return CohomologyClass.of(a + b, vec, self.p)

    def add(self, u: CohomologyClass, v: CohomologyClass, c: int = 1) -> CohomologyClass:
        if u.degree != v.degree:
            raise ValueError("degree mismatch")
        return CohomologyClass.of(u.degree, u.array + c * v.array, self.p)

    def scale(self, u: CohomologyClass, c: int) -> CohomologyClass:
        return CohomologyClass.of(u.degree, c * u.array, self.p)

    def bockstein(self, u: CohomologyClass) -> CohomologyClass:
        return CohomologyClass.of(u.degree + 1, self.q0[u.degree] @ u.array, self.p)

    def check_axioms(self) -> dict[str, bool]:
        """Unit, graded commutativity, associativity, Q0^2 = 0 and the Q0 Leibniz rule."""
        p, top = self.p, self.max_degree
        ok = {"unit": True, "commutative": True, "associative": True, "q0_square": True, "q0_derivation": True}
        one = self.one()
        for a in range(top + 1):
            for u in self.basis(a):
                if self.mul(one, u) != u or self.mul(u, one) != u:
                    ok["unit"] = False
        for a in range(top + 1):
            for b in range(top + 1 - a):
                for u in self.basis(a):
                    for v in self.basis(b):
                        uv, vu = self.mul(u, v), self.mul(v, u)
                        if uv != self.scale(vu, (-1) ** (a * b)):
                            ok["commutative"] = False
                        if a + b + 1 <= top and a + 1 <= top and b + 1 <= top:
                            lhs = self.bockstein(uv)
                            rhs = self.add(self.mul(self.bockstein(u), v), self.mul(u, self.bockstein(v)), (-1) ** a)
                            if lhs != rhs:
                                ok["q0_derivation"] = False
                        for c in range(top + 1 - a - b):
                            for w in self.basis(c):
                                if self.mul(self.mul(u, v), w) != self.mul(u, self.mul(v, w)):
                                    ok["associative"] = False
        for n in range(top - 1):
            if ((self.q0[n + 1] @ self.q0[n]) % p).any():
                ok["q0_square"] = False
        return ok

    def to_json(self) -> str:
        trip = []
        for (a, b), t in sorted(self.products.items()):
            for k, l, j in zip(*np.nonzero(t)):
                trip.append([a, int(k), b, int(l), int(j), int(t[k, l, j])])
        doc = {
            "p": self.p,
            "D": self.max_degree,
            "basis": self.labels or [[f"e{n}_{i}" for i in range(self.betti[n])] for n in range(self.max_degree + 1)],
            "products": trip,
            "q0": {str(n): m.tolist() for n, m in sorted(self.q0.items())},
            "named": {k: [v.degree, list(v.vector)] for k, v in sorted(self.named.items())},
        }
        return json.dumps(doc)

    def tensor(self, other: "RingTable") -> "TensorTable":
        return TensorTable.build(self, other)

    def label(self, u: CohomologyClass) -> str:
        names = self.labels[u.degree] if self.labels else [f"e{u.degree}_{i}" for i in range(self.betti[u.degree])]
        parts = []
        for i, c in enumerate(u.vector):
            if c:
                parts.append(names[i] if c == 1 else f"{c}*{names[i]}")
        return " + ".join(parts) or "0"

    @classmethod
    def from_symbolic(cls, ring, top: int) -> "RingTable":
        """Table of the elementary abelian model on its monomial basis."""
        from .symbolic import SymbolicClass, q0 as sym_q0

        p = ring.p
        bases = [ring.basis(n) for n in range(top + 1)]
        pos = [{m: k for k, m in enumerate(b)} for b in bases]
        mono = [[SymbolicClass(ring, {m: 1}) for m in b] for b in bases]
        products = {}
        for a in range(top + 1):
            for b in range(top + 1 - a):
                t = np.zeros((len(bases[a]), len(bases[b]), len(bases[a + b])), dtype=np.int64)
                for k, u in enumerate(mono[a]):
                    for l, v in enumerate(mono[b]):
                        for m, c in (u * v).terms.items():
                            t[k, l, pos[a + b][m]] = c
                products[(a, b)] = t
        q0 = {}
        for n in range(top):
            m = np.zeros((len(bases[n + 1]), len(bases[n])), dtype=np.int64)
            for k, u in enumerate(mono[n]):
                for mm, c in sym_q0(u).terms.items():
                    m[pos[n + 1][mm], k] = c
            q0[n] = m
        labels = [[str(x) for x in row] for row in mono]
        out = cls(p, top, [len(b) for b in bases], products, q0, labels=labels, ring=ring)
        for name, g in ring.gens().items():
            if g.degree <= top:
                out.named[name] = CohomologyClass.of(g.degree, g.vector(g.degree), p)
        return out

    def from_symbolic_class(self, u) -> CohomologyClass:
        """For tables built by from_symbolic: the class of a homogeneous symbolic element."""
        return CohomologyClass.of(u.degree, u.vector(u.degree), self.p)


@dataclass
class TensorTable(RingTable):
    """Kunneth product of two tables; degree-n basis is pairs (i, a, b), i the left degree."""

    left: RingTable | None = None
    right: RingTable | None = None
    pairs: list[list[tuple[int, int, int]]] = field(default_factory=list)

    @classmethod
    def build(cls, lt: RingTable, rt: RingTable) -> "TensorTable":
        p = lt.p
        top = min(lt.max_degree, rt.max_degree)
        index = [[(i, a, b) for i in range(n + 1) for a in range(lt.betti[i]) for b in range(rt.betti[n - i])]
                 for n in range(top + 1)]
        pos = [{key: k for k, key in enumerate(idx)} for idx in index]
        betti = [len(x) for x in index]
        products = {}
        for da in range(top + 1):
            for db in range(top + 1 - da):
                t = np.zeros((betti[da], betti[db], betti[da + db]), dtype=np.int64)
                for k, (i, a, b) in enumerate(index[da]):
                    for l, (i2, c, d) in enumerate(index[db]):
                        sign = (-1) ** ((da - i) * i2)
                        left = lt.products[(i, i2)][a, c]
                        right = rt.products[(da - i, db - i2)][b, d]
                        for x in np.flatnonzero(left):
                            for y in np.flatnonzero(right):
                                t[k, l, pos[da + db][(i + i2, x, y)]] += sign * left[x] * right[y]
                products[(da, db)] = t % p
        q0 = {}
        for n in range(top):
            m = np.zeros((betti[n + 1], betti[n]), dtype=np.int64)
            for k, (i, a, b) in enumerate(index[n]):
                if i < lt.max_degree:
                    col = lt.q0[i][:, a]
                    for x in np.flatnonzero(col):
                        m[pos[n + 1][(i + 1, x, b)], k] += col[x]
                if n - i < rt.max_degree:
                    col = rt.q0[n - i][:, b]
                    for y in np.flatnonzero(col):
                        m[pos[n + 1][(i, a, y)], k] += (-1) ** i * col[y]
            q0[n] = m % p
        labels = []
        for n in range(top + 1):
            row = []
            for i, a, b in index[n]:
                la = lt.labels[i][a] if lt.labels else f"e{i}_{a}"
                lb = rt.labels[n - i][b] if rt.labels else f"f{n - i}_{b}"
                row.append("*".join(x for x in (la, lb) if x != "1") or "1")
            labels.append(row)
        out = cls(p, top, betti, products, q0, labels=labels, left=lt, right=rt, pairs=index)
        for name, u in lt.named.items():
            if u.degree <= top:
                out.named[name] = out.from_left(u)
        for name, v in rt.named.items():
            if v.degree <= top:
                out.named[name] = out.from_right(v)
        return out

    def cross(self, u: CohomologyClass, v: CohomologyClass) -> CohomologyClass:
        """u x v = (u (x) 1)(1 (x) v)."""
        n = u.degree + v.degree
        vec = np.zeros(self.betti[n], dtype=np.int64)
        for k, (i, a, b) in enumerate(self.pairs[n]):
            if i == u.degree:
                vec[k] = u.vector[a] * v.vector[b]
        return CohomologyClass.of(n, vec, self.p)

    def from_left(self, u: CohomologyClass) -> CohomologyClass:
        return self.cross(u, self.right.one())

    def from_right(self, v: CohomologyClass) -> CohomologyClass:
        return self.cross(self.left.one(), v)


def ring_table(res: MinimalResolution, top: int | None = None) -> RingTable:
    """Products of all basis pairs of total degree <= top, and Q0 below top."""
    top = res.max_degree if top is None else top
    if top > 0 and not res.can_solve(top - 1):
        raise ValueError("resolution cannot solve in the top degree")
    p = res.p
    b = res.betti
    products: dict[tuple[int, int], np.ndarray] = {}
    for a in range(top + 1):
        mats = [product_matrix(res, a, np.eye(b[a], dtype=np.int64)[k], top - a) for k in range(b[a])]
        for bb in range(top - a + 1):
            t = np.zeros((b[a], b[bb], b[a + bb]), dtype=np.int64)
            for k in range(b[a]):
                t[k] = mats[k][bb].T
            products[(a, bb)] = t % p
    q0 = {n: bockstein_matrix(res, n) for n in range(top)}
    return RingTable(p, top, list(b[:top + 1]), products, q0)


def cohomology_with_ring(g: FiniteGroup, top: int) -> tuple[MinimalResolution, RingTable]:
    res = MinimalResolution.build(g, top)
    return res, ring_table(res, top)



# --- degree one ---------------------------------------------------------------------------------


def h1_class(res: MinimalResolution, values: np.ndarray) -> CohomologyClass:
    """H^1 class of the homomorphism G -> F_p given by its values on all elements."""
    a = res.images[1].reshape(res.betti[1], res.order)
    return CohomologyClass.of(1, a @ (np.asarray(values) % res.p), res.p)


def hom_values(g: FiniteGroup, gen_values: dict[int, int]) -> np.ndarray:
    """Extend values on generators (element index -> F_p) to a homomorphism G -> F_p.

    Raises ValueError when the assignment is not a homomorphism.
    """
    p = g.p
    vals = np.full(g.order, -1, dtype=np.int64)
    vals[g.identity] = 0
    frontier = [g.identity]
    gens = list(gen_values.items())
    while frontier:
        nxt = []
        for x in frontier:
            for s, v in gens:
                y = int(g.table[x, s])
                val = (vals[x] + v) % p
                if vals[y] < 0:
                    vals[y] = val
                    nxt.append(y)
                elif vals[y] != val:
                    raise ValueError("values do not define a homomorphism")
        frontier = nxt
    if (vals < 0).any():
        raise ValueError("generators do not generate the group")
    return vals
