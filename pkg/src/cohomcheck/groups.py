"""Monomial p-groups inside U(p) x U(p) and their central quotients.

An element of one factor is a pair (s, w): the matrix D(w) B^s with D(w) the
diagonal of omega^w_i (omega a primitive p^2-th root of unity) and B the
cyclic shift with B[i, i+1] = 1.  Conjugating a diagonal by B rotates it,
B D(w) B^-1 = D(w_2, ..., w_p, w_1), so

    (s, w) (s', w') = (s + s', w + rot^s(w')),   rot^s(w')_i = w'_{i+s}.

Two-factor elements are stored as flat integer rows
``[s1, w1_1..w1_p, s2, w2_1..w2_p]``.  Groups are enumerated; elements are
kept sorted by the lexicographic order of these rows, which is also the
order of their mixed-radix codes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Sequence

import numpy as np

DEFAULT_CAP = 10**6
# groups up to this order get a full multiplication table on demand
TABLE_LIMIT = 5000


def check_prime(p: int) -> int:
    p = int(p)
    if p < 3 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")
    return p


# --- element arithmetic on rows ----------------------------------------------


def row_length(p: int) -> int:
    return 2 * (p + 1)


def _factor_mul(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    s, w = x[..., 0], x[..., 1:]
    t, v = y[..., 0], y[..., 1:]
    idx = (np.arange(p) + s[..., None]) % p
    rot = np.take_along_axis(np.broadcast_to(v, np.broadcast_shapes(v.shape, idx.shape)), idx, axis=-1)
    out = np.empty(np.broadcast_shapes(x.shape, y.shape), dtype=np.int64)
    out[..., 0] = (s + t) % p
    out[..., 1:] = (w + rot) % (p * p)
    return out


def mul_rows(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """Product of (broadcast) stacks of two-factor rows."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    k = p + 1
    return np.concatenate([_factor_mul(x[..., :k], y[..., :k], p), _factor_mul(x[..., k:], y[..., k:], p)], axis=-1)


def inv_rows(x: np.ndarray, p: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    k = p + 1
    out = np.empty_like(x)
    for o in (0, k):
        s = x[..., o]
        w = x[..., o + 1:o + k]
        idx = (np.arange(p) - s[..., None]) % p
        out[..., o] = (-s) % p
        out[..., o + 1:o + k] = (-np.take_along_axis(w, idx, axis=-1)) % (p * p)
    return out


def codes(rows: np.ndarray, p: int) -> np.ndarray:
    """Mixed-radix codes; their order is the lexicographic order of rows."""
    rows = np.asarray(rows, dtype=np.int64)
    big = p > 5
    code = np.zeros(rows.shape[:-1], dtype=object if big else np.int64)
    for j in range(rows.shape[-1]):
        radix = p if j % (p + 1) == 0 else p * p
        col = rows[..., j].astype(object) if big else rows[..., j]
        code = code * radix + col
    return code


def identity_row(p: int) -> np.ndarray:
    return np.zeros(row_length(p), dtype=np.int64)


# --- elements ------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialElement:
    """An element (D(w1) B^s1, D(w2) B^s2) of the two-factor model."""

    p: int
    shift1: int
    weights1: tuple[int, ...]
    shift2: int = 0
    weights2: tuple[int, ...] | None = None

    def __post_init__(self):
        p = self.p
        w2 = self.weights2 if self.weights2 is not None else (0,) * p
        if len(self.weights1) != p or len(w2) != p:
            raise ValueError("weights must have length p")
        object.__setattr__(self, "shift1", int(self.shift1) % p)
        object.__setattr__(self, "shift2", int(self.shift2) % p)
        object.__setattr__(self, "weights1", tuple(int(a) % (p * p) for a in self.weights1))
        object.__setattr__(self, "weights2", tuple(int(a) % (p * p) for a in w2))

    @classmethod
    def from_row(cls, p: int, row) -> "MonomialElement":
        row = [int(a) for a in row]
        return cls(p, row[0], tuple(row[1:p + 1]), row[p + 1], tuple(row[p + 2:]))

    @classmethod
    def identity(cls, p: int) -> "MonomialElement":
        return cls.from_row(p, identity_row(p))

    def row(self) -> np.ndarray:
        return np.array([self.shift1, *self.weights1, self.shift2, *self.weights2], dtype=np.int64)

    def __mul__(self, other: "MonomialElement") -> "MonomialElement":
        return MonomialElement.from_row(self.p, mul_rows(self.row(), other.row(), self.p))

    def inverse(self) -> "MonomialElement":
        return MonomialElement.from_row(self.p, inv_rows(self.row(), self.p))

    def __pow__(self, n: int) -> "MonomialElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = MonomialElement.identity(self.p)
        for _ in range(n):
            out = out * self
        return out

    def to_json(self) -> dict:
        return {"shift1": self.shift1, "weights1": list(self.weights1),
                "shift2": self.shift2, "weights2": list(self.weights2)}

    def matrix(self, factor: int = 1) -> np.ndarray:
        """Complex matrix of one factor (for checks against the definitions)."""
        p = self.p
        s, w = (self.shift1, self.weights1) if factor == 1 else (self.shift2, self.weights2)
        omega = np.exp(2j * np.pi / (p * p))
        b = np.zeros((p, p))
        b[np.arange(p), (np.arange(p) + 1) % p] = 1
        return np.diag(omega ** np.array(w)) @ np.linalg.matrix_power(b, s)


def delta(x: MonomialElement) -> MonomialElement:
    """Diagonal embedding m -> (m, m) of the first factor."""
    return MonomialElement(x.p, x.shift1, x.weights1, x.shift1, x.weights1)


def gamma1(x: MonomialElement) -> MonomialElement:
    return MonomialElement(x.p, x.shift1, x.weights1)


def gamma2(x: MonomialElement) -> MonomialElement:
    return MonomialElement(x.p, 0, (0,) * x.p, x.shift1, x.weights1)


def standard_generators(p: int) -> dict[str, MonomialElement]:
    """The scalar xi, alpha, beta and sigma_1..sigma_p, plus their embeddings.

    Plain names live in the first factor; ``D.``, ``G1.`` and ``G2.`` prefixes
    give the diagonal, first-factor and second-factor embeddings.
    """
    p = check_prime(p)
    q = p * p
    base = {
        "xi": MonomialElement(p, 0, (p,) * p),
        "alpha": MonomialElement(p, 0, tuple(p * i % q for i in range(p))),
        "beta": MonomialElement(p, 1, (0,) * p),
    }
    for k in range(1, p + 1):
        w = [1] * p
        w[k - 1] = 1 + p * (p - 1)
        base[f"sigma{k}"] = MonomialElement(p, 0, tuple(w))
    out = dict(base)
    for name, x in base.items():
        out[f"D.{name}"] = delta(x)
        out[f"G1.{name}"] = gamma1(x)
        out[f"G2.{name}"] = gamma2(x)
    return out


# --- groups --------------------------------------------------------------------


def _normal_form(rows: np.ndarray, center: np.ndarray | None, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical coset representatives (least code over x*z) and their codes."""
    rows = np.asarray(rows, dtype=np.int64)
    if center is None or len(center) <= 1:
        return rows, codes(rows, p)
    cand = mul_rows(rows[:, None, :], center[None, :, :], p)
    cc = codes(cand, p)
    pick = np.argmin(cc, axis=1) if cc.dtype != object else np.array([min(range(cc.shape[1]), key=r.__getitem__) for r in cc], dtype=np.int64)
    ar = np.arange(rows.shape[0])
    return cand[ar, pick], cc[ar, pick]


def _closure_rows(gens: np.ndarray, p: int) -> np.ndarray:
    """All elements of the (small) subgroup generated by rows, unreduced."""
    elems = {tuple(identity_row(p))}
    frontier = [identity_row(p)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(mul_rows(x, g, p))
                if y not in elems:
                    elems.add(y)
                    nxt.append(np.array(y))
        frontier = nxt
    return np.array(sorted(elems), dtype=np.int64)


@dataclass(eq=False)
class FiniteGroup:
    """An enumerated subgroup of a (possibly quotiented) two-factor model.

    ``center`` lists every element of the central subgroup divided out;
    each coset is stored through its least representative.
    """

    p: int
    elements: np.ndarray
    codes: np.ndarray
    generators: np.ndarray
    center: np.ndarray | None = None
    name: str = ""
    gen_names: tuple[str, ...] = field(default_factory=tuple)

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def __len__(self) -> int:
        return self.order

    def normalize(self, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return _normal_form(rows, self.center, self.p)

    def index(self, rows) -> np.ndarray:
        """Positions of (unnormalized) rows; raises if some row is not in G."""
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        _, c = self.normalize(rows)
        pos = np.searchsorted(self.codes, c)
        pos = np.minimum(pos, self.order - 1)
        if not np.all(self.codes[pos] == c):
            bad = int(np.flatnonzero(self.codes[pos] != c)[0])
            raise KeyError(f"element {rows[bad].tolist()} not in {self.name or 'group'}")
        return pos.astype(np.int64)

    def contains(self, rows) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        _, c = self.normalize(rows)
        pos = np.minimum(np.searchsorted(self.codes, c), self.order - 1)
        return self.codes[pos] == c

    def element(self, i: int) -> MonomialElement:
        return MonomialElement.from_row(self.p, self.elements[i])

    @cached_property
    def identity(self) -> int:
        return int(self.index(identity_row(self.p))[0])

    @cached_property
    def gen_index(self) -> np.ndarray:
        return self.index(self.generators)

    @cached_property
    def table(self) -> np.ndarray:
        """Multiplication table: table[i, j] = index of e_i e_j."""
        n = self.order
        out = np.empty((n, n), dtype=np.int32)
        step = max(1, 2_000_000 // max(n, 1))
        for a in range(0, n, step):
            prod = mul_rows(self.elements[a:a + step, None, :], self.elements[None, :, :], self.p)
            out[a:a + step] = self.index(prod.reshape(-1, prod.shape[-1])).reshape(-1, n)
        return out

    @cached_property
    def inverse(self) -> np.ndarray:
        return self.index(inv_rows(self.elements, self.p))

    def mul(self, i, j):
        return self.table[i, j]

    def right_mul(self, idx: np.ndarray, g: int) -> np.ndarray:
        """Indices of e_i * e_g; avoids building the table for large groups."""
        if self.order <= TABLE_LIMIT or "table" in self.__dict__:
            return self.table[idx, g]
        return self.index(mul_rows(self.elements[idx], self.elements[g], self.p))

    def power_index(self, i: int, n: int) -> int:
        out = self.identity
        for _ in range(n):
            out = int(self.table[out, i])
        return out

    def subgroup(self, gens: Sequence[int], name: str = "") -> "FiniteGroup":
        return generate(self.elements[list(gens)], self.p, center=self.center, name=name)

    def to_json(self) -> str:
        doc = {
            "p": self.p,
            "generators": [MonomialElement.from_row(self.p, g).to_json() for g in self.generators],
            "quotient_center": None if self.center is None else
            [MonomialElement.from_row(self.p, z).to_json() for z in _minimal_gens(self.center, self.p)],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "FiniteGroup":
        doc = json.loads(text)
        p = doc["p"]

        def el(d):
            return MonomialElement(p, d["shift1"], d["weights1"], d["shift2"], d["weights2"]).row()

        gens = np.array([el(d) for d in doc["generators"]])
        center = None
        if doc.get("quotient_center"):
            center = _closure_rows(np.array([el(d) for d in doc["quotient_center"]]), p)
        return generate(gens, p, center=center)


def _minimal_gens(elems: np.ndarray, p: int) -> list[np.ndarray]:
    gens: list[np.ndarray] = []
    span = {tuple(identity_row(p))}
    for e in elems:
        if tuple(e) not in span:
            gens.append(e)
            span = {tuple(r) for r in _closure_rows(np.array(gens), p)}
    return gens


def generate(gens, p: int, center=None, cap: int = DEFAULT_CAP, name: str = "",
             gen_names: Sequence[str] = ()) -> FiniteGroup:
    """Enumerate the subgroup generated by ``gens`` (rows or MonomialElements).

    ``center`` is either None, a list of rows/elements generating a central
    subgroup, or the full list of its elements.  Elements are computed modulo
    that subgroup throughout.
    """
    p = check_prime(p)
    gens = np.array([g.row() if isinstance(g, MonomialElement) else np.asarray(g) for g in gens],
                    dtype=np.int64).reshape(-1, row_length(p))
    if center is not None:
        crow = np.array([z.row() if isinstance(z, MonomialElement) else np.asarray(z) for z in center],
                        dtype=np.int64).reshape(-1, row_length(p))
        center = _closure_rows(crow, p)
        for z in crow:
            for g in gens:
                if not np.array_equal(mul_rows(z, g, p), mul_rows(g, z, p)):
                    raise ValueError(f"{z.tolist()} does not commute with generator {g.tolist()}")
    ident, icode = _normal_form(identity_row(p)[None, :], center, p)
    known_rows = [ident]
    known_codes = np.array(icode)
    frontier = ident
    total = 1
    while frontier.shape[0]:
        cand = mul_rows(frontier[:, None, :], gens[None, :, :], p).reshape(-1, row_length(p))
        cand, cc = _normal_form(cand, center, p)
        cc_u, first = np.unique(cc, return_index=True)
        cand = cand[first]
        new = ~np.isin(cc_u, known_codes) if cc_u.dtype != object else np.array(
            [c not in set(known_codes.tolist()) for c in cc_u], dtype=bool)
        frontier = cand[new]
        if frontier.shape[0]:
            total += frontier.shape[0]
            if total > cap:
                raise RuntimeError(f"group enumeration exceeded the element cap {cap}")
            known_rows.append(frontier)
            known_codes = np.concatenate([known_codes, cc_u[new]])
    rows = np.concatenate(known_rows)
    order = np.argsort(known_codes, kind="stable")
    gnorm, _ = _normal_form(gens, center, p)
    return FiniteGroup(p, rows[order], known_codes[order], gnorm, center, name, tuple(gen_names))


def central_quotient(g: FiniteGroup, z, name: str = "") -> tuple[FiniteGroup, "Homomorphism"]:
    """G / <z> for central z (one element or a list), with the projection."""
    zs = [z] if isinstance(z, MonomialElement) or np.asarray(z).ndim == 1 else list(z)
    zrows = np.array([x.row() if isinstance(x, MonomialElement) else np.asarray(x) for x in zs], dtype=np.int64)
    g.index(zrows)
    # commuting with every generator is enough for centrality
    for z in zrows:
        zg = g.index(mul_rows(z[None, :], g.generators, g.p))
        gz = g.index(mul_rows(g.generators, z[None, :], g.p))
        bad = np.flatnonzero(zg != gz)
        if bad.size:
            raise ValueError(f"{z.tolist()} is not central: fails to commute with "
                             f"{g.generators[bad[0]].tolist()}")
    center = zrows if g.center is None else np.concatenate([zrows, g.center])
    q = generate(g.generators, g.p, center=center, name=name, gen_names=g.gen_names)
    proj = hom(g, q, q.generators)
    return q, proj


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str = "") -> FiniteGroup:
    """A x B for two groups living in the first factor; B moves to the second."""
    p = a.p
    k = p + 1
    if (a.elements[:, k:].any() or b.elements[:, k:].any()):
        raise ValueError("direct_product expects first-factor groups")

    def move(r):
        r = np.atleast_2d(r).copy()
        out = np.zeros_like(r)
        out[:, k:] = r[:, :k]
        return out

    gens = np.concatenate([a.generators, move(b.generators)])
    center = []
    if a.center is not None:
        center.append(a.center)
    if b.center is not None:
        center.append(move(b.center))
    center = np.concatenate(center) if center else None
    names = tuple(a.gen_names) + tuple(f"{n}'" for n in b.gen_names)
    return generate(gens, p, center=center, name=name, gen_names=names)


# --- homomorphisms -----------------------------------------------------------------


@dataclass(eq=False)
class Homomorphism:
    """A verified homomorphism given by images of the source generators.

    ``table`` maps every source element index to a target element index.
    """

    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray
    table: np.ndarray
    name: str = ""

    def __call__(self, i):
        return self.table[i]

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """self o other."""
        if other.target is not self.source:
            raise ValueError("composition mismatch")
        imgs = self.target.elements[self.table[other.table[other.source.gen_index]]]
        return hom(other.source, self.target, imgs, name=f"{self.name}o{other.name}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Homomorphism) and self.source is other.source
                and self.target is other.target and np.array_equal(self.table, other.table))

    __hash__ = object.__hash__

    @cached_property
    def kernel(self) -> np.ndarray:
        return np.flatnonzero(self.table == self.target.identity)

    @cached_property
    def is_injective(self) -> bool:
        return self.kernel.size == 1

    @cached_property
    def is_surjective(self) -> bool:
        return np.unique(self.table).size == self.target.order


def hom(source: FiniteGroup, target: FiniteGroup, images, name: str = "") -> Homomorphism:
    """Extend generator images along the Cayley graph and check every edge.

    Checking f(x g) = f(x) f(g) for all x and every generator g proves that
    the extension is a well-defined homomorphism.  A violation reports the
    generator word reaching the offending element.
    """
    imgs = np.array([x.row() if isinstance(x, MonomialElement) else np.asarray(x) for x in images],
                    dtype=np.int64).reshape(-1, row_length(source.p))
    if imgs.shape[0] != source.generators.shape[0]:
        raise ValueError("one image per source generator is required")
    himg = target.index(imgs)
    gi = source.gen_index
    n = source.order
    table = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    table[source.identity] = target.identity
    frontier = np.array([source.identity])
    while frontier.size:
        nxt = []
        for k, (g, h) in enumerate(zip(gi, himg)):
            dst = source.right_mul(frontier, g)
            val = target.right_mul(table[frontier], h)
            fresh = table[dst] < 0
            # duplicates within one batch must agree too
            d_new, first = np.unique(dst[fresh], return_index=True)
            table[d_new] = val[fresh][first]
            parent[d_new] = frontier[fresh][first]
            via[d_new] = k
            nxt.append(d_new)
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
    if (table < 0).any():
        raise ValueError("generators do not generate the source")
    # every Cayley edge must be respected
    everything = np.arange(n)
    for k, (g, h) in enumerate(zip(gi, himg)):
        bad = np.flatnonzero(table[source.right_mul(everything, g)] != target.right_mul(table, h))
        if bad.size:
            x = int(bad[0])
            word = []
            while x != source.identity:
                word.append(int(via[x]))
                x = int(parent[x])
            word = list(reversed(word)) + [k]
            names = [source.gen_names[i] if i < len(source.gen_names) else f"g{i}" for i in word]
            raise ValueError(f"relation violated along word {'*'.join(names) or '1'}")
    return Homomorphism(source, target, imgs, table, name)


def map_by(source: FiniteGroup, target: FiniteGroup, fn: Callable[[np.ndarray], np.ndarray],
           name: str = "") -> Homomorphism:
    """Homomorphism induced by a row map (applied to generators, then verified)."""
    return hom(source, target, fn(source.generators), name=name)


def inclusion(source: FiniteGroup, target: FiniteGroup, name: str = "") -> Homomorphism:
    return hom(source, target, source.generators, name=name)


# --- invariants --------------------------------------------------------------------


def _closure_idx(g: FiniteGroup, gens: Sequence[int]) -> np.ndarray:
    seen = np.zeros(g.order, dtype=bool)
    seen[g.identity] = True
    frontier = np.array([g.identity])
    gens = np.asarray(list(gens), dtype=np.int64)
    while frontier.size and gens.size:
        nxt = g.table[np.ix_(frontier, gens)].ravel()
        nxt = np.unique(nxt[~seen[nxt]])
        seen[nxt] = True
        frontier = nxt
    return np.flatnonzero(seen)


def element_orders(g: FiniteGroup) -> np.ndarray:
    n = g.order
    orders = np.zeros(n, dtype=np.int64)
    cur = np.arange(n)
    k = 1
    while (orders == 0).any():
        done = (cur == g.identity) & (orders == 0)
        orders[done] = k
        cur = g.table[cur, np.arange(n)]
        k += 1
    return orders


def center_of(g: FiniteGroup) -> np.ndarray:
    gi = g.gen_index
    t = g.table
    ok = np.all(t[:, gi] == t[gi, :].T, axis=1)
    return np.flatnonzero(ok)


def commutator_subgroup(g: FiniteGroup) -> np.ndarray:
    gi = g.gen_index
    t, inv = g.table, g.inverse
    comms = {int(t[t[inv[a], inv[b]], t[a, b]]) for a in gi for b in gi}
    # normal closure: conjugate by every element
    xs = np.arange(g.order)
    conj = {int(c) for s in comms for c in t[t[inv[xs], s], xs]}
    return _closure_idx(g, sorted(conj))


def abelian_invariants(g: FiniteGroup, sub: np.ndarray | None = None) -> list[int]:
    """Cyclic orders of G / sub for an abelian quotient of a p-group.

    For a finite abelian p-group the counts |{c : c^(p^k) = 1}| = p^(sum min(e_i, k))
    determine the exponents e_i, which are read off level by level.
    """
    p = g.p
    if sub is None:
        sub = np.array([g.identity])
    in_sub = np.zeros(g.order, dtype=bool)
    in_sub[sub] = True
    n_cosets = g.order // sub.size
    logs = []
    cur = np.arange(g.order)
    while True:
        cnt = int(in_sub[cur].sum()) // sub.size
        logs.append(round(np.log(cnt) / np.log(p)))
        if cnt == n_cosets:
            break
        y = cur
        for _ in range(p - 1):
            cur = g.table[cur, y]
        if len(logs) > 64:
            raise RuntimeError("abelian invariants did not stabilise")
    # factors of exponent >= k number logs[k] - logs[k-1]
    ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))] + [0]
    out = []
    for k in range(len(ge) - 1):
        out += [p ** (k + 1)] * (ge[k] - ge[k + 1])
    assert int(np.prod(out, dtype=object)) == n_cosets
    return sorted(out)


@dataclass(frozen=True)
class GroupInvariants:
    order: int
    exponent: int
    center: tuple[int, ...]
    commutator: tuple[int, ...]
    abelianization: tuple[int, ...]


def group_invariants(g: FiniteGroup) -> GroupInvariants:
    orders = element_orders(g)
    exp = 1
    for o in np.unique(orders):
        exp = exp * int(o) // gcd(exp, int(o))
    comm = commutator_subgroup(g)
    return GroupInvariants(g.order, exp, tuple(int(c) for c in center_of(g)), tuple(int(c) for c in comm),
                           tuple(abelian_invariants(g, comm)))


def is_abelian(g: FiniteGroup) -> bool:
    return center_of(g).size == g.order


def conjugacy_classes(g: FiniteGroup) -> list[tuple[int, np.ndarray]]:
    """(representative, members) for each class; representative is the least index."""
    t, inv = g.table, g.inverse
    xs = np.arange(g.order)
    label = np.full(g.order, -1, dtype=np.int64)
    out = []
    for x in range(g.order):
        if label[x] >= 0:
            continue
        cls = np.unique(t[t[inv[xs], x], xs])
        label[cls] = len(out)
        out.append((x, cls))
    return out
