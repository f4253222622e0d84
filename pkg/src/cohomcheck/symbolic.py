"""Symbolic mod-p cohomology of elementary abelian p-groups.

H*(B(Z/p)^n; F_p) = Lambda(a_1..a_n) (x) F_p[A_1..A_n] with |a_i| = 1 and
A_i = Q0 a_i.  A monomial is (mask, exps): the set of exterior factors as a
bitmask (multiplied in increasing index order) and the exponent vector of the
polynomial factors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

Monomial = tuple[int, tuple[int, ...]]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _merge_sign(m1: int, m2: int) -> int:
    """Sign of reordering a_(m1) a_(m2) into increasing order; 0 if they overlap."""
    if m1 & m2:
        return 0
    swaps = 0
    for j in range(m2.bit_length()):
        if m2 >> j & 1:
            swaps += _popcount(m1 >> (j + 1))
    return -1 if swaps % 2 else 1


@dataclass(frozen=True)
class SymbolicRing:
    p: int
    names: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.names)

    def monomial_degree(self, mono: Monomial) -> int:
        return _popcount(mono[0]) + 2 * sum(mono[1])

    def zero(self) -> "SymbolicClass":
        return SymbolicClass(self, {})

    def one(self) -> "SymbolicClass":
        return SymbolicClass(self, {(0, (0,) * self.rank): 1})

    def ext(self, i: int | str) -> "SymbolicClass":
        i = self._pos(i)
        return SymbolicClass(self, {(1 << i, (0,) * self.rank): 1})

    def poly(self, i: int | str, k: int = 1) -> "SymbolicClass":
        i = self._pos(i)
        e = [0] * self.rank
        e[i] = k
        return SymbolicClass(self, {(0, tuple(e)): 1})

    def _pos(self, i: int | str) -> int:
        return self.names.index(i) if isinstance(i, str) else i

    def gens(self) -> dict[str, "SymbolicClass"]:
        """Names like ``x1`` (exterior) and ``x2`` (polynomial)."""
        out = {}
        for i, n in enumerate(self.names):
            out[f"{n}1"] = self.ext(i)
            out[f"{n}2"] = self.poly(i)
        return out

    def basis(self, degree: int) -> list[Monomial]:
        """Monomials of one degree in canonical order (mask ascending, then exponents)."""
        out = []
        for mask in range(1 << self.rank):
            rest = degree - _popcount(mask)
            if rest < 0 or rest % 2:
                continue
            for exps in _compositions(rest // 2, self.rank):
                out.append((mask, exps))
        return sorted(out)

    def dim(self, degree: int) -> int:
        return len(self.basis(degree))

    def parse(self, text: str) -> "SymbolicClass":
        """Parse sums of terms like ``2*x1*y2^3 - z1``."""
        g = self.gens()
        total = self.zero()
        text = text.replace(" ", "").replace("-", "+-")
        for term in filter(None, text.split("+")):
            coef = 1
            if term.startswith("-"):
                coef, term = -1, term[1:]
            val = self.one()
            for f in term.split("*"):
                if f.isdigit():
                    val = val * int(f)
                    continue
                base, _, e = f.partition("^")
                val = val * (g[base] ** (int(e) if e else 1))
            total = total + val * coef
        return total


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class SymbolicClass:
    ring: SymbolicRing
    terms: dict

    def __post_init__(self):
        p = self.ring.p
        clean = {m: c % p for m, c in self.terms.items() if c % p}
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.ring, tuple(self.terms.items())))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, SymbolicClass) and self.ring == other.ring and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> set[int]:
        return {self.ring.monomial_degree(m) for m in self.terms}

    @property
    def degree(self) -> int:
        d = self.degrees
        if len(d) != 1:
            raise ValueError("class is not homogeneous")
        return d.pop()

    def _check(self, other: "SymbolicClass"):
        if other.ring != self.ring:
            raise ValueError("classes live in different rings")

    def __add__(self, other: "SymbolicClass") -> "SymbolicClass":
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return SymbolicClass(self.ring, t)

    def __neg__(self) -> "SymbolicClass":
        return SymbolicClass(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SymbolicClass") -> "SymbolicClass":
        return self + (-other)

    def __mul__(self, other) -> "SymbolicClass":
        if isinstance(other, (int, np.integer)):
            return SymbolicClass(self.ring, {m: c * int(other) for m, c in self.terms.items()})
        self._check(other)
        t: dict = {}
        for (m1, e1), c1 in self.terms.items():
            for (m2, e2), c2 in other.terms.items():
                s = _merge_sign(m1, m2)
                if s == 0:
                    continue
                key = (m1 | m2, tuple(a + b for a, b in zip(e1, e2)))
                t[key] = t.get(key, 0) + s * c1 * c2
        return SymbolicClass(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymbolicClass":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(mono, 0)

    def vector(self, degree: int) -> np.ndarray:
        basis = self.ring.basis(degree)
        return np.array([self.terms.get(m, 0) for m in basis], dtype=np.int64)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (mask, exps), c in self.terms.items():
            fs = [f"{self.ring.names[i]}1" for i in range(self.ring.rank) if mask >> i & 1]
            fs += [f"{self.ring.names[i]}2" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            mono = "*".join(fs) or "1"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> str:
        return json.dumps([[mask, list(exps), c] for (mask, exps), c in self.terms.items()])


def _derivation(u: SymbolicClass, power: int) -> SymbolicClass:
    """Derivation with a_i -> A_i^power and A_i -> 0."""
    ring = u.ring
    t: dict = {}
    for (mask, exps), c in u.terms.items():
        before = 0
        for i in range(ring.rank):
            if not mask >> i & 1:
                continue
            sign = -1 if before % 2 else 1
            e = list(exps)
            e[i] += power
            key = (mask & ~(1 << i), tuple(e))
            t[key] = t.get(key, 0) + sign * c
            before += 1
    return SymbolicClass(ring, t)


def q0(u: SymbolicClass) -> SymbolicClass:
    return _derivation(u, 1)


def q1(u: SymbolicClass) -> SymbolicClass:
    return _derivation(u, u.ring.p)


@dataclass(frozen=True)
class RingMap:
    """Algebra map src -> tgt determined by a_i -> sum_j m[i, j] a'_j (and A_i likewise)."""

    src: SymbolicRing
    tgt: SymbolicRing
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, src: SymbolicRing, tgt: SymbolicRing, m) -> "RingMap":
        m = np.asarray(m, dtype=np.int64) % src.p
        if m.shape != (src.rank, tgt.rank):
            raise ValueError("matrix shape does not match the ring ranks")
        return cls(src, tgt, tuple(tuple(int(x) for x in row) for row in m))

    @classmethod
    def from_images(cls, src: SymbolicRing, tgt: SymbolicRing, images: dict[str, dict[str, int]]) -> "RingMap":
        """images: source name -> {target name: coefficient}; unnamed sources go to 0."""
        m = np.zeros((src.rank, tgt.rank), dtype=np.int64)
        for s, row in images.items():
            for t, c in row.items():
                m[src.names.index(s), tgt.names.index(t)] = c
        return cls.from_matrix(src, tgt, m)

    def _image(self, i: int, poly: bool) -> SymbolicClass:
        out = self.tgt.zero()
        for j, c in enumerate(self.matrix[i]):
            if c:
                out = out + (self.tgt.poly(j) if poly else self.tgt.ext(j)) * c
        return out

    def __call__(self, u: SymbolicClass) -> SymbolicClass:
        if u.ring != self.src:
            raise ValueError("class is not in the source ring")
        ext = [self._image(i, False) for i in range(self.src.rank)]
        pol = [self._image(i, True) for i in range(self.src.rank)]
        out = self.tgt.zero()
        for (mask, exps), c in u.terms.items():
            term = self.tgt.one() * c
            for i in range(self.src.rank):
                if mask >> i & 1:
                    term = term * ext[i]
            for i, e in enumerate(exps):
                if e:
                    term = term * pol[i] ** e
            out = out + term
        return out


def identity_map(ring: SymbolicRing) -> RingMap:
    return RingMap.from_matrix(ring, ring, np.eye(ring.rank, dtype=np.int64))


# --- the submodules M and M' ------------------------------------------------------------------


def in_quotient_shape(mono: Monomial, z: int) -> bool:
    """Monomials surviving modulo M: no z1 factor and exactly one z2."""
    mask, exps = mono
    return not mask >> z & 1 and exps[z] == 1


def reduce_mod_m(u: SymbolicClass, z: int | str = "z") -> dict[Monomial, int]:
    """Residue of u in H*(BA_3)/M = (x, y part){z2}.

    M is generated over the x, y subring by 1, z1, z1 z2 and z2^i, z1 z2^i
    with i >= 2, so exactly the monomials with no z1 and z2-exponent one
    survive.  The result maps each surviving monomial to its coefficient.
    """
    ring = u.ring
    if ring.rank != 3:
        raise ValueError("reduction modulo M needs the rank-3 model")
    z = ring._pos(z)
    return {m: c for m, c in u.terms.items() if in_quotient_shape(m, z)}


def residue_class(u: SymbolicClass, z: int | str = "z") -> SymbolicClass:
    return SymbolicClass(u.ring, reduce_mod_m(u, z))


def m_generators(ring: SymbolicRing, z: int | str = "z", top: int = 4) -> list[SymbolicClass]:
    """The listed M-generators over the x, y subring, z2 powers up to ``top``."""
    z1, z2 = ring.ext(z), ring.poly(z)
    gens = [ring.one(), z1, z1 * z2]
    for i in range(2, top + 1):
        gens += [z2 ** i, z1 * z2 ** i]
    return gens


def xy_monomials(ring: SymbolicRing, z: int | str, max_degree: int) -> list[SymbolicClass]:
    """Monomials in the variables other than z up to a degree."""
    zi = ring._pos(z)
    out = []
    for d in range(max_degree + 1):
        for mask, exps in ring.basis(d):
            if not mask >> zi & 1 and exps[zi] == 0:
                out.append(SymbolicClass(ring, {(mask, exps): 1}))
    return out


def coefficient_xyz2(u: SymbolicClass, z: int | str = "z") -> int:
    """Coefficient of x1 y1 z2 in the residue modulo M (the two non-z variables, in order)."""
    ring = u.ring
    zi = ring._pos(z)
    others = [i for i in range(3) if i != zi]
    mask = (1 << others[0]) | (1 << others[1])
    exps = tuple(1 if i == zi else 0 for i in range(3))
    return reduce_mod_m(u, z).get((mask, exps), 0)


# --- the coefficient sweep ---------------------------------------------------------------------


def coefficient_sweep(p: int) -> list[dict]:
    """For every (a, a1, a2): images of a x1y1z2 + a1 w1x1z2 + a2 w1y1z2 under both maps.

    The class lives in the model with variables x, y, w, z (w dual to the
    second-factor generator); the first map sends w to y, the second sends
    y to 0 and w to y.
    """
    big = SymbolicRing(p, ("x", "y", "w", "z"))
    small = SymbolicRing(p, ("x", "y", "z"))
    g = RingMap.from_images(big, small, {"x": {"x": 1}, "y": {"y": 1}, "w": {"y": 1}, "z": {"z": 1}})
    gp = RingMap.from_images(big, small, {"x": {"x": 1}, "w": {"y": 1}, "z": {"z": 1}})
    b = big.gens()
    rows = []
    for a, a1, a2 in product(range(p), repeat=3):
        cls = b["x1"] * b["y1"] * b["z2"] * a + b["w1"] * b["x1"] * b["z2"] * a1 + b["w1"] * b["y1"] * b["z2"] * a2
        img, imgp = g(cls), gp(cls)
        rows.append({
            "triple": (a, a1, a2),
            "via_g": coefficient_xyz2(img),
            "via_g_prime": coefficient_xyz2(imgp),
            "q1_zero_g": q1(residue_class(img)).is_zero(),
            "q1_zero_g_prime": q1(residue_class(imgp)).is_zero(),
        })
    return rows


def random_class(ring: SymbolicRing, degree: int, rng: np.random.Generator) -> SymbolicClass:
    basis = ring.basis(degree)
    coefs = rng.integers(0, ring.p, len(basis))
    return SymbolicClass(ring, {m: int(c) for m, c in zip(basis, coefs)})


def exterior_subsets(n: int):
    for k in range(n + 1):
        yield from combinations(range(n), k)
