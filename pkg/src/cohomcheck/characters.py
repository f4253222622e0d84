"""Exact characters of the monomial groups and mod-p Chern classes.

Character values live in Z[omega] = Z[x]/Phi_(p^2)(x), omega = exp(2 pi i/p^2),
stored on the power basis 1, x, ..., x^(p(p-1)-1).  A class function is a
vector of such values, one per group element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

import numpy as np

from .cohomology import hom_values
from .groups import FiniteGroup, MonomialElement, conjugacy_classes, gamma2, delta, inv_rows, mul_rows
from .symbolic import SymbolicClass, SymbolicRing, q1

REPS = ("lambda1", "lambda", "lambda_prime", "lambda_dd")


@dataclass(frozen=True)
class CyclotomicInt:
    p: int
    coeffs: tuple[int, ...]

    @staticmethod
    def degree(p: int) -> int:
        return p * (p - 1)

    @classmethod
    def from_poly(cls, p: int, poly) -> "CyclotomicInt":
        """Reduce an integer polynomial (coefficients of x^0, x^1, ...) mod Phi_(p^2)."""
        q, d = p * p, p * (p - 1)
        c = np.zeros(q, dtype=object)
        for k, a in enumerate(poly):
            c[k % q] += int(a)
        # x^(d + r) = -(x^r + x^(p + r) + ... + x^((p-2)p + r)) for 0 <= r < p
        for k in range(q - 1, d - 1, -1):
            a = c[k]
            if a:
                c[k] = 0
                for j in range(p - 1):
                    c[k - d + j * p] -= a
        return cls(p, tuple(int(a) for a in c[:d]))

    @classmethod
    def integer(cls, p: int, n: int) -> "CyclotomicInt":
        return cls.from_poly(p, [n])

    @classmethod
    def root(cls, p: int, k: int) -> "CyclotomicInt":
        """omega^k."""
        poly = [0] * (p * p)
        poly[k % (p * p)] = 1
        return cls.from_poly(p, poly)

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return self + (-other)

    def __mul__(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(self.p, tuple(other * a for a in self.coeffs))
        prod = np.convolve(np.array(self.coeffs, dtype=object), np.array(other.coeffs, dtype=object))
        return CyclotomicInt.from_poly(self.p, prod)

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicInt":
        q = self.p * self.p
        poly = [0] * q
        for k, a in enumerate(self.coeffs):
            poly[(-k) % q] += a
        return CyclotomicInt.from_poly(self.p, poly)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __str__(self) -> str:
        terms = [f"{a}*w^{k}" if k else str(a) for k, a in enumerate(self.coeffs) if a]
        return " + ".join(terms) or "0"


@lru_cache(maxsize=None)
def _root(p: int, k: int) -> CyclotomicInt:
    return CyclotomicInt.root(p, k)


def factor_trace(p: int, shift: int, weights) -> CyclotomicInt:
    """Trace of D(w) B^s: zero off the diagonal case, else sum of omega^w_i."""
    total = CyclotomicInt.integer(p, 0)
    if shift % p:
        return total
    for w in weights:
        total = total + _root(p, int(w))
    return total


def _traces(p: int, row) -> tuple[CyclotomicInt, CyclotomicInt]:
    row = [int(a) for a in row]
    k = p + 1
    return factor_trace(p, row[0], row[1:k]), factor_trace(p, row[k], row[k + 1:])


def character_value(rep: str, p: int, row) -> CyclotomicInt:
    """Value of lambda1 (first factor), lambda, lambda' or lambda'' on a two-factor row."""
    t1, t2 = _traces(p, row)
    if rep == "lambda1":
        return t1
    lam = t1.conj() * t2
    lam_prime = t1.conj() * t1
    if rep == "lambda":
        return lam
    if rep == "lambda_prime":
        return lam_prime
    if rep == "lambda_dd":
        return lam - lam_prime
    raise ValueError(f"unknown representation {rep!r}; expected one of {REPS}")


@dataclass
class VirtualCharacter:
    group: FiniteGroup
    values: list[CyclotomicInt]  # one per element

    @property
    def p(self) -> int:
        return self.group.p

    @property
    def dimension(self) -> int:
        return self.values[self.group.identity].to_int()

    def class_values(self) -> list[tuple[int, CyclotomicInt]]:
        """(representative, value) per conjugacy class; raises if not a class function."""
        out = []
        for rep, members in conjugacy_classes(self.group):
            v = self.values[rep]
            if any(self.values[int(m)] != v for m in members):
                raise ArithmeticError("values are not constant on a conjugacy class")
            out.append((rep, v))
        return out

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return VirtualCharacter(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __eq__(self, other) -> bool:
        return isinstance(other, VirtualCharacter) and self.values == other.values

    def scaled(self, n: int) -> "VirtualCharacter":
        return VirtualCharacter(self.group, [v * n for v in self.values])


def character_of(rep: str, group: FiniteGroup, embed=None) -> VirtualCharacter:
    """Character of rep on the stored elements of group (optionally mapped by embed first).

    The value must not depend on the coset representative of a stored central
    quotient; every representative in the coset is checked.
    """
    p = group.p
    rows = group.elements if embed is None else np.array([embed(group.element(i)).row() for i in range(group.order)])
    vals = [character_value(rep, p, r) for r in rows]
    if group.center is not None and len(group.center) > 1:
        for z in group.center:
            shifted = mul_rows(rows, np.asarray(z, dtype=np.int64)[None, :], p)
            if any(character_value(rep, p, r) != v for r, v in zip(shifted, vals)):
                raise ArithmeticError(f"{rep} is not constant on the central cosets of {group.name}")
    return VirtualCharacter(group, vals)


def trivial_character(group: FiniteGroup, n: int = 1) -> VirtualCharacter:
    return VirtualCharacter(group, [CyclotomicInt.integer(group.p, n)] * group.order)


# --- abelian decomposition ----------------------------------------------------------------------


@dataclass
class LinearCharacters:
    """The p^n linear characters of an elementary abelian group, by weight vector.

    With h_m the F_p-valued homomorphisms dual to the chosen generators, the
    character of weight (w_1..w_n) is a -> xi^(sum w_m h_m(a)), xi = omega^p.
    """

    group: FiniteGroup
    duals: np.ndarray  # (n, |A|) values of h_m

    @classmethod
    def of(cls, group: FiniteGroup, gen_elements: list[int]) -> "LinearCharacters":
        duals = [hom_values(group, {e: int(i == j) for j, e in enumerate(gen_elements)})
                 for i in range(len(gen_elements))]
        return cls(group, np.array(duals, dtype=np.int64))

    @property
    def weights(self) -> list[tuple[int, ...]]:
        return list(iproduct(range(self.group.p), repeat=self.duals.shape[0]))

    def exponents(self, w) -> np.ndarray:
        return (np.asarray(w) @ self.duals) % self.group.p

    def character(self, w) -> VirtualCharacter:
        p = self.group.p
        return VirtualCharacter(self.group, [_root(p, p * int(e)) for e in self.exponents(w)])


def inner_product(chi: VirtualCharacter, psi: VirtualCharacter) -> int:
    total = CyclotomicInt.integer(chi.p, 0)
    for a, b in zip(chi.values, psi.values):
        total = total + a * b.conj()
    n = total.to_int() if total.is_integer() else None
    if n is None or n % chi.group.order:
        raise ArithmeticError(f"inner product {total} is not an integer multiple of |A|")
    return n // chi.group.order


def decompose_abelian(chi: VirtualCharacter, chars: LinearCharacters) -> dict[tuple[int, ...], int]:
    """Multiplicity of every linear character (nonzero ones only)."""
    if chi.group is not chars.group:
        raise ValueError("character and linear characters live on different groups")
    p = chi.p
    # sum_a chi(a) conj(psi_w(a)) grouped by the exponent e(a) = w . h(a)
    out = {}
    for w in chars.weights:
        e = chars.exponents(w)
        total = CyclotomicInt.integer(p, 0)
        for a, v in enumerate(chi.values):
            total = total + v * _root(p, -p * int(e[a]))
        if not total.is_integer() or total.to_int() % chi.group.order:
            raise ArithmeticError(f"inner product with weight {w} is not an integer")
        m = total.to_int() // chi.group.order
        if m:
            out[tuple(int(x) for x in w)] = m
    return out


def recompose(mult: dict[tuple[int, ...], int], chars: LinearCharacters) -> VirtualCharacter:
    p = chars.group.p
    vals = [CyclotomicInt.integer(p, 0)] * chars.group.order
    for w, m in mult.items():
        e = chars.exponents(w)
        vals = [v + _root(p, p * int(x)) * m for v, x in zip(vals, e)]
    return VirtualCharacter(chars.group, vals)


# --- Chern classes --------------------------------------------------------------------------------


def _truncate(u: SymbolicClass, top: int) -> SymbolicClass:
    ring = u.ring
    return SymbolicClass(ring, {m: c for m, c in u.terms.items() if ring.monomial_degree(m) <= top})


def first_chern(ring: SymbolicRing, w) -> SymbolicClass:
    """c1 of the linear character of weight w: sum w_m times the m-th degree-2 generator."""
    out = ring.zero()
    for m, a in enumerate(w):
        if a % ring.p:
            out = out + ring.poly(m) * int(a)
    return out


def chern_mod_p(mult: dict[tuple[int, ...], int], ring: SymbolicRing, top: int | None = None) -> SymbolicClass:
    """Total Chern class prod (1 + c1(chi))^m_chi, negative m via the truncated inverse."""
    top = 2 * ring.p + 4 if top is None else top
    total = ring.one()
    for w, m in sorted(mult.items()):
        c = first_chern(ring, w)
        if m >= 0:
            factor = ring.one() + c
        else:
            # (1 + c)^-1 = sum_k (-c)^k
            factor, power = ring.one(), ring.one()
            for _ in range(top // 2):
                power = _truncate(power * (-c), top)
                factor = factor + power
        for _ in range(abs(m)):
            total = _truncate(total * factor, top)
    return total


def chern_component(total: SymbolicClass, k: int) -> SymbolicClass:
    """c_k: the degree-2k part of a total Chern class."""
    return SymbolicClass(total.ring, {m: c for m, c in total.terms.items() if total.ring.monomial_degree(m) == 2 * k})


# --- identities on the standard subgroups -----------------------------------------------------


def identity_checks(cat) -> dict[str, dict]:
    """Pullbacks of lambda'' along the diagonal and second-factor embeddings of p+^{1+2}."""
    p = cat.p
    g = cat.extraspecial
    lam1 = character_of("lambda1", g)
    on_delta = character_of("lambda_dd", g, embed=delta)
    on_gamma2 = character_of("lambda_dd", g, embed=gamma2)
    zero = trivial_character(g, 0)
    reduced = lam1.scaled(p) - trivial_character(g, p * p)
    return {
        "Delta^*(lambda'') = 0": {"holds": on_delta == zero, "dimension": on_delta.dimension},
        "Gamma2^*(lambda'') = p lambda1": {"holds": on_gamma2 == lam1.scaled(p),
                                           "dimension_lhs": on_gamma2.dimension,
                                           "dimension_rhs": lam1.scaled(p).dimension},
        "Gamma2^*(lambda'') = p lambda1 - p^2": {"holds": on_gamma2 == reduced},
    }


def a3_analysis(cat) -> dict:
    """Decomposition of lambda'' on A3 and its mod-p second Chern class."""
    p = cat.p
    a3 = cat.a3
    gens = [cat.central_element(a3, n) for n in ("D.alpha", "D.beta", "G2.xi")]
    chars = LinearCharacters.of(a3, gens)
    chi = character_of("lambda_dd", a3)
    mult = decompose_abelian(chi, chars)
    ring = SymbolicRing(p, ("x", "y", "z"))
    total = chern_mod_p(mult, ring)
    c2 = chern_component(total, 2)
    expected = {w: (1 if w[2] == 1 else -1) for w in chars.weights if w[2] in (0, 1)}
    return {
        "multiplicities": {",".join(map(str, w)): m for w, m in sorted(mult.items())},
        "matches stated pattern": mult == expected,
        "weight-1 count": sum(1 for w, m in mult.items() if m == 1 and w[2] == 1),
        "weight-0 count": sum(1 for w, m in mult.items() if m == -1 and w[2] == 0),
        "recomposes": recompose(mult, chars) == chi,
        "virtual dimension": chi.dimension,
        "c1": str(chern_component(total, 1)),
        "c2": str(c2),
        "c2 = 0 mod p": c2.is_zero(),
        "Q1(c2) = 0": q1(c2).is_zero(),
    }
