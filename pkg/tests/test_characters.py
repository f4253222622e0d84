from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohomcheck.characters import (CyclotomicInt, LinearCharacters, a3_analysis, character_of, chern_component,
                                   chern_mod_p, decompose_abelian, first_chern, identity_checks, inner_product,
                                   recompose, trivial_character)
from cohomcheck.symbolic import SymbolicRing, q1


def to_complex(z: CyclotomicInt) -> complex:
    w = np.exp(2j * np.pi / z.p**2)
    return complex(sum(c * w**k for k, c in enumerate(z.coeffs)))


def cyclotomics(p: int):
    return st.lists(st.integers(-5, 5), min_size=p * p, max_size=p * p).map(lambda c: CyclotomicInt.from_poly(p, c))


@settings(max_examples=80, deadline=None)
@given(cyclotomics(3), cyclotomics(3))
def test_cyclotomic_arithmetic_matches_complex(a, b):
    assert np.isclose(to_complex(a * b), to_complex(a) * to_complex(b))
    assert np.isclose(to_complex(a + b), to_complex(a) + to_complex(b))
    assert np.isclose(to_complex(a.conj()), np.conj(to_complex(a)))


@pytest.mark.parametrize("p", [3, 5])
def test_roots_of_unity(p):
    w = CyclotomicInt.root(p, 1)
    one = CyclotomicInt.integer(p, 1)
    acc = one
    for _ in range(p * p):
        acc = acc * w
    assert acc == one
    total = CyclotomicInt.integer(p, 0)
    for k in range(p * p):
        total = total + CyclotomicInt.root(p, k)
    assert total.is_integer() and total.to_int() == 0


def complex_lambda(x, rep: str) -> complex:
    t1 = np.trace(x.matrix(1))
    t2 = np.trace(x.matrix(2))
    vals = {"lambda1": t1, "lambda": np.conj(t1) * t2, "lambda_prime": abs(t1) ** 2}
    vals["lambda_dd"] = vals["lambda"] - vals["lambda_prime"]
    return vals[rep]


@pytest.mark.parametrize("rep", ["lambda1", "lambda", "lambda_prime", "lambda_dd"])
def test_character_values_match_matrices(cat3, rep):
    g = cat3.a3 if rep != "lambda1" else cat3.extraspecial
    chi = character_of(rep, g)
    for i in range(g.order):
        assert np.isclose(to_complex(chi.values[i]), complex_lambda(g.element(i), rep))


def test_virtual_dimension_zero(cat3):
    assert character_of("lambda_dd", cat3.a3).dimension == 0
    assert character_of("lambda", cat3.a3).dimension == 9


def test_orthogonality(cat3):
    g = cat3.a3
    gens = [cat3.central_element(g, n) for n in ("D.alpha", "D.beta", "G2.xi")]
    chars = LinearCharacters.of(g, gens)
    ws = chars.weights
    assert len(ws) == 27
    for a in ws[::4]:
        for b in ws[::5]:
            assert inner_product(chars.character(a), chars.character(b)) == int(a == b)


def test_decomposition_by_complex_inner_products(cat3):
    g = cat3.a3
    gens = [cat3.central_element(g, n) for n in ("D.alpha", "D.beta", "G2.xi")]
    chars = LinearCharacters.of(g, gens)
    mult = decompose_abelian(character_of("lambda_dd", g), chars)
    xi = np.exp(2j * np.pi / 3)
    vals = np.array([complex_lambda(g.element(i), "lambda_dd") for i in range(g.order)])
    for w in chars.weights:
        psi = xi ** chars.exponents(w)
        m = np.sum(vals * np.conj(psi)) / g.order
        assert np.isclose(m, round(m.real))
        assert round(m.real) == mult.get(tuple(w), 0)


def test_lambda_pattern_on_a3(cat3):
    a = a3_analysis(cat3)
    assert a["matches stated pattern"]
    assert a["weight-1 count"] == 9 and a["weight-0 count"] == 9
    assert a["recomposes"]
    assert a["c2 = 0 mod p"] and a["Q1(c2) = 0"]


def test_lambda1_on_center(cat3):
    """lambda1 restricted to <xi> is p copies of the weight-1 character."""
    g = cat3.extraspecial
    z = g.subgroup([cat3.central_element(g, "xi")], name="<xi>")
    chi = character_of("lambda1", z)
    chars = LinearCharacters.of(z, [cat3.central_element(z, "xi")])
    assert decompose_abelian(chi, chars) == {(1,): 3}


def test_identities(cat3):
    ids = identity_checks(cat3)
    assert ids["Delta^*(lambda'') = 0"]["holds"]
    # the second-factor pullback differs from 3 lambda1 by the constant class function 9
    assert ids["Gamma2^*(lambda'') = p lambda1 - p^2"]["holds"]
    assert not ids["Gamma2^*(lambda'') = p lambda1"]["holds"]


def test_chern_examples():
    ring = SymbolicRing(3, ("x", "y", "z"))
    g = ring.gens()
    assert first_chern(ring, (0, 0, 0)).is_zero()
    assert first_chern(ring, (1, 0, 0)) == g["x2"]
    total = chern_mod_p({(1, 0, 0): 2}, ring)
    assert chern_component(total, 1) == g["x2"] * 2
    assert chern_component(total, 2) == g["x2"] ** 2


def test_virtual_inverse():
    ring = SymbolicRing(3, ("x", "y", "z"))
    c = chern_mod_p({(1, 0, 0): 1, (1, 1, 0): 1}, ring, top=8)
    inv = chern_mod_p({(1, 0, 0): -1, (1, 1, 0): -1}, ring, top=8)
    prod = c * inv
    assert all(ring.monomial_degree(m) > 8 for m in (prod - ring.one()).terms)


def test_q1_vanishes_on_chern_classes():
    ring = SymbolicRing(3, ("x", "y", "z"))
    rng = np.random.default_rng(17)
    weights = [tuple(int(a) for a in w) for w in np.ndindex(3, 3, 3)]
    for _ in range(50):
        picks = rng.choice(len(weights), size=int(rng.integers(1, 5)), replace=False)
        mult = {weights[i]: int(rng.integers(1, 4)) for i in picks}
        total = chern_mod_p(mult, ring)
        for k in (1, 2):
            assert q1(chern_component(total, k)).is_zero()


def test_recompose_roundtrip(cat3):
    g = cat3.a3p
    gens = [cat3.central_element(g, n) for n in ("G1.alpha", "G2.beta", "G2.xi")]
    chars = LinearCharacters.of(g, gens)
    chi = character_of("lambda_dd", g)
    assert recompose(decompose_abelian(chi, chars), chars) == chi


def test_trivial_character_norm(cat3):
    one = trivial_character(cat3.a3)
    assert inner_product(one, one) == 1


def test_unknown_representation(cat3):
    with pytest.raises(ValueError):
        character_of("adjoint", cat3.a3)
