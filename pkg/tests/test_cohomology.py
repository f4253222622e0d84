from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from cohomcheck.cohomology import (CohomologyClass, CosetRestriction, bar_class2, bockstein, cup, default_section,
                                   extension_class, h1_class, hom_values, induced_map, ring_table)
from cohomcheck.groups import inclusion
from cohomcheck.resolution import MinimalResolution


def all_homs(g, gens, p):
    """Values on all elements of every homomorphism G -> F_p, given generator indices."""
    for vals in product(range(p), repeat=len(gens)):
        yield hom_values(g, dict(zip(gens, vals)))


def alexander_whitney(f: np.ndarray, h: np.ndarray, p: int) -> np.ndarray:
    return np.outer(f, h) % p


def carry_cocycle(g, f: np.ndarray, p: int) -> np.ndarray:
    """(f(a) + f(b) - f(ab)) / p with f lifted to 0..p-1: the Bockstein of f on bar cochains."""
    return ((f[:, None] + f[None, :] - f[g.table]) // p) % p


@pytest.fixture(scope="module")
def a2_data(cat3):
    g = cat3.a2
    res = MinimalResolution.build(g, 5)
    gens = [cat3.central_element(g, "alpha"), cat3.central_element(g, "beta")]
    return g, res, ring_table(res, 4), gens


@pytest.fixture(scope="module")
def ph2_gens(cat3):
    g = cat3.ph2
    return [cat3.central_element(g, "sigma1"), cat3.central_element(g, "beta")]


def test_cup_matches_bar_cocycle_a2(a2_data):
    g, res, _, gens = a2_data
    for f in all_homs(g, gens, 3):
        for h in all_homs(g, gens, 3):
            lhs = cup(res, h1_class(res, f), h1_class(res, h))
            assert lhs == bar_class2(res, alexander_whitney(f, h, 3))


def test_cup_matches_bar_cocycle_ph2(ph2, ph2_gens):
    res, table = ph2
    g = res.group
    for f in all_homs(g, ph2_gens, 3):
        for h in all_homs(g, ph2_gens, 3):
            u, v = h1_class(res, f), h1_class(res, h)
            assert table.mul(u, v) == bar_class2(res, alexander_whitney(f, h, 3))


def test_bockstein_matches_carry_cocycle(a2_data, ph2, ph2_gens):
    g, res, _, gens = a2_data
    for f in all_homs(g, gens, 3):
        assert bockstein(res, h1_class(res, f)) == bar_class2(res, carry_cocycle(g, f, 3))
    res2, _ = ph2
    for f in all_homs(res2.group, ph2_gens, 3):
        assert bockstein(res2, h1_class(res2, f)) == bar_class2(res2, carry_cocycle(res2.group, f, 3))


def test_cyclic_bockstein_nonzero(cat3):
    g = cat3.c_beta
    res = MinimalResolution.build(g, 3)
    x = h1_class(res, hom_values(g, {int(g.gen_index[0]): 1}))
    assert not bockstein(res, x).is_zero()


def test_a2_table_matches_model(a2_data):
    _, res, table, _ = a2_data
    assert table.betti == [1, 2, 3, 4, 5]
    assert all(table.check_axioms().values())


def test_ph2_table_axioms_and_named_classes(ph2):
    res, table = ph2
    assert all(table.check_axioms().values())
    n = table.named
    assert table.mul(table.one(), n["v1"]) == n["v1"]
    assert table.mul(n["u2"], n["w1"]).is_zero()
    assert not table.mul(n["u2"], n["v1"]).is_zero()
    for d in (1, 2, 3):
        for u in table.basis(d):
            assert table.bockstein(table.bockstein(u)).is_zero()


def test_q0_derivation_on_random_pairs(ph2):
    _, t = ph2
    rng = np.random.default_rng(3)
    for _ in range(30):
        a, b = (int(x) for x in rng.integers(1, 3, 2))
        u = CohomologyClass.of(a, rng.integers(0, 3, t.betti[a]), 3)
        v = CohomologyClass.of(b, rng.integers(0, 3, t.betti[b]), 3)
        lhs = t.bockstein(t.mul(u, v))
        rhs = t.add(t.mul(t.bockstein(u), v), t.scale(t.mul(u, t.bockstein(v)), (-1) ** a))
        assert lhs == rhs


def test_extension_class_extraspecial(cat3, a2_data):
    g, res, table, gens = a2_data
    z = cat3.central_element(cat3.extraspecial, "xi")
    e = extension_class(res, cat3.proj_extraspecial, z)
    x = h1_class(res, hom_values(g, {gens[0]: 1, gens[1]: 0}))
    y = h1_class(res, hom_values(g, {gens[0]: 0, gens[1]: 1}))
    assert e == table.scale(table.mul(x, y), -1)


def test_extension_class_split_is_zero(cat3):
    rb = MinimalResolution.build(cat3.c_beta, 3)
    e = extension_class(rb, cat3.proj_beta, cat3.central_element(cat3.beta_xi, "xi"))
    assert e.is_zero()


def test_extension_class_section_independent(cat3, ph2):
    res, table = ph2
    ext = cat3.proj_h2
    z = cat3.central_element(cat3.h2, "xi")
    base = extension_class(res, ext, z)
    rng = np.random.default_rng(11)
    for _ in range(3):
        shift = rng.integers(0, 3, res.order)
        shift[res.group.identity] = 0
        assert extension_class(res, ext, z, default_section(ext, shift, z)) == base
    assert table.scale(base, -1) == table.named["u2"]


def test_extension_class_rejects_noncentral(cat3, a2_data):
    _, res, _, _ = a2_data
    ex = cat3.extraspecial
    noncentral = cat3.central_element(ex, "alpha")
    with pytest.raises(ValueError):
        extension_class(res, cat3.proj_extraspecial, noncentral)


def test_extension_class_natural(cat3, ph2):
    """Restricting u2 to <sigma1> equals the class of the pulled-back extension."""
    res, table = ph2
    rs = MinimalResolution.build(cat3.c_sigma, 3)
    on_sigma = induced_map(cat3.iota_sigma, rs, res, 2) @ table.named["u2"].array % 3
    ext = extension_class(rs, cat3.proj_sigma, cat3.central_element(cat3.sigma_lift, "xi"))
    assert np.array_equal(on_sigma, (-ext.array) % 3) and on_sigma.any()


@pytest.mark.parametrize("sub", ["c_sigma", "c_beta"])
def test_coset_restriction_matches_induced_map(cat3, ph2, sub):
    res, _ = ph2
    k = getattr(cat3, sub)
    rk = MinimalResolution.build(k, 5)
    h = cat3.iota_sigma if sub == "c_sigma" else cat3.iota_beta
    cr = CosetRestriction(res, rk, h)
    for n in range(5):
        assert np.array_equal(cr.matrix(n) % 3, induced_map(h, rk, res, n) % 3)


def test_restriction_is_ring_map_commuting_with_q0(cat3, ph2):
    res, t = ph2
    rs = MinimalResolution.build(cat3.c_sigma, 5)
    ts = ring_table(rs, 4)
    maps = {n: induced_map(cat3.iota_sigma, rs, res, n) for n in range(5)}

    def r(u):
        return CohomologyClass.of(u.degree, maps[u.degree] @ u.array, 3)

    for a, b in [(1, 1), (1, 2), (2, 2), (1, 3)]:
        for u in t.basis(a):
            for v in t.basis(b):
                assert r(t.mul(u, v)) == ts.mul(r(u), r(v))
    for n in range(4):
        for u in t.basis(n):
            assert r(t.bockstein(u)) == ts.bockstein(r(u))


def test_identity_restriction(cat3, a2_data):
    g, res, _, _ = a2_data
    ident = inclusion(g, g)
    for n in range(4):
        assert np.array_equal(induced_map(ident, res, res, n) % 3, np.eye(res.betti[n], dtype=np.int64))


def test_functoriality(cat3, a2_data):
    """(q o i)^* = i^* q^* for i: <alpha> -> p+^{1+2} and q: p+^{1+2} -> A2."""
    _, ra, _, _ = a2_data
    ex = cat3.extraspecial
    k = ex.subgroup([cat3.central_element(ex, "alpha")], name="<alpha>")
    i = inclusion(k, ex)
    q = cat3.proj_extraspecial
    rk = MinimalResolution.build(k, 3)
    rex = MinimalResolution.build(ex, 3)
    for n in range(4):
        lhs = induced_map(q.compose(i), rk, ra, n) % 3
        rhs = induced_map(i, rk, rex, n) @ induced_map(q, rex, ra, n) % 3
        assert np.array_equal(lhs, rhs)
    # inflation from A2 is nonzero in degree 1
    assert induced_map(q, rex, ra, 1).any()


def test_ring_table_json_roundtrip(a2_data):
    import json

    _, _, table, _ = a2_data
    data = json.loads(table.to_json())
    assert data["p"] == 3
    assert "products" in data and "q0" in data
