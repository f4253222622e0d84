from __future__ import annotations

import numpy as np
import pytest

from cohomcheck.catalog import GroupCatalog, generator_identities
from cohomcheck.groups import (MonomialElement, check_prime, conjugacy_classes, delta, element_orders, gamma1, gamma2,
                               group_invariants, is_abelian, standard_generators)


def complex_closure(mats: list[np.ndarray], cap: int = 5000) -> int:
    """Order of the matrix group generated by complex matrices, by breadth-first closure."""
    def key(m):
        return tuple(np.round(m.real, 6).ravel() + 0.0) + tuple(np.round(m.imag, 6).ravel() + 0.0)

    seen = {key(np.eye(mats[0].shape[0], dtype=complex))}
    frontier = [np.eye(mats[0].shape[0], dtype=complex)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in mats:
                y = x @ g
                k = key(y)
                if k not in seen:
                    seen.add(k)
                    nxt.append(y)
        frontier = nxt
        assert len(seen) <= cap
    return len(seen)


@pytest.mark.parametrize("p", [2, 4, 9, 1, 0, -3])
def test_check_prime_rejects(p):
    with pytest.raises(ValueError):
        check_prime(p)


@pytest.mark.parametrize("p", [3, 5])
def test_products_match_complex_matrices(p):
    gens = standard_generators(p)
    rng = np.random.default_rng(p)
    names = list(gens)
    for _ in range(40):
        a, b = gens[rng.choice(names)], gens[rng.choice(names)]
        for f in (1, 2):
            lhs = (a * b).matrix(f)
            assert np.allclose(lhs, a.matrix(f) @ b.matrix(f))
            assert np.allclose(a.inverse().matrix(f) @ a.matrix(f), np.eye(p))


@pytest.mark.parametrize("p", [3, 5])
def test_embeddings_are_homomorphisms(p):
    gens = standard_generators(p)
    s1, al = gens["sigma1"], gens["alpha"]
    for f in (delta, gamma1, gamma2):
        assert f(s1 * al) == f(s1) * f(al)


def test_orders_against_complex_closure(cat3):
    gens = standard_generators(3)
    # the extraspecial group is generated by alpha and beta inside one factor
    mats = [gens["alpha"].matrix(), gens["beta"].matrix()]
    assert complex_closure(mats) == cat3.extraspecial.order == 27
    mats = [gens[n].matrix() for n in ("sigma1", "sigma2", "sigma3", "beta")]
    assert complex_closure(mats) == cat3.h2.order == 81


@pytest.mark.parametrize("p", [3, 5])
def test_identities(p):
    ids = generator_identities(p)
    assert ids["sigma_k^p = xi"]
    assert ids["sigma_2 sigma_3^2 ... = xi^((p-1)/2) alpha^-1"]
    assert ids["Gamma1(x) = Delta(x) Gamma2(x^-1)"]


def test_catalog_invariants(cat3):
    ex = group_invariants(cat3.extraspecial)
    assert ex.exponent == 3 and len(ex.center) == 3 and tuple(ex.abelianization) == (3, 3)
    for g in (cat3.a2, cat3.a3, cat3.a3p):
        assert is_abelian(g) and set(element_orders(g).tolist()) <= {1, 3}
    assert cat3.h2.order == 81 and cat3.ph2.order == 27 and cat3.h.order == 729
    assert sum(len(c) for _, c in conjugacy_classes(cat3.extraspecial)) == 27
    assert len(conjugacy_classes(cat3.extraspecial)) == 11


def test_quotient_isomorphism(cat3):
    h = cat3.ph_iso
    assert h.is_injective and h.is_surjective


def test_projection_kernels(cat3):
    assert len(cat3.proj_h2.kernel) == 3
    assert len(cat3.proj_extraspecial.kernel) == 3


def test_group_json_roundtrip(cat3):
    from cohomcheck.groups import FiniteGroup

    g = cat3.extraspecial
    g2 = FiniteGroup.from_json(g.to_json())
    assert g2.order == g.order
    assert np.array_equal(g2.table, g.table)


def test_element_json(cat3):
    x = standard_generators(3)["sigma2"]
    assert MonomialElement.from_row(3, x.row()) == x
