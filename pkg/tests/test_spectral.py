from __future__ import annotations

import numpy as np
import pytest

from cohomcheck.cohomology import ring_table
from cohomcheck.elemab import a2_model
from cohomcheck.linalg import rank
from cohomcheck.resolution import MinimalResolution
from cohomcheck.spectral import CentralSS, bg_case, bpu_table


def page_total(ss: CentralSS, n: int) -> int:
    return sum(ss.dim(4, pos) for pos in ss.positions(n) if sum(pos) == n)


@pytest.fixture(scope="module")
def a2(cat3):
    return a2_model(cat3, top=6)


@pytest.fixture(scope="module")
def extraspecial_ss(a2):
    g = a2.ring.gens()
    xy = a2.to_table(g["x1"] * g["y1"])
    return CentralSS(a2.table, 4).set_transgressions(xy, a2.table.bockstein(xy))


def test_bpu_table(cat3):
    t = bpu_table(3)
    assert t.betti == [1, 0, 1, 1, 1, 0, 1]
    assert all(t.check_axioms().values())
    n = t.named
    assert t.bockstein(n["u2"]) == n["u3"]
    assert not t.mul(n["u2"], n["u2"]).is_zero()


def test_bg_free_module_basis():
    ss, c = bg_case(3, 6)
    base = ss.base
    b2, a3, b3 = c["b2"], c["a3"], c["b3"]
    one = base.one()
    listed = [one, b2, a3, b3, base.mul(b2, b2), base.mul(a3, b3), base.mul(base.mul(b2, b2), b2)]
    # together with powers of a2 these span the base degreewise
    a2 = c["a2"]
    for d in range(7):
        cands = []
        for u in listed:
            k = 0
            while u.degree + 2 * k <= d:
                v = u
                for _ in range(k):
                    v = base.mul(v, a2)
                if v.degree == d:
                    cands.append(v.array)
                k += 1
        assert (rank(np.array(cands), 3) if cands else 0) == base.betti[d]


def test_bg_e_infinity():
    ss, c = bg_case(3, 4)
    table = ss.e_infinity(4)
    assert {pos: v["dim"] for pos, v in table.items()} == {(0, 4): 0, (1, 3): 0, (2, 2): 1, (3, 1): 0, (4, 0): 1}
    assert all(v["certified"] for v in table.values())
    assert ss.spans_page(4, (2, 2), [c["b2"].array])
    assert ss.spans_page(4, (4, 0), [ss.base.mul(c["b2"], c["b2"]).array])


@pytest.mark.parametrize("p", [3, 5])
def test_bg_leibniz(p):
    ss, _ = bg_case(p, 4)
    assert ss.derivation_defect(2) == 0 and ss.derivation_defect(3) == 0


def test_e2_dims(a2, extraspecial_ss):
    assert extraspecial_ss.e2_dim((2, 1)) == a2.table.betti[2] == 3


def test_d2_squares_to_zero(extraspecial_ss):
    ss = extraspecial_ss
    for s in range(3):
        for t in range(2, 5):
            m1 = ss.d2_matrix((s, t))
            m2 = ss.d2_matrix((s + 2, t - 1))
            if m1.size and m2.size:
                assert not ((m2 @ m1) % 3).any()


def test_extraspecial_convergence(cat3, extraspecial_ss):
    betti = MinimalResolution.build(cat3.extraspecial, 4).betti
    assert [extraspecial_ss.assemble_dims(n) for n in range(5)] == betti == [1, 2, 4, 6, 7]


def test_zero_transgressions_give_product(a2):
    t = a2.table
    ss = CentralSS(t, 4).set_transgressions(t.zero(2), t.zero(3))
    for pos in ss.positions(4):
        assert ss.dim(2, pos) == ss.dim(3, pos) == ss.dim(4, pos) == ss.e2_dim(pos)
    # higher differentials are invisible to the certificate, so (0, 3) stays uncertified
    assert not ss.e_infinity(3)[(0, 3)]["certified"]
    # in a product every differential vanishes: Kunneth b_n(A2 x Z/3) = sum_s b_s(A2)
    assert [page_total(ss, n) for n in range(5)] == [sum(t.betti[: n + 1]) for n in range(5)]


def test_split_extension_matches_resolution(cat3):
    """<beta, xi> over <beta>: zero transgressions and a product group of order 9."""
    rb = MinimalResolution.build(cat3.c_beta, 7)
    t = ring_table(rb, 6)
    ss = CentralSS(t, 4).set_transgressions(t.zero(2), t.zero(3))
    total = MinimalResolution.build(cat3.beta_xi, 4).betti
    assert [page_total(ss, n) for n in range(5)] == total


def test_transgression_degrees_checked(a2):
    t = a2.table
    with pytest.raises(ValueError):
        CentralSS(t, 4).set_transgressions(t.zero(3), t.zero(3))


def test_bh_base(bh):
    ss, n = bh
    assert ss.e2_dim((1, 0)) == 4
    b = ss.base
    assert rank(np.array([n[k].array for k in ("v1", "w1", "x1", "y1")]), 3) == 4
    assert all(b.check_axioms().values())


def test_bh_e_infinity(bh):
    ss, _ = bh
    for pos in [(0, 3), (1, 2), (0, 4), (1, 3)]:
        assert ss.dim(4, pos) == 0 and ss.certificate(pos)
    assert ss.dim(4, (2, 1)) == 2 and ss.dim(4, (2, 2)) == 3
    assert [ss.assemble_dims(k) for k in range(5)] == [1, 4, 10, 21, 35]


def test_bh_leibniz(bh):
    ss, _ = bh
    assert ss.derivation_defect(2) == 0 and ss.derivation_defect(3) == 0


def test_bh_intermediate_facts(pipeline3, bh):
    from cohomcheck.verify import _bh_intermediate

    ok, facts = _bh_intermediate(pipeline3)
    assert ok, facts


def test_bh_kunneth_base(pipeline3, bh):
    ss, _ = bh
    res = MinimalResolution.build(pipeline3.cat.a2_ph2, 3, solve_top=False)
    assert ss.base.betti[:4] == res.betti[:4]
