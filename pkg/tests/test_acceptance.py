"""One test per acceptance criterion; the summary section lists PASS/FAIL per criterion."""

from __future__ import annotations

import time
from math import comb

import numpy as np
import pytest
import sympy

from conftest import BUILD_SECONDS, record
from cohomcheck.catalog import GroupCatalog, generator_identities
from cohomcheck.characters import a3_analysis, identity_checks
from cohomcheck.cohomology import bar_oracle
from cohomcheck.cyclic import e2_terms, kernel_image_analysis
from cohomcheck.resolution import MinimalResolution
from cohomcheck.spectral import bg_case
from cohomcheck.symbolic import SymbolicRing, coefficient_sweep, m_generators, q1, residue_class, xy_monomials
from cohomcheck.verify import _bh_intermediate, _bh_spans, _surrogate, bockstein_image_check


def elemab_betti(n: int, k: int) -> int:
    """dim of degree k in an exterior algebra on n degree-1 classes tensor polynomials on n degree-2 classes."""
    return sum(comb(n, j) * comb(n - 1 + (k - j) // 2, n - 1) for j in range(min(n, k) + 1) if (k - j) % 2 == 0)


# --- 1 ---------------------------------------------------------------------------------------


def test_criterion_1_group_structure():
    t0 = time.perf_counter()
    cat = GroupCatalog(3)
    orders = {"extraspecial": 27, "h2": 81, "h": 729, "a3": 27, "a3p": 27}
    got = {k: getattr(cat, k).order for k in orders}
    ids = generator_identities(3)
    iso = cat.ph_iso
    elapsed3 = time.perf_counter() - t0
    ok3 = (got == orders and ids["sigma_k^p = xi"] and ids["sigma_2 sigma_3^2 ... = xi^((p-1)/2) alpha^-1"]
           and iso.is_injective and iso.is_surjective and cat.ph.order == cat.a2_ph2.order == 243)

    t0 = time.perf_counter()
    cat5 = GroupCatalog(5)
    got5 = {k: getattr(cat5, k).order for k in orders}
    ids5 = generator_identities(5)
    elapsed5 = time.perf_counter() - t0
    want5 = {"extraspecial": 125, "h2": 5**6, "h": 5**8, "a3": 125, "a3p": 125}
    ok5 = got5 == want5 and ids5["sigma_k^p = xi"] and ids5["sigma_2 sigma_3^2 ... = xi^((p-1)/2) alpha^-1"]

    ok = ok3 and elapsed3 < 5 and ok5 and elapsed5 < 60
    record(1, ok, f"p=3 {elapsed3:.1f}s, p=5 {elapsed5:.1f}s")
    assert got == orders and got5 == want5
    assert ok3 and ok5
    assert elapsed3 < 5 and elapsed5 < 60


# --- 2 ---------------------------------------------------------------------------------------


def test_criterion_2_ring_of_ph2(ph2):
    res, t = ph2
    n = t.named
    u2, v1, w1 = n["u2"], n["v1"], n["w1"]
    facts = {
        "u2 v1 != 0": not t.mul(u2, v1).is_zero(),
        "u2^2 != 0": not t.mul(u2, u2).is_zero(),
        "u2 w1 = 0": t.mul(u2, w1).is_zero(),
        "Q0(w1 u2) = 0": t.bockstein(t.mul(w1, u2)).is_zero(),
    }
    seconds = BUILD_SECONDS.get("ph2", 0.0)
    ok = all(facts.values()) and all(t.check_axioms().values()) and seconds < 120
    record(2, ok, f"resolution to degree 6 in {seconds:.0f}s" if seconds else "resolution reused")
    assert all(facts.values()), facts
    assert seconds < 120


# --- 3 ---------------------------------------------------------------------------------------


@pytest.mark.slow
def test_criterion_3_elementary_abelian_betti():
    cat = GroupCatalog(3)
    groups = {1: cat.c_beta, 2: cat.a2, 3: cat.a3}
    for n, g in groups.items():
        assert g.order == 3**n
        res = MinimalResolution.build(g, 6, solve_top=False)
        want = [elemab_betti(n, k) for k in range(7)]
        ok = res.betti[:7] == want
        record(3, ok, f"(Z/3)^{n} betti {res.betti[:7]}")
        assert ok, (n, res.betti, want)


@pytest.mark.slow
@pytest.mark.parametrize("degree", [0, 1, 2, 3, 4])
def test_criterion_3_bar_oracle_ph2(ph2, degree):
    res, _ = ph2
    g = res.group
    try:
        bar = bar_oracle(g, degree)
    except RuntimeError as e:
        record(3, False, f"PH2 degree {degree}: bar complex not attempted ({e})")
        pytest.fail(f"bar-complex oracle out of budget in degree {degree}: {e}")
    ok = bar == res.betti[degree]
    record(3, ok, f"PH2 degree {degree}: bar {bar} vs resolution {res.betti[degree]}")
    assert ok


# --- 4 ---------------------------------------------------------------------------------------


def _sympy_cyclic_oracle(p: int) -> dict:
    """Recompute the reduced permutation module over GF(p) with sympy."""
    perm = sympy.zeros(p, p)
    for i in range(p):
        perm[(i + 1) % p, i] = 1
    emb = sympy.zeros(p, p - 1)
    for i in range(p - 1):
        emb[i, i], emb[i + 1, i] = 1, -1
    # emb has full column rank with a unit minor in its first p-1 rows
    top = emb[: p - 1, :]
    act = (top.inv_mod(p) * (perm * emb)[: p - 1, :]).applyfunc(lambda a: a % p)
    a = (sympy.eye(p - 1) - act).applyfunc(lambda x: x % p)
    gf = sympy.GF(p)
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix.from_Matrix(a).convert_to(gf)
    rk = dm.rank()
    ker = dm.nullspace().to_Matrix()
    ut = sympy.Matrix([[i % p for i in range(1, p)]])
    aug = DomainMatrix.from_Matrix(a.row_join(ut.T)).convert_to(gf)
    top_pow = (a ** (p - 1)).applyfunc(lambda x: x % p)
    return {"dim_ker": p - 1 - rk, "dim_im": rk, "ker_is_ut": ker.rank() == 1
            and DomainMatrix.from_Matrix(ker.col_join(ut)).convert_to(gf).rank() == 1,
            "ut_in_im": aug.rank() == rk, "top_zero": top_pow.is_zero_matrix}


def test_criterion_4_cyclic_module():
    t0 = time.perf_counter()
    rows = {p: (kernel_image_analysis(p), e2_terms(p)) for p in (3, 5, 7, 11, 13)}
    elapsed = time.perf_counter() - t0
    for p, (k, e) in rows.items():
        oracle = _sympy_cyclic_oracle(p)
        assert k["dim_ker"] == oracle["dim_ker"] == 1
        assert k["dim_im"] == oracle["dim_im"] == p - 2
        assert k["u_tilde_spans_ker"] and oracle["ker_is_ut"]
        assert k["u_tilde_in_im"] and oracle["ut_in_im"]
        assert k["top_power_zero"] and oracle["top_zero"]
        assert e["E2_02_dim"] == 1 and e["E2_12_dim"] == 1
        assert e["E2_02_rep_spans"] and e["E2_12_rep_spans"]
    record(4, elapsed < 1, f"p in 3..13 in {elapsed:.2f}s")
    assert elapsed < 1


# --- 5 ---------------------------------------------------------------------------------------


def test_criterion_5_bg_spectral_sequence():
    t0 = time.perf_counter()
    ss, c = bg_case(3, 4)
    table = ss.e_infinity(4)
    b2sq = ss.base.mul(c["b2"], c["b2"])
    spans = ss.spans_page(4, (2, 2), [c["b2"].array]) and ss.spans_page(4, (4, 0), [b2sq.array])
    elapsed = time.perf_counter() - t0
    dims = {pos: v["dim"] for pos, v in table.items()}
    ok = (dims == {(0, 4): 0, (1, 3): 0, (2, 2): 1, (3, 1): 0, (4, 0): 1} and spans
          and all(v["certified"] for v in table.values()) and elapsed < 1)
    record(5, ok, f"E_inf total 4 {sorted(dims.items())}, {elapsed:.2f}s")
    assert ok, (dims, spans, elapsed)


# --- 6 ---------------------------------------------------------------------------------------


def test_criterion_6_bh_spectral_sequence(pipeline3, bh):
    ss, _ = bh
    zeros = {pos: ss.dim(4, pos) for pos in [(0, 3), (1, 2), (0, 4), (1, 3)]}
    certified = all(ss.certificate(pos) for pos in zeros)
    spans_ok, spans = _bh_spans(pipeline3)
    inter_ok, inter = _bh_intermediate(pipeline3)
    seconds = BUILD_SECONDS.get("ph2", 0.0) + BUILD_SECONDS.get("bh", 0.0)
    ok = all(v == 0 for v in zeros.values()) and certified and spans_ok and inter_ok and seconds < 300
    record(6, ok, f"dims E_inf(2,1) = {ss.dim(4, (2, 1))}, E_inf(2,2) = {ss.dim(4, (2, 2))}, {seconds:.0f}s")
    assert all(v == 0 for v in zeros.values()) and certified, zeros
    assert spans_ok, spans
    assert inter_ok, inter
    assert seconds < 300


# --- 7 ---------------------------------------------------------------------------------------


@pytest.mark.slow
def test_criterion_7_convergence(bh, h_resolution):
    ss, _ = bh
    sums = {n: ss.assemble_dims(n) for n in (3, 4)}
    betti = {n: h_resolution.betti[n] for n in (3, 4)}
    seconds = BUILD_SECONDS.get("h", 0.0)
    ok = sums == betti and seconds < 900
    record(7, ok, f"E_inf sums {sums}, betti(H) {betti}, resolution {seconds:.0f}s")
    assert sums == betti
    assert seconds < 900


# --- 8 ---------------------------------------------------------------------------------------


@pytest.mark.slow
def test_criterion_8_bockstein_exclusion(pipeline3, h_resolution):
    t0 = time.perf_counter()
    ok_img, info = bockstein_image_check(pipeline3)
    ok_sur, sur = _surrogate(pipeline3)
    elapsed = time.perf_counter() - t0
    nonvacuous = info["nonzero pairs"] > 0
    ok = ok_img and ok_sur and nonvacuous and elapsed < 120
    record(8, ok, f"dim im Q0 = {info['dim im Q0']}, surrogate pattern {sur['pattern']}, "
                  f"{elapsed:.0f}s after the resolution")
    assert ok_img, info
    assert nonvacuous
    assert ok_sur, sur
    assert elapsed < 120


# --- 9 ---------------------------------------------------------------------------------------


def test_criterion_9_q1_computations():
    t0 = time.perf_counter()
    for p in (3, 5, 7):
        ring = SymbolicRing(p, ("x", "y", "z"))
        g = ring.gens()
        lhs = q1(g["x1"] * g["y1"] * g["z2"])
        assert lhs == g["x2"] ** p * g["y1"] * g["z2"] - g["x1"] * g["y2"] ** p * g["z2"]
        assert not residue_class(lhs).is_zero()
    ring = SymbolicRing(3, ("x", "y", "z"))
    # M and M' have the same shape in their own coordinates; check the whole submodule, not only generators
    for z in ("z", "x"):
        for gen in m_generators(ring, z, 6):
            for mono in xy_monomials(ring, z, 4):
                assert residue_class(q1(mono * gen), z).is_zero()
    rows = coefficient_sweep(3)
    assert len(rows) == 27
    for r in rows:
        a, a1, _ = r["triple"]
        assert r["via_g"] == (a - a1) % 3 and r["via_g_prime"] == (-a1) % 3
        if r["q1_zero_g"] and r["q1_zero_g_prime"]:
            assert a == 0
    elapsed = time.perf_counter() - t0
    record(9, elapsed < 1, f"{elapsed:.2f}s")
    assert elapsed < 1


# --- 10 --------------------------------------------------------------------------------------


def test_criterion_10_characters():
    t0 = time.perf_counter()
    cat = GroupCatalog(3)
    ids = identity_checks(cat)
    a3 = a3_analysis(cat)
    elapsed = time.perf_counter() - t0
    delta = ids["Delta^*(lambda'') = 0"]["holds"]
    gamma = ids["Gamma2^*(lambda'') = p lambda1"]["holds"]
    reduced = ids["Gamma2^*(lambda'') = p lambda1 - p^2"]["holds"]
    pattern = a3["matches stated pattern"] and a3["weight-1 count"] == 9 and a3["weight-0 count"] == 9
    ok = delta and gamma and pattern and a3["c2 = 0 mod p"] and elapsed < 10
    record(10, ok, f"Delta* {delta}, Gamma2* literal {gamma} (minus p^2: {reduced}), "
                   f"pattern {pattern}, c2 = {a3['c2']}, {elapsed:.1f}s")
    assert delta and pattern and a3["c2 = 0 mod p"] and reduced
    assert elapsed < 10
    assert gamma, "Gamma2^*(lambda'') differs from 3 lambda1 by the constant 9 as class functions"
