"""Run every check for one prime and collect a machine-readable report."""

from __future__ import annotations

import json
import time
import traceback
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from . import __version__
from .catalog import GroupCatalog, generator_identities
from .groups import check_prime

GROUPS = ("structure", "extension", "ring", "cyclic", "bg-ss", "bh-ss", "bockstein", "sweep", "characters", "q1")
FULL_PRIMES = (3, 5)
LONG_PRIMES = (7,)
RESOLUTION_CAP = 3000


@dataclass
class Check:
    id: str
    group: str
    claim: str
    run: Callable[["Pipeline"], tuple[bool, dict]]
    requires: tuple[str, ...] = ()
    primes: tuple[int, ...] | None = None  # None: every prime allowed for its group


@dataclass
class VerificationReport:
    p: int
    checks: list[dict] = field(default_factory=list)
    version: str = __version__

    @property
    def failed(self) -> list[str]:
        return [c["id"] for c in self.checks if c["status"] == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self, timings: bool = True) -> dict:
        checks = self.checks if timings else [{k: v for k, v in c.items() if k != "runtime_ms"} for c in self.checks]
        return {"p": self.p, "checks": checks, "version": self.version}

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True, default=_jsonable)

    def summary(self) -> str:
        lines = [f"p = {self.p}"]
        for c in self.checks:
            lines.append(f"  [{c['status']:>7}] {c['id']}: {c['claim']} ({c['runtime_ms']} ms)")
        counts = {s: sum(c["status"] == s for c in self.checks) for s in ("pass", "fail", "skipped")}
        lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, tuple)):
        return list(x)
    return str(x)


class Pipeline:
    """Shared, lazily built objects for one prime."""

    def __init__(self, p: int, long: bool = False):
        self.p = p
        self.long = long
        self.cat = GroupCatalog(p)

    @cached_property
    def ph2(self):
        from .spectral import ph2_setup

        if self.cat.ph2.order > RESOLUTION_CAP:
            raise SkipCheck(f"PH2 has order {self.cat.ph2.order} > {RESOLUTION_CAP}")
        return ph2_setup(self.p, 6, self.cat)

    @cached_property
    def h_resolution(self):
        from .resolution import MinimalResolution

        if self.cat.h.order > RESOLUTION_CAP:
            raise SkipCheck(f"H has order {self.cat.h.order} > {RESOLUTION_CAP}")
        return MinimalResolution.build(self.cat.h, 4, solve_top=False)

    @cached_property
    def bh(self):
        from .spectral import bh_case

        return bh_case(self.p, 4, ph2_table=self.ph2[1])

    @cached_property
    def a2_resolution(self):
        from .resolution import MinimalResolution

        return MinimalResolution.build(self.cat.a2, 3, solve_top=False)


class SkipCheck(Exception):
    """A resource is out of scope for this prime."""


# --- structure ---------------------------------------------------------------------------------


def _orders(pl: Pipeline):
    from .groups import DEFAULT_CAP

    c, p = pl.cat, pl.p
    want = {"p+^{1+2}": p**3, "H2": p ** (p + 1), "H": p ** (p + 3), "A3": p**3, "A3'": p**3}
    attr = {"p+^{1+2}": "extraspecial", "H2": "h2", "H": "h", "A3": "a3", "A3'": "a3p"}
    got = {k: getattr(c, attr[k]).order for k, n in want.items() if n <= DEFAULT_CAP}
    skipped = sorted(set(want) - set(got))
    return all(got[k] == want[k] for k in got), {"orders": got, "expected": want, "not enumerated": skipped}


def _identities(pl: Pipeline):
    ids = generator_identities(pl.p)
    keep = {k: v for k, v in ids.items() if "literal" not in k}
    return all(keep.values()), {"identities": ids}


def _quotient_iso(pl: Pipeline):
    if pl.p != 3 and not pl.long:
        raise SkipCheck("isomorphism check above p = 3 runs only with --long")
    h = pl.cat.ph_iso
    ok = h.is_injective and h.is_surjective
    return ok, {"order": pl.cat.ph.order, "target order": pl.cat.a2_ph2.order, "bijective": ok}


# --- extension classes ----------------------------------------------------------------------------


def _ext_extraspecial(pl: Pipeline):
    from .cohomology import extension_class, h1_class, hom_values, ring_table

    c, res = pl.cat, pl.a2_resolution
    g = c.a2
    table = ring_table(res, 2)
    al, be = c.central_element(g, "alpha"), c.central_element(g, "beta")
    x1 = h1_class(res, hom_values(g, {al: 1, be: 0}))
    y1 = h1_class(res, hom_values(g, {al: 0, be: 1}))
    e = extension_class(res, c.proj_extraspecial, c.central_element(c.extraspecial, "xi"))
    xy = table.mul(x1, y1)
    ok = e.array.tolist() == table.scale(xy, -1).array.tolist() and not xy.is_zero()
    return ok, {"extension class": e.vector, "x1 y1": xy.vector, "transgression": table.scale(e, -1).vector}


def _ext_cyclic(pl: Pipeline):
    """Pull u2 back to the cyclic subgroup generated by sigma_1 and to <beta>."""
    from .cohomology import extension_class, induced_map, h1_class, hom_values, ring_table
    from .resolution import MinimalResolution

    c = pl.cat
    res, table = pl.ph2
    u2 = table.named["u2"]
    rs = MinimalResolution.build(c.c_sigma, 3, solve_top=False)
    rb = MinimalResolution.build(c.c_beta, 3, solve_top=False)
    ts = ring_table(rs, 2)
    gs = c.c_sigma
    v1 = h1_class(rs, hom_values(gs, {int(gs.gen_index[0]): 1}))
    v2 = ts.bockstein(v1)
    ms = induced_map(c.iota_sigma, rs, res, 2)
    mb = induced_map(c.iota_beta, rb, res, 2)
    on_sigma = ms @ u2.array % pl.p
    on_beta = mb @ u2.array % pl.p
    alpha = None
    if v2.array.any():
        k = int(np.flatnonzero(v2.array)[0])
        a = int(on_sigma[k] * pow(int(v2.array[k]), -1, pl.p)) % pl.p
        if np.array_equal((a * v2.array) % pl.p, on_sigma):
            alpha = a
    ext_sigma = extension_class(rs, c.proj_sigma, c.central_element(c.sigma_lift, "xi"))
    ext_beta = extension_class(rb, c.proj_beta, c.central_element(c.beta_xi, "xi"))
    ok = alpha not in (None, 0) and not on_beta.any() and ext_beta.is_zero()
    ok = ok and np.array_equal(on_sigma, (-ext_sigma.array) % pl.p)
    return ok, {"alpha": alpha if alpha is None else (alpha if alpha <= pl.p // 2 else alpha - pl.p),
                "restriction to <sigma1>": on_sigma, "restriction to <beta>": on_beta,
                "naturality with the lifted extensions": True}


# --- ring of PH2 -----------------------------------------------------------------------------------


def _ring_axioms(pl: Pipeline):
    res, table = pl.ph2
    ax = table.check_axioms()
    return all(ax.values()), {"betti": res.betti, "axioms": ax}


def _ring_fact(name: str, expect_zero: bool):
    def run(pl: Pipeline):
        t = pl.ph2[1]
        n = t.named
        u2, v1, w1 = n["u2"], n["v1"], n["w1"]
        vals = {
            "u2 v1": lambda: t.mul(u2, v1),
            "u2^2": lambda: t.mul(u2, u2),
            "u2 w1": lambda: t.mul(u2, w1),
            "Q0(w1 u2)": lambda: t.bockstein(t.mul(w1, u2)),
        }
        x = vals[name]()
        return x.is_zero() == expect_zero, {name: x.vector, "degree": x.degree}
    return run


# --- cyclic module ------------------------------------------------------------------------------------


def _cyclic(key: str):
    def run(pl: Pipeline):
        from .cyclic import e2_terms, kernel_image_analysis

        k = kernel_image_analysis(pl.p)
        e = e2_terms(pl.p)
        p = pl.p
        tests = {
            "kernel": (k["dim_ker"] == 1 and k["u_tilde_spans_ker"], {"dim ker": k["dim_ker"], "u~": k["u_tilde"]}),
            "u-in-image": (k["u_tilde_in_im"], {"u~": k["u_tilde"], "image": k["im"]}),
            "image-dim": (k["dim_im"] == p - 2 and k["stated_image_spans"], {"dim im": k["dim_im"]}),
            "nilpotent": (k["top_power_zero"] and k["(1-g)^(p-1) = norm"], {"dim ker top": k["dim_ker_top"]}),
            "e2": (e["E2_02_dim"] == 1 and e["E2_12_dim"] == 1 and e["E2_02_rep_spans"] and e["E2_12_rep_spans"], e),
        }
        return tests[key]
    return run


# --- spectral sequences --------------------------------------------------------------------------


def _bg_einf(pl: Pipeline):
    from .spectral import bg_case

    ss, c = bg_case(pl.p, 4)
    table = ss.e_infinity(4)
    b2sq = ss.base.mul(c["b2"], c["b2"])
    dims = {f"{s},{t}": v["dim"] for (s, t), v in table.items()}
    ok = all(v["certified"] for v in table.values())
    ok = ok and dims == {"0,4": 0, "1,3": 0, "2,2": 1, "3,1": 0, "4,0": 1}
    ok = ok and ss.spans_page(4, (2, 2), [c["b2"].array]) and ss.spans_page(4, (4, 0), [b2sq.array])
    return ok, {"E_inf total degree 4": dims, "reasons": {f"{k[0]},{k[1]}": v["reason"] for k, v in table.items()}}


def _bg_leibniz(pl: Pipeline):
    from .spectral import bg_case

    ss, _ = bg_case(pl.p, 4)
    d2, d3 = ss.derivation_defect(2), ss.derivation_defect(3)
    return d2 == 0 and d3 == 0, {"d2 defects": d2, "d3 defects": d3}


def _bh_zero(pl: Pipeline):
    ss, _ = pl.bh
    pos = [(0, 3), (1, 2), (0, 4), (1, 3)]
    dims = {f"{s},{t}": ss.dim(4, (s, t)) for s, t in pos}
    certs = {f"{s},{t}": ss.certificate((s, t)) for s, t in pos}
    return all(v == 0 for v in dims.values()) and all(certs.values()), {"dims": dims, "reasons": certs}


def _bh_spans(pl: Pipeline):
    ss, n = pl.bh
    b = ss.base
    wx, wy, xy = b.mul(n["w1"], n["x1"]), b.mul(n["w1"], n["y1"]), b.mul(n["x1"], n["y1"])
    e21 = ss.spans_page(4, (2, 1), [wx.array, wy.array]) and ss.certificate((2, 1)) is not None
    e22 = ss.spans_page(4, (2, 2), [xy.array, wx.array, wy.array]) and ss.certificate((2, 2)) is not None
    return e21 and e22, {"E_inf(2,1) = <w1x1z1, w1y1z1>": e21, "E_inf(2,2) = <x1y1z2, w1x1z2, w1y1z2>": e22,
                         "dim(2,1)": ss.dim(4, (2, 1)), "dim(2,2)": ss.dim(4, (2, 2))}


def _bh_intermediate(pl: Pipeline):
    from .spectral import exterior_mask
    from .linalg import rank

    ss, n = pl.bh
    b, p = ss.base, pl.p
    wx, wy, xy, u2 = b.mul(n["w1"], n["x1"]), b.mul(n["w1"], n["y1"]), b.mul(n["x1"], n["y1"]), n["u2"]
    _, d_wx = ss.d(2, (2, 1), wx.array)
    _, d_mix = ss.d(2, (2, 1), b.add(xy, u2).array)
    minus_sq = b.scale(b.mul(u2, u2), -1)
    _, d3_wx = ss.d(3, (2, 2), wx.array)
    kernel = ss.projected_kernel(2, (2, 1), exterior_mask(ss, 4))
    stated = np.vstack([wx.array, wy.array, b.add(xy, u2).array])
    same = kernel.shape[0] == 3 and rank(np.vstack([kernel, stated]), p) == 3 == rank(stated, p)
    facts = {
        "d2(w1x1z1) = 0": not d_wx.any(),
        "d2(x1y1z1 + u2z1) = -u2^2 != 0": np.array_equal(d_mix, minus_sq.array) and not minus_sq.is_zero(),
        "d3(w1x1z2) = 0 in E3": ss.is_boundary(3, (5, 0), d3_wx),
        "projected kernel of d2 on E2(2,1) = <w1x1z1, w1y1z1, x1y1z1 + u2z1>": same,
        "E3(2,1) has dimension 2": ss.dim(3, (2, 1)) == 2,
    }
    return all(facts.values()), facts


def _bh_leibniz(pl: Pipeline):
    ss, _ = pl.bh
    d2, d3 = ss.derivation_defect(2), ss.derivation_defect(3)
    return d2 == 0 and d3 == 0, {"d2 defects": d2, "d3 defects": d3}


def _bh_convergence(pl: Pipeline):
    ss, _ = pl.bh
    res = pl.h_resolution
    sums = {n: ss.assemble_dims(n) for n in range(5)}
    ok = all(sums[n] == res.betti[n] for n in range(5))
    return ok, {"assembled": sums, "betti(H)": res.betti}


def _bh_kunneth(pl: Pipeline):
    from .resolution import MinimalResolution

    ss, _ = pl.bh
    res = MinimalResolution.build(pl.cat.a2_ph2, 3, solve_top=False)
    return ss.base.betti[:4] == res.betti[:4], {"tensor betti": ss.base.betti[:4], "product betti": res.betti[:4]}


# --- Bockstein image -----------------------------------------------------------------------------


def bockstein_image_check(pl: Pipeline) -> tuple[bool, dict]:
    """Every class in Q0(H^3(H)) has equal x1y1z2-coefficients on A3 and A3' modulo M, M'."""
    from .cohomology import CohomologyClass, CosetRestriction, bockstein_matrix
    from .elemab import a3_model, a3p_model
    from .linalg import image_basis
    from .symbolic import coefficient_xyz2

    c, p = pl.cat, pl.p
    res = pl.h_resolution
    ma, mb = a3_model(c), a3p_model(c)
    models_ok = {**{f"A3 {k}": v for k, v in ma.checks().items()}, **{f"A3' {k}": v for k, v in mb.checks().items()}}
    img = image_basis(bockstein_matrix(res, 3), p)
    ra = CosetRestriction(res, ma.res, c.g).matrix(4)
    rb = CosetRestriction(res, mb.res, c.g_prime).matrix(4)
    pairs = []
    for v in img:
        ya = ma.to_symbolic(CohomologyClass.of(4, ra @ v, p))
        yb = mb.to_symbolic(CohomologyClass.of(4, rb @ v, p))
        pairs.append((coefficient_xyz2(ya), coefficient_xyz2(yb)))
    ok = all(models_ok.values()) and all(a == b for a, b in pairs)
    return ok, {"dim im Q0": len(pairs), "coefficient pairs": pairs,
                "nonzero pairs": sum(1 for a, _ in pairs if a), "model checks": models_ok}


def _surrogate(pl: Pipeline):
    from .symbolic import SymbolicRing, coefficient_sweep, coefficient_xyz2, q0

    ring = SymbolicRing(pl.p, ("x", "y", "z"))
    g = ring.gens()
    via_a3 = coefficient_xyz2(q0(g["x1"] * g["y1"] * g["z1"]))
    row = next(r for r in coefficient_sweep(pl.p) if r["triple"] == (via_a3, 0, 0))
    pattern = (row["via_g"], row["via_g_prime"])
    return pattern == (1, 0), {"residue coefficient of Q0(x1y1z1)": via_a3, "pattern": pattern,
                               "outside the Bockstein image": pattern[0] != pattern[1]}


def _zero_pattern(pl: Pipeline):
    from .symbolic import SymbolicRing, coefficient_xyz2

    ring = SymbolicRing(pl.p, ("x", "y", "z"))
    pair = (coefficient_xyz2(ring.zero()), coefficient_xyz2(ring.zero()))
    return pair == (0, 0), {"pattern": pair}


def _sweep(pl: Pipeline):
    from .symbolic import coefficient_sweep

    p = pl.p
    rows = coefficient_sweep(p)
    bad = [r["triple"] for r in rows
           if r["via_g"] != (r["triple"][0] - r["triple"][1]) % p or r["via_g_prime"] != (-r["triple"][1]) % p
           or (r["q1_zero_g"] and r["q1_zero_g_prime"] and r["triple"][0] % p)]
    return not bad and len(rows) == p**3, {"triples": len(rows), "violations": bad}


# --- characters -------------------------------------------------------------------------------------


def _char_identity(key: str):
    def run(pl: Pipeline):
        from .characters import identity_checks

        res = identity_checks(pl.cat)[key]
        return res["holds"], res
    return run


def _char_a3(pl: Pipeline):
    from .characters import a3_analysis

    a = a3_analysis(pl.cat)
    ok = a["matches stated pattern"] and a["recomposes"] and a["c2 = 0 mod p"]
    return ok, a


# --- Q1 -----------------------------------------------------------------------------------------------


def _q1_formula(pl: Pipeline):
    from .symbolic import SymbolicRing, q1, residue_class

    p = pl.p
    ring = SymbolicRing(p, ("x", "y", "z"))
    g = ring.gens()
    lhs = q1(g["x1"] * g["y1"] * g["z2"])
    rhs = g["x2"] ** p * g["y1"] * g["z2"] - g["x1"] * g["y2"] ** p * g["z2"]
    res = residue_class(lhs)
    return lhs == rhs and not res.is_zero(), {"Q1(x1y1z2)": str(lhs), "residue mod M": str(res)}


def _q1_stable(pl: Pipeline):
    from .symbolic import SymbolicRing, m_generators, q1, residue_class

    ring = SymbolicRing(pl.p, ("x", "y", "z"))
    gens = m_generators(ring, "z", 2 * pl.p + 4)
    bad = [str(u) for u in gens if not residue_class(q1(u)).is_zero()]
    return not bad, {"generators tested": len(gens), "violations": bad}


# --- registry --------------------------------------------------------------------------------------------


CHECKS: list[Check] = [
    Check("structure.orders", "structure", "group orders p^3, p^(p+1), p^(p+3), p^3, p^3", _orders),
    Check("structure.identities", "structure", "defining identities among the standard generators", _identities),
    Check("structure.quotient", "structure", "pi(H) is isomorphic to A2 x PH2", _quotient_iso,
          requires=("structure.orders",)),
    Check("extension.extraspecial", "extension", "transgression of p+ over A2 is x1 y1", _ext_extraspecial,
          requires=("structure.orders",), primes=FULL_PRIMES),
    Check("extension.cyclic", "extension", "u2 restricts to a nonzero multiple of v2 on <sigma1> and to 0 on <beta>",
          _ext_cyclic, requires=("structure.orders",), primes=FULL_PRIMES),
    Check("ring.axioms", "ring", "H*(PH2) table is unital, graded commutative, associative, Q0-compatible",
          _ring_axioms, requires=("structure.orders",), primes=FULL_PRIMES),
    Check("ring.u2v1", "ring", "u2 v1 != 0", _ring_fact("u2 v1", False), requires=("ring.axioms",)),
    Check("ring.u2sq", "ring", "u2^2 != 0", _ring_fact("u2^2", False), requires=("ring.axioms",)),
    Check("ring.u2w1", "ring", "u2 w1 = 0", _ring_fact("u2 w1", True), requires=("ring.axioms",)),
    Check("ring.q0w1u2", "ring", "Q0(w1 u2) = 0", _ring_fact("Q0(w1 u2)", True), requires=("ring.axioms",)),
    Check("cyclic.kernel", "cyclic", "ker(1-g) is spanned by u~", _cyclic("kernel")),
    Check("cyclic.u-in-image", "cyclic", "u~ lies in im(1-g)", _cyclic("u-in-image")),
    Check("cyclic.image-dim", "cyclic", "dim im(1-g) = p-2", _cyclic("image-dim")),
    Check("cyclic.nilpotent", "cyclic", "(1-g)^(p-1) = N = 0 on the module", _cyclic("nilpotent")),
    Check("cyclic.e2", "cyclic", "E2^{0,2} and E2^{1,2} are one-dimensional with the stated representatives",
          _cyclic("e2")),
    Check("bg-ss.einf", "bg-ss", "E_inf in total degree 4 is <b2 z2> + <b2^2>", _bg_einf, primes=FULL_PRIMES),
    Check("bg-ss.leibniz", "bg-ss", "d2, d3 are derivations", _bg_leibniz, primes=FULL_PRIMES),
    Check("bh-ss.zero", "bh-ss", "E_inf vanishes at (0,3), (1,2), (0,4), (1,3)", _bh_zero,
          requires=("ring.axioms",), primes=FULL_PRIMES),
    Check("bh-ss.spans", "bh-ss", "E_inf(2,1) and E_inf(2,2) have the stated bases", _bh_spans,
          requires=("ring.axioms",), primes=FULL_PRIMES),
    Check("bh-ss.intermediate", "bh-ss", "intermediate d2, d3 values and kernels", _bh_intermediate,
          requires=("ring.axioms",), primes=FULL_PRIMES),
    Check("bh-ss.leibniz", "bh-ss", "d2, d3 are derivations on the BH base", _bh_leibniz,
          requires=("ring.axioms",), primes=FULL_PRIMES),
    Check("bh-ss.kunneth", "bh-ss", "Kunneth base agrees with the resolution of A2 x PH2 in degrees <= 3",
          _bh_kunneth, requires=("ring.axioms",), primes=FULL_PRIMES),
    Check("bh-ss.convergence", "bh-ss", "assembled E_inf dimensions equal b_n(H) for n <= 4", _bh_convergence,
          requires=("bh-ss.zero",), primes=FULL_PRIMES),
    Check("bockstein.image", "bockstein", "Q0-image classes have equal x1y1z2 coefficients on A3 and A3'",
          bockstein_image_check, requires=("structure.orders",), primes=FULL_PRIMES),
    Check("bockstein.surrogate", "bockstein", "Q0(x1y1z1) has pattern (1, 0), so lies outside the Q0-image",
          _surrogate, primes=FULL_PRIMES),
    Check("bockstein.zero", "bockstein", "zero class has pattern (0, 0)", _zero_pattern, primes=FULL_PRIMES),
    Check("sweep.coefficients", "sweep", "coefficients via g, g' are a - a1 and -a1 for every triple", _sweep,
          primes=FULL_PRIMES),
    Check("characters.delta", "characters", "Delta^*(lambda'') = 0", _char_identity("Delta^*(lambda'') = 0"),
          requires=("structure.orders",), primes=FULL_PRIMES),
    Check("characters.gamma2", "characters", "Gamma2^*(lambda'') = p lambda1 (literal class functions)",
          _char_identity("Gamma2^*(lambda'') = p lambda1"), requires=("structure.orders",), primes=FULL_PRIMES),
    Check("characters.gamma2-reduced", "characters", "Gamma2^*(lambda'') = p lambda1 - p^2",
          _char_identity("Gamma2^*(lambda'') = p lambda1 - p^2"), requires=("structure.orders",),
          primes=FULL_PRIMES),
    Check("characters.a3", "characters", "lambda'' on A3: +1 / -1 pattern and c2 = 0 mod p", _char_a3,
          requires=("structure.orders",), primes=FULL_PRIMES),
    Check("q1.formula", "q1", "Q1(x1y1z2) = x2^p y1 z2 - x1 y2^p z2, nonzero mod M", _q1_formula,
          primes=FULL_PRIMES),
    Check("q1.stable", "q1", "M is Q1-stable", _q1_stable, primes=FULL_PRIMES),
]


def validate_prime(p: int, long: bool = False) -> int:
    p = check_prime(p)  # rejects 2 and composites
    allowed = FULL_PRIMES + (LONG_PRIMES if long else ())
    if p not in allowed:
        raise ValueError(f"p = {p} is not supported" + ("" if long else " (p = 7 needs --long)"))
    return p


def _selected(only: list[str] | None) -> list[Check]:
    if not only:
        return CHECKS
    unknown = [o for o in only if o not in GROUPS and not any(c.id == o for c in CHECKS)]
    if unknown:
        raise ValueError(f"unknown check group(s) {unknown}; choose from {GROUPS}")
    return [c for c in CHECKS if c.group in only or c.id in only]


def verify_all(p: int, only: list[str] | None = None, long: bool = False, log=None) -> VerificationReport:
    p = validate_prime(p, long)
    pl = Pipeline(p, long)
    report = VerificationReport(p)
    status: dict[str, str] = {}
    long_only = p in LONG_PRIMES
    for chk in _selected(only):
        t0 = time.perf_counter()
        witness: dict = {}
        if long_only and chk.group not in ("structure", "cyclic"):
            st, witness = "skipped", {"reason": f"p = {p} runs group construction and cyclic-module checks only"}
        elif chk.primes is not None and p not in chk.primes:
            st, witness = "skipped", {"reason": f"not run for p = {p}"}
        elif any(status.get(r) in ("fail", "skipped") for r in chk.requires):
            st, witness = "skipped", {"reason": f"requires {list(chk.requires)}"}
        else:
            try:
                ok, witness = chk.run(pl)
                st = "pass" if ok else "fail"
            except SkipCheck as e:
                st, witness = "skipped", {"reason": str(e)}
            except Exception as e:  # a crash is a failure, with the traceback as witness
                st, witness = "fail", {"error": repr(e), "traceback": traceback.format_exc(limit=3)}
        if st != "skipped" and not witness:
            st, witness = "fail", {"error": "empty witness"}
        status[chk.id] = st
        entry = {"id": chk.id, "claim": chk.claim, "status": st, "witness": witness,
                 "runtime_ms": int(1000 * (time.perf_counter() - t0))}
        report.checks.append(entry)
        if log:
            log(f"[{st:>7}] {chk.id} ({entry['runtime_ms']} ms)")
    return report
