from __future__ import annotations

import numpy as np
import pytest

from cohomcheck.cohomology import CohomologyClass, induced_map
from cohomcheck.elemab import a2_model, a3_model, a3p_model
from cohomcheck.symbolic import random_class

BUILDERS = {"A2": a2_model, "A3": a3_model, "A3'": a3p_model}


@pytest.fixture(scope="module")
def models(cat3):
    return {k: f(cat3) for k, f in BUILDERS.items()}


@pytest.mark.parametrize("name", list(BUILDERS))
def test_model_checks(models, name):
    m = models[name]
    assert m.checks() == {"bijective": True, "bockstein compatible": True}


@pytest.mark.parametrize("name", list(BUILDERS))
def test_generators_are_duals(models, name):
    m = models[name]
    gens = m.ring.gens()
    for i, n in enumerate(m.ring.names):
        assert m.to_table(gens[f"{n}1"]) == m.duals[i]
        assert m.to_table(gens[f"{n}2"]) == m.table.bockstein(m.duals[i])


@pytest.mark.parametrize("name", list(BUILDERS))
def test_matching_is_multiplicative(models, name):
    m = models[name]
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b = (int(x) for x in rng.integers(0, 3, 2))
        u, v = random_class(m.ring, a, rng), random_class(m.ring, b, rng)
        if u.is_zero() or v.is_zero() or (u * v).is_zero():
            continue
        assert m.to_table(u * v) == m.table.mul(m.to_table(u), m.to_table(v))
        assert m.to_symbolic(m.to_table(u)) == u


def test_matching_agrees_with_pullback(cat3, models):
    """Inflation to p+^{1+2} kills x1 y1, the class of that extension, and keeps x2."""
    from cohomcheck.resolution import MinimalResolution

    m = models["A2"]
    rex = MinimalResolution.build(cat3.extraspecial, 3)
    infl = induced_map(cat3.proj_extraspecial, rex, m.res, 2)
    g = m.ring.gens()
    xy = m.to_table(g["x1"] * g["y1"])
    assert not (infl @ xy.array % 3).any()
    assert (infl @ m.to_table(g["x2"]).array % 3).any()


def test_to_symbolic_rejects_wrong_shape(models):
    m = models["A2"]
    with pytest.raises(Exception):
        m.to_symbolic(CohomologyClass.of(2, [1, 0], 3))
