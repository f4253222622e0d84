"""Named groups and maps built from the standard monomial generators.

Single-factor groups live in the first factor.  Quotients by the scalar
subgroup are denoted with a ``P`` prefix (projective image).
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .groups import (
    FiniteGroup,
    Homomorphism,
    MonomialElement,
    check_prime,
    direct_product,
    gamma1,
    gamma2,
    generate,
    hom,
    inclusion,
    standard_generators,
)




class GroupCatalog:
    """Lazily constructed groups and homomorphisms for one prime p.

    Attribute names:
      extraspecial  <alpha, beta, xi>, order p^3
      a2            extraspecial / <xi>
      h2            <beta, sigma_1..sigma_p>, order p^(p+1)
      ph2           h2 / <xi>
      product       the two-factor group before dividing by the diagonal scalar
      h             product / <diagonal xi>, order p^(p+3)
      a3, a3p       the two rank-3 elementary abelian subgroups of h
      ph            h / <second-factor xi>
      a2_ph2        a2 x ph2
    """

    def __init__(self, p: int):
        self.p = check_prime(p)
        self.gens = standard_generators(self.p)

    def _g(self, *names: str) -> list[MonomialElement]:
        return [self.gens[n] for n in names]

    @property
    def sigmas(self) -> list[str]:
        return [f"sigma{k}" for k in range(1, self.p + 1)]

    # --- single factor ---

    @cached_property
    def extraspecial(self) -> FiniteGroup:
        return generate(self._g("alpha", "beta", "xi"), self.p, name="p+^{1+2}",
                        gen_names=("alpha", "beta", "xi"))

    @cached_property
    def a2(self) -> FiniteGroup:
        return generate(self._g("alpha", "beta", "xi"), self.p, center=self._g("xi"), name="A2",
                        gen_names=("alpha", "beta", "xi"))

    @cached_property
    def h2(self) -> FiniteGroup:
        names = ("beta", *self.sigmas)
        return generate(self._g(*names), self.p, name="H2", gen_names=names)

    @cached_property
    def ph2(self) -> FiniteGroup:
        names = ("beta", *self.sigmas)
        return generate(self._g(*names), self.p, center=self._g("xi"), name="PH2", gen_names=names)

    @cached_property
    def proj_extraspecial(self) -> Homomorphism:
        return hom(self.extraspecial, self.a2, self.extraspecial.generators, name="proj")

    @cached_property
    def proj_h2(self) -> Homomorphism:
        return hom(self.h2, self.ph2, self.h2.generators, name="proj")

    @cached_property
    def iota_a2(self) -> Homomorphism:
        """A2 -> PH2 inclusion."""
        return inclusion(self.a2, self.ph2, name="iota")

    @cached_property
    def iota_extraspecial(self) -> Homomorphism:
        return inclusion(self.extraspecial, self.h2, name="iota")

    @cached_property
    def c_sigma(self) -> FiniteGroup:
        """<image of sigma_1> inside PH2, cyclic of order p."""
        return generate(self._g("sigma1"), self.p, center=self._g("xi"), name="<sigma1>",
                        gen_names=("sigma1",))

    @cached_property
    def c_beta(self) -> FiniteGroup:
        return generate(self._g("beta"), self.p, center=self._g("xi"), name="<beta>", gen_names=("beta",))

    @cached_property
    def beta_xi(self) -> FiniteGroup:
        """<beta, xi> inside H2: the split extension over c_beta."""
        return generate(self._g("beta", "xi"), self.p, name="<beta,xi>", gen_names=("beta", "xi"))

    @cached_property
    def sigma_lift(self) -> FiniteGroup:
        """<sigma_1> inside H2, cyclic of order p^2."""
        return generate(self._g("sigma1"), self.p, name="<sigma1>~", gen_names=("sigma1",))

    @cached_property
    def iota_sigma(self) -> Homomorphism:
        return inclusion(self.c_sigma, self.ph2, name="iota_sigma")

    @cached_property
    def iota_beta(self) -> Homomorphism:
        return inclusion(self.c_beta, self.ph2, name="iota_beta")

    @cached_property
    def proj_sigma(self) -> Homomorphism:
        """<sigma1> (order p^2) -> <image of sigma1> (order p)."""
        return hom(self.sigma_lift, self.c_sigma, self.sigma_lift.generators, name="proj")

    @cached_property
    def proj_beta(self) -> Homomorphism:
        """<beta, xi> -> <image of beta>."""
        return hom(self.beta_xi, self.c_beta, self.beta_xi.generators, name="proj")

    @cached_property
    def lift_sigma(self) -> Homomorphism:
        return inclusion(self.sigma_lift, self.h2, name="iota_sigma~")

    @cached_property
    def lift_beta(self) -> Homomorphism:
        return inclusion(self.beta_xi, self.h2, name="iota_beta~")

    # --- two factors ---

    @cached_property
    def h_generators(self) -> tuple[list[MonomialElement], tuple[str, ...]]:
        names = ("D.alpha", "D.beta", "D.xi", "G2.beta", *[f"G2.{s}" for s in self.sigmas])
        return self._g(*names), names

    @cached_property
    def product(self) -> FiniteGroup:
        gens, names = self.h_generators
        return generate(gens, self.p, name="p+ x H2", gen_names=names)

    @cached_property
    def h(self) -> FiniteGroup:
        gens, names = self.h_generators
        return generate(gens, self.p, center=self._g("D.xi"), name="H", gen_names=names)

    @cached_property
    def a3(self) -> FiniteGroup:
        names = ("D.alpha", "D.beta", "D.xi", "G2.xi")
        return generate(self._g(*names), self.p, center=self._g("D.xi"), name="A3", gen_names=names)

    @cached_property
    def a3p(self) -> FiniteGroup:
        names = ("G1.alpha", "G2.beta", "D.xi", "G2.xi")
        return generate(self._g(*names), self.p, center=self._g("D.xi"), name="A3'", gen_names=names)

    @cached_property
    def ph(self) -> FiniteGroup:
        gens, names = self.h_generators
        return generate(gens, self.p, center=self._g("D.xi", "G2.xi"), name="pi(H)", gen_names=names)

    @cached_property
    def a2_ph2(self) -> FiniteGroup:
        return direct_product(self.a2, self.ph2, name="A2 x PH2")

    @cached_property
    def g(self) -> Homomorphism:
        return inclusion(self.a3, self.h, name="g")

    @cached_property
    def g_prime(self) -> Homomorphism:
        return inclusion(self.a3p, self.h, name="g'")

    @cached_property
    def pi(self) -> Homomorphism:
        """H -> A2 x PH2, (x1, x2) -> (proj x1, proj x2)."""
        return hom(self.h, self.a2_ph2, self.h.generators, name="pi")

    @cached_property
    def pi_to_ph(self) -> Homomorphism:
        return hom(self.h, self.ph, self.h.generators, name="pi")

    @cached_property
    def ph_iso(self) -> Homomorphism:
        """pi(H) -> A2 x PH2, identity on representatives."""
        return hom(self.ph, self.a2_ph2, self.ph.generators, name="pi(H)=A2xPH2")

    @cached_property
    def phi(self) -> Homomorphism:
        """A3 -> A2 sending the diagonal alpha, beta to their images."""
        a, b = self.gens["alpha"], self.gens["beta"]
        one = MonomialElement.identity(self.p)
        return hom(self.a3, self.a2, [a, b, one, one], name="phi")

    @cached_property
    def phi_prime(self) -> Homomorphism:
        a, b = self.gens["alpha"], self.gens["beta"]
        one = MonomialElement.identity(self.p)
        return hom(self.a3p, self.a2, [a, b, one, one], name="phi'")

    @cached_property
    def g_low(self) -> Homomorphism:
        """A2 -> A2 x PH2, diagonal."""
        d = self.gens
        return hom(self.a2, self.a2_ph2, [d["D.alpha"], d["D.beta"], d["D.xi"]], name="g")

    @cached_property
    def g_prime_low(self) -> Homomorphism:
        d = self.gens
        one = MonomialElement.identity(self.p)
        return hom(self.a2, self.a2_ph2, [d["G1.alpha"], d["G2.beta"], one], name="g'")

    @cached_property
    def pr1(self) -> Homomorphism:
        """A2 x PH2 -> A2."""
        g = self.a2_ph2
        imgs = g.generators.copy()
        imgs[:, self.p + 1:] = 0
        return hom(g, self.a2, imgs, name="pr1")

    @cached_property
    def pr2(self) -> Homomorphism:
        """A2 x PH2 -> PH2."""
        g = self.a2_ph2
        k = self.p + 1
        imgs = np.zeros_like(g.generators)
        imgs[:, :k] = g.generators[:, k:]
        return hom(g, self.ph2, imgs, name="pr2")

    def central_element(self, group: FiniteGroup, name: str) -> int:
        return int(group.index(self.gens[name].row())[0])


def generator_identities(p: int) -> dict[str, bool]:
    """Defining identities among the standard generators, checked as elements."""
    s = standard_generators(p)
    xi, alpha, beta = s["xi"], s["alpha"], s["beta"]
    out = {}
    out["sigma_k^p = xi"] = all(s[f"sigma{k}"] ** p == xi for k in range(1, p + 1))
    prod = MonomialElement.identity(p)
    for k in range(2, p + 1):
        prod = prod * s[f"sigma{k}"] ** (k - 1)
    out["sigma_2 sigma_3^2 ... = xi^((p-1)/2) alpha^-1"] = prod == xi ** ((p - 1) // 2) * alpha.inverse()
    out["Gamma1(x) = Delta(x) Gamma2(x^-1)"] = all(
        gamma1(x) == s[f"D.{n}"] * gamma2(x.inverse()) for n, x in (("alpha", alpha), ("beta", beta), ("xi", xi)))
    # modulo the diagonal scalar, Gamma1(xi) = Gamma2(xi)^-1; both generate one subgroup
    d = s["D.xi"]
    q = generate([s["G1.xi"], s["G2.xi"]], p, center=[d])
    i1 = int(q.index(s["G1.xi"].row())[0])
    i2 = int(q.index(s["G2.xi"].row())[0])
    out["Gamma1(xi) = Gamma2(xi)^-1 mod <Delta(xi)>"] = i1 == int(q.index(s["G2.xi"].inverse().row())[0])
    out["<Gamma1(xi)> = <Gamma2(xi)> mod <Delta(xi)>"] = q.order == p and i1 != q.identity and i2 != q.identity
    out["Gamma1(xi) = Gamma2(xi) mod <Delta(xi)> (literal)"] = i1 == i2
    return out
