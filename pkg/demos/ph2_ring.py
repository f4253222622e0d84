"""Products and Bocksteins in the mod-3 cohomology of the projective image of H2."""

from cohomcheck.spectral import ph2_setup


def main() -> None:
    res, t = ph2_setup(3, 6)
    print("Betti numbers through degree 6:", res.betti)
    n = t.named
    u2, v1, w1 = n["u2"], n["v1"], n["w1"]
    rows = [
        ("u2 v1", t.mul(u2, v1)),
        ("u2^2", t.mul(u2, u2)),
        ("u2 w1", t.mul(u2, w1)),
        ("Q0(w1 u2)", t.bockstein(t.mul(w1, u2))),
    ]
    for name, c in rows:
        print(f"  {name:<10} degree {c.degree}: {'zero' if c.is_zero() else c.vector}")
    print("table axioms:", t.check_axioms())


if __name__ == "__main__":
    main()
