"""E_inf tables for the two central extensions, with the certificate behind each entry."""

from cohomcheck.spectral import bg_case, bh_case


def show(title: str, ss, top: int) -> None:
    print(title)
    for n in range(top + 1):
        row = ss.e_infinity(n)
        cells = "  ".join(f"{s},{t}:{v['dim']}" for (s, t), v in row.items())
        total = ss.assemble_dims(n) if all(v["certified"] for v in row.values()) else "?"
        print(f"  total {n}: {cells}   sum {total}")


def main() -> None:
    ss, _ = bg_case(3, 4)
    show("product of two copies of BPU(3), d2(z1) = a2, d3(z2) = a3", ss, 4)
    for pos, v in ss.e_infinity(4).items():
        print(f"    {pos}: {v['reason']}")
    ss, _ = bh_case(3, 4)
    show("base A2 x PH2, fibre classes z1, z2", ss, 4)


if __name__ == "__main__":
    main()
