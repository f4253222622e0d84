"""Decompose lambda'' on A3 into linear characters and expand its Chern class mod 3."""

from cohomcheck.catalog import GroupCatalog
from cohomcheck.characters import a3_analysis, identity_checks


def main() -> None:
    cat = GroupCatalog(3)
    for claim, res in identity_checks(cat).items():
        print(f"  {'holds' if res['holds'] else 'fails':<5}  {claim}")
    a = a3_analysis(cat)
    print("multiplicities by weight (D.alpha, D.beta, G2.xi):")
    for w, m in a["multiplicities"].items():
        print(f"  ({w}) {m:+d}")
    print("c1 =", a["c1"], " c2 =", a["c2"])


if __name__ == "__main__":
    main()
