"""Why Q0(x1 y1 z1) cannot come from the Bockstein image of H^3(H).

Every Q0-image class has the same x1y1z2 coefficient after restricting to A3
and to A3' and reducing modulo M.  The surrogate has coefficients (1, 0).
Pass --full to recompute the Q0 image from the order-729 resolution
(about two minutes and 2.5 GB).
"""

import sys

from cohomcheck.symbolic import SymbolicRing, coefficient_sweep, coefficient_xyz2, q0
from cohomcheck.verify import Pipeline, bockstein_image_check


def main(full: bool) -> None:
    ring = SymbolicRing(3, ("x", "y", "z"))
    g = ring.gens()
    s = q0(g["x1"] * g["y1"] * g["z1"])
    print("Q0(x1 y1 z1) =", s)
    print("x1y1z2 coefficient modulo M:", coefficient_xyz2(s))
    print("coefficient pairs of a x1y1z2 + a1 w1x1z2 + a2 w1y1z2 (via g, via g'):")
    for row in coefficient_sweep(3)[:9]:
        print(f"  {row['triple']} -> ({row['via_g']}, {row['via_g_prime']})")
    if full:
        ok, info = bockstein_image_check(Pipeline(3))
        print(f"dim Q0(H^3(H)) = {info['dim im Q0']}, all pairs equal: {ok}")
        print("pairs:", info["coefficient pairs"])


if __name__ == "__main__":
    main("--full" in sys.argv)
