"""How good is the proximity force approximation for a parabolic cylinder?

The PFA integrates the parallel-plate energy density over the local gap
and is exact as H/R -> 0.  This script sweeps H/R at R = 1 and prints
the ratio of the computed energy to the PFA value.  Two things stand
out: the ratio crosses 1 near H/R ~ 0.3 and grows at large separations
(where the energy decays as 1/H^2, much slower than the PFA's H^{-5/2}),
and below the crossing it dips under 1, still moving away from 1 at
H/R = 0.1, the smallest gap that converges in reasonable time.
"""

from paracasimir.approx import pfa_energy
from paracasimir.energy import energy_per_length
from paracasimir.scattering import Geometry

POINTS = (
    (0.1, (100, 200, 400, 800)),
    (0.25, (25, 50, 100, 200)),
    (0.5, (25, 50, 100, 200)),
    (1.0, (15, 30, 60, 120)),
    (2.0, (15, 30, 60, 120)),
    (4.0, (15, 30, 60, 120)),
)


def main():
    print("R = 1, theta = 0")
    print(f"{'H/R':>5s} {'E*H^2':>13s} {'E/E_pfa':>10s} {'trunc':>9s}")
    for h_over_r, ladder in POINTS:
        result = energy_per_length(Geometry(1.0, h_over_r), nu_max=ladder)
        pfa = pfa_energy(h_over_r, 1.0)
        h2 = h_over_r * h_over_r
        print(f"{h_over_r:5.2f} {result.extrapolated * h2:13.8f} "
              f"{result.extrapolated / pfa:10.6f} "
              f"{result.trunc_error / abs(pfa):9.1e}")
    print("\nKnife-edge reference: E*H^2 -> -0.0067415 as H/R -> infinity;")
    print("the PFA column crosses 1 between H/R = 0.25 and 0.5 and dips")
    print("below 1 closer in, reaching 0.9933 at H/R = 0.1.")


if __name__ == "__main__":
    main()
