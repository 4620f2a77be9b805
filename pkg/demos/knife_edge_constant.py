"""Knife-edge limit: the interaction constant of a half plane and a plane.

A zero-radius parabolic cylinder at zero tilt is a half plane standing
perpendicular to the mirror below it.  Its energy per unit length obeys
E/(hbar c L) = -C/H^2 with a pure number C that this script computes
from a truncation ladder plus extrapolation, split into Dirichlet and
Neumann channels.
"""

from paracasimir.energy import energy_per_length
from paracasimir.scattering import Geometry

LADDER = (20, 40, 80, 160)


def main():
    knife = Geometry(R=0.0, H=1.0)
    results = {
        channel: energy_per_length(knife, nu_max=LADDER, channel=channel)
        for channel in ("em", "dirichlet", "neumann")
    }

    print("Truncation ladder for the full field (values of -E*H^2):")
    for order, value in results["em"].series:
        print(f"  nu_max = {order:4d}:  C = {-value:.9f}")
    print()
    for channel, res in results.items():
        print(f"C_{channel:<10s} = {-res.extrapolated:.8f} "
              f"(truncation +- {res.trunc_error:.1e}, "
              f"quadrature +- {res.quad_error:.1e})")
    gap = results["em"].extrapolated - (
        results["dirichlet"].extrapolated + results["neumann"].extrapolated)
    print(f"\nChannel additivity defect: {gap:.2e}")

    print("\nSeparation scaling (H^2 * E is invariant):")
    for H in (0.5, 1.0, 2.0):
        res = energy_per_length(Geometry(0.0, H), nu_max=64)
        print(f"  H = {H}: H^2 E = {H * H * res.value:.9f}")


if __name__ == "__main__":
    main()
