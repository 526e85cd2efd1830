"""The 2x2 case drawn on the chart ball.

Unit-trace 2x2 effects [[t, z], [conj(z), 1-t]] map affinely to points
(t, Re z, Im z).  Those with determinant strictly between 0 and 1/4
fill the open ball of radius 1/2 about (1/2, 0, 0); rank-one
projections sit on the boundary sphere.  A strict compatible pair
(A, B) = ((1-L) P + L Q, (1-L) P + L Q') lives on a smaller "pivotal"
sphere internally tangent to the ball at P.
"""

import numpy as np

from abscompat import (
    ball_to_sphere,
    bloch_point,
    geometry_report,
    pair_from_projections,
    random_spheroid_partners,
    sphere_to_ball,
    spheroid_residual,
)

P0 = np.diag([0.0, 1.0]).astype(complex)
Q = 0.5 * np.ones((2, 2), dtype=complex)


def main():
    index = 0.5
    report = geometry_report(P0, Q, index)

    print("pivotal sphere: center", report.sphere.center, "radius", report.sphere.radius)
    for name, pt in report.points.items():
        print("  %-2s -> %s" % (name, np.round(pt, 6)))

    print("residuals (tangency, coplanarity, parallelism, right angle, antipodality):")
    for name, value in report.residuals.items():
        print("  %-12s %.3e" % (name, value))

    # the sphere-to-ball bijection: A corresponds to Q, B to Q'
    a, b = pair_from_projections(P0, Q, index)
    r, rp = sphere_to_ball(report.sphere, bloch_point(a))
    print("A pulled back to the ball boundary:", np.round(r, 6), "(the point of Q)")
    c, d = ball_to_sphere(report.sphere, r)
    print("and pushed forward again:", np.round(c, 6), "antipode", np.round(d, 6))

    # every effect compatible with a fixed A has constant focal sum to
    # the foci A and A' = image of 1 - A
    partners = random_spheroid_partners(a, 12, seed=5)
    stats = spheroid_residual(a, partners)
    print("spheroid focal sums over", stats.count, "partners:")
    print("  mean", stats.mean, "spread", stats.spread)


if __name__ == "__main__":
    main()
