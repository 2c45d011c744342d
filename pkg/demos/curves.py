"""Walkthrough: (p,q)-harmonic curves in the 3-sphere.

Run with:  python3 demos/curves.py

A helix in S^3 has constant geodesic curvature and torsion; the curve
system then pins the exponent to p = (c - tau^2)/k^2 + 1.  The script
recomputes the Frenet data numerically, evaluates the residual system,
and scans the closed-form exponent over flat and hyperbolic space to show
that no admissible exponent exists there.
"""

import math

import numpy as np

from pqharmonic import (PQParams, curve_system_residual, frenet, helix,
                        p_closed_form)


def main():
    print("== helix in S^3 with alpha = pi/4, a = sqrt(7)/2, b = 1/2 ==")
    hr = helix(math.pi / 4, math.sqrt(7) / 2, 0.5)
    print(f"  closed form: k = {hr.k:.6f}, tau = {hr.tau:.6f}, p = {hr.p:.6f}")

    fr = frenet(hr.curve, 2.0)
    print(f"  numerical Frenet at t=2: k = {fr.k:.9f}, tau = {fr.tau:.9f}")

    for p, q in ((hr.p, 2.0), (hr.p, 3.0), (3.0, 2.0)):
        r = curve_system_residual(fr, PQParams(p, q), c=1.0)
        print(f"  (p,q)=({p:g},{q:g}): max system residual = "
              f"{max(abs(x) for x in r):.2e}")

    print("\n== the exponent law p = (c - tau^2)/k^2 + 1 ==")
    for k, tau in ((1.0, 0.0), (0.75, math.sqrt(7) / 4), (0.49, 0.98)):
        p, ok = p_closed_form(k, tau, c=1.0)
        print(f"  c=+1, k={k:g}, tau={tau:g}: p = {p:.6f}, admissible = {ok}")

    print("\n  flat and hyperbolic ambients admit no proper curve:")
    for c in (0.0, -1.0):
        worst = max(p_closed_form(float(k), float(t), c)[0]
                    for k in np.linspace(0.1, 5, 25)
                    for t in np.linspace(0, 5, 25))
        print(f"  c={c:+g}: max p over a (k,tau) grid = {worst:.6f}  (never > 1)")


if __name__ == "__main__":
    main()
