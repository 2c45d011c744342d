"""Walkthrough: classifying hypersurfaces of space forms.

Run with:  python3 demos/hypersurfaces.py

The script classifies the small sphere S^2(a) inside S^3 and the rotation
cone in R^3, first through their closed-form geometry and then through the
finite-difference path, and recovers the critical exponents by root
finding.
"""

import math

from pqharmonic import (PQParams, classify, cone, plane, solve_p,
                        solve_param_pair, sphere_in_sphere)


def main():
    print("== small sphere S^2(a) in S^3, a^2 = 1/2 ==")
    ch = sphere_in_sphere(m=2, a2=0.5)
    for p, q in ((2.0, 2.0), (2.0, 3.0), (2.5, 2.0)):
        rep = classify(ch, PQParams(p, q))
        print(f"  (p,q)=({p:g},{q:g}): {rep.classification.value}, "
              f"max|eq1|={rep.max_abs_eq1:.2e}, max|eq2|={rep.max_eq2_norm:.2e}")
    rep = classify(ch, PQParams(2.0, 2.0), use_analytic=False, n_per_axis=5)
    print(f"  stencil cross-check at (2,2): max|eq1|={rep.max_abs_eq1:.2e}")

    print("\n  solving for the critical exponent p (expected 1/b^2):")
    for a2 in (0.5, 0.7):
        result = solve_p(sphere_in_sphere(2, a2), q=2.0, bracket=(1.2, 5.0))
        print(f"  a^2={a2:g}: p = {result.p:.8f}  (1/b^2 = {1/(1-a2):.8f})")

    print("\n== rotation cone (r u cos v, r u sin v, u) in R^3 ==")
    r_star = 1.0 / math.sqrt(6.0)
    rep = classify(cone(r_star), PQParams(4.0 / 3.0, 3.0))
    print(f"  r=1/sqrt(6), (p,q)=(4/3,3): {rep.classification.value}, "
          f"max|eq1|={rep.max_abs_eq1:.2e}")

    print("  solving the (p, r) system for q = 3 (expected p=4/3, r=1/sqrt(6)):")
    result = solve_param_pair(lambda r: cone(r), q=3.0,
                              theta_bracket=(0.3, 0.7), p_bracket=(0.5, 2.5))
    print(f"  p = {result.p:.8f}, r = {result.theta:.8f}, "
          f"iterations = {result.iterations}")
    result = solve_param_pair(lambda r: cone(r), q=2.0,
                              theta_bracket=(0.3, 0.7), p_bracket=(0.5, 2.5))
    print(f"  q = 2 lands at p = {result.p:.6f}: admissible = {result.admissible} "
          "(the exponent must exceed 1)")

    print("\n== minimal control case ==")
    rep = classify(plane(), PQParams(3.0, 2.0))
    print(f"  plane in R^3: {rep.classification.value}")


if __name__ == "__main__":
    main()
