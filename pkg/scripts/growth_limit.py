#!/usr/bin/env python3
"""Watch the double-arrow orbit converge to its growth multiplier.

The conserved quantity F fixes a linear recurrence a_{n-1} + a_{n+1} = F a_n,
so successive ratios approach (F + sqrt(F^2 - 4)) / 2.
"""

import sys

from clusterens import catalog


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 24
    orbit = catalog.a1_affine_orbit(1.0, 1.0, n + 1)
    lam = catalog.limit_multiplier(3.0)
    print(f"target multiplier: {lam:.15f}")
    print(f"{'n':>3} {'a_n':>18} {'ratio':>18} {'error':>12}")
    for k in range(1, n):
        ratio = orbit[k] / orbit[k - 1]
        print(f"{k:>3} {orbit[k]:>18.6g} {ratio:>18.12f} {abs(ratio - lam):>12.2e}")


if __name__ == "__main__":
    main()
