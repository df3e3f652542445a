#!/usr/bin/env python3
"""Walk the Markov triple tree and confirm the Diophantine identity.

Usage: python3 scripts/markov_tree.py [depth]
"""

import math
import sys

from clusterens import catalog


def main():
    depth = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    triples = catalog.markov_triples(depth)
    width = len(str(max(t[2] for t in triples)))
    for x, y, z in triples:
        assert x * x + y * y + z * z == 3 * x * y * z
        assert math.gcd(x, y) == math.gcd(y, z) == 1
        print(f"{x:>{width}} {y:>{width}} {z:>{width}}")
    print(f"# {len(triples)} triples to depth {depth}; "
          "every one satisfies x^2 + y^2 + z^2 = 3xyz")


if __name__ == "__main__":
    main()
