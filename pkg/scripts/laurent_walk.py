#!/usr/bin/env python3
"""Random-walk a seed and print how the cluster variables grow.

Every printed variable is verified to be a Laurent polynomial with positive
integer coefficients; the walk reflects when expressions pass the size cap
(free walks grow doubly exponentially and stop being printable very fast).

Usage: python3 scripts/laurent_walk.py [catalog-name] [steps] [cap]
"""

import random
import sys

from clusterens import catalog
from clusterens.ensemble import ASeed, mutate_a


def main():
    name = sys.argv[1] if len(sys.argv) > 1 else "markov"
    steps = int(sys.argv[2]) if len(sys.argv) > 2 else 40
    cap = int(sys.argv[3]) if len(sys.argv) > 3 else 40
    entry = catalog.build(name)
    seed = ASeed.initial(entry.quiver, entry.a_labels)
    rng = random.Random(0)
    last = None
    force_back = False
    print(f"{'step':>4} {'node':>4} {'terms':>6} {'degree':>6}  denominator vector")
    for step in range(steps):
        k = last if (force_back and last is not None) else rng.choice(seed.quiver.mutable)
        seed = mutate_a(seed, k)
        v = seed.vars[k]
        assert v.is_positive_laurent()
        terms = len(v.num.terms)
        print(f"{step:>4} {entry.labels[k]:>4} {terms:>6} "
              f"{v.num.total_degree():>6}  {v.denominator_vector()}")
        force_back = terms > cap
        last = k


if __name__ == "__main__":
    main()
