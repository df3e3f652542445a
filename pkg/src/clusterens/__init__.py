"""Exact-arithmetic toolkit for cluster ensembles.

Modules:
  arith     - multivariate integer polynomials and rational functions
  quiver    - skew-symmetrizable quivers, mutation, isomorphism, class search
  ensemble  - A/X seeds, seed mutation, the monomial map between the spaces
  modular   - mutation-path group elements acting on function fields
  catalog   - built-in quivers, invariants, sequences and verification maps
  cli       - command-line front end
  service   - HTTP session service backing the interactive explorer
"""

__version__ = "0.1.0"
