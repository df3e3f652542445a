"""Seeds for the two coupled spaces attached to a quiver.

An A-seed carries one value per node (frozen nodes carry coefficient
variables); an X-seed carries one value per mutable node.  Values are
normally RationalFunctions of the initial cluster, but any field-like type
(Fraction, float, mpmath.mpf) works: the exchange formulas below only use
+, *, / and integer powers, which lets sequence generators and floating
limit computations reuse the exact-symbolic code path.

Exchange rules (eps is the current exchange matrix):
  A, mutation at i:  a_i' = (prod_j a_j^[-eps_ij]_+ + prod_k a_k^[eps_ik]_+) / a_i
  X, mutation at i:  x_i' = 1/x_i;  x_j' = x_j * (1 + x_i^-sgn(eps_ji))^-eps_ji
                     for mutable j with eps_ji != 0; others unchanged.
Both rules are involutions, and the monomial map x_j = prod_i a_i^eps_ji
commutes with them (verified symbolically in the test suite, which pins the
index orientation).

Seeds are immutable; mutation returns new seeds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .arith import RationalFunction, render
from .quiver import FrozenNodeError, Quiver, mutate as mutate_quiver


def a_names(q: Quiver, labels: Sequence[str] = None) -> Tuple[str, ...]:
    if labels is not None:
        return tuple(labels)
    return tuple(f"a{i + 1}" for i in range(q.n))


def x_names(q: Quiver, labels: Sequence[str] = None) -> Tuple[str, ...]:
    if labels is not None:
        return tuple(labels)
    return tuple(f"x{i + 1}" for i in q.mutable)


@dataclass(frozen=True)
class ASeed:
    """Quiver plus one value per node, initially the identity assignment."""

    quiver: Quiver
    names: Tuple[str, ...]
    vars: tuple

    @staticmethod
    def initial(q: Quiver, names: Sequence[str] = None) -> "ASeed":
        names = a_names(q, names)
        if len(names) != q.n:
            raise ValueError("one name per node required")
        vars = tuple(RationalFunction.variable(names, i) for i in range(q.n))
        return ASeed(q, names, vars)

    @staticmethod
    def numeric(q: Quiver, values: Sequence) -> "ASeed":
        if len(values) != q.n:
            raise ValueError("one value per node required")
        return ASeed(q, a_names(q), tuple(values))

    def to_dict(self) -> dict:
        return {
            "quiver": self.quiver.to_dict(),
            "vars": [render(v) for v in self.vars],
        }


@dataclass(frozen=True)
class XSeed:
    """Quiver plus one value per mutable node (frozen nodes carry none)."""

    quiver: Quiver
    names: Tuple[str, ...]
    vars: tuple  # parallel to quiver.mutable

    @staticmethod
    def initial(q: Quiver, names: Sequence[str] = None) -> "XSeed":
        names = x_names(q, names)
        if len(names) != len(q.mutable):
            raise ValueError("one name per mutable node required")
        vars = tuple(RationalFunction.variable(names, i) for i in range(len(names)))
        return XSeed(q, names, vars)

    @staticmethod
    def numeric(q: Quiver, values: Sequence) -> "XSeed":
        if len(values) != len(q.mutable):
            raise ValueError("one value per mutable node required")
        return XSeed(q, x_names(q), tuple(values))

    def slot(self, node: int) -> int:
        """Index into vars for a mutable node."""
        return self.quiver.mutable.index(node)

    def var(self, node: int):
        return self.vars[self.slot(node)]

    def to_dict(self) -> dict:
        return {
            "quiver": self.quiver.to_dict(),
            "vars": [render(v) for v in self.vars],
        }


def mutate_a(seed: ASeed, i: int) -> ASeed:
    """A-seed mutation: only the variable at i changes; coefficients multiply in."""
    q = seed.quiver
    if not q.is_mutable(i):
        raise FrozenNodeError(f"node {i} is frozen")
    eps = q.matrix
    one = seed.vars[i] ** 0
    p_in = one
    p_out = one
    for j in range(q.n):
        e = eps[i][j]
        if e < 0:
            p_in = p_in * seed.vars[j] ** (-e)
        elif e > 0:
            p_out = p_out * seed.vars[j] ** e
    new_var = (p_in + p_out) / seed.vars[i]
    vars = list(seed.vars)
    vars[i] = new_var
    return ASeed(mutate_quiver(q, i), seed.names, tuple(vars))


def mutate_x(seed: XSeed, i: int) -> XSeed:
    """X-seed mutation; nodes not adjacent to i keep their values."""
    q = seed.quiver
    if not q.is_mutable(i):
        raise FrozenNodeError(f"node {i} is frozen")
    eps = q.matrix
    xi = seed.var(i)
    one = xi ** 0
    vars = list(seed.vars)
    for slot, j in enumerate(q.mutable):
        if j == i:
            vars[slot] = one / xi
            continue
        e = eps[j][i]
        if e == 0:
            continue
        s = 1 if e > 0 else -1
        vars[slot] = seed.vars[slot] * (one + xi ** (-s)) ** (-e)
    return XSeed(mutate_quiver(q, i), seed.names, tuple(vars))


def rho(seed: ASeed) -> XSeed:
    """The monomial map from the A-side seed to the X-side seed.

    x at mutable node j is prod_i a_i^eps_ji over all nodes i, frozen
    included; the index orientation is pinned by rho commuting with mutation
    and by the catalog identities.
    """
    q = seed.quiver
    eps = q.matrix
    vars = []
    for j in q.mutable:
        acc = seed.vars[j] ** 0
        for i in range(q.n):
            e = eps[j][i]
            if e:
                acc = acc * seed.vars[i] ** e
        vars.append(acc)
    return XSeed(q, x_names(q), tuple(vars))


def rho_pullback(f: RationalFunction, q: Quiver,
                 a_labels: Sequence[str] = None,
                 x_labels: Sequence[str] = None) -> RationalFunction:
    """Pull an X-side function back to the A-side along the monomial map."""
    seed = ASeed.initial(q, a_labels)
    xs = rho(seed)
    images = dict(zip(x_names(q, x_labels), xs.vars))
    return f.substitute(images)


def apply_path(seed, path: Sequence[int]):
    """Left-to-right composition of single mutations (flavor-preserving)."""
    step = mutate_a if isinstance(seed, ASeed) else mutate_x
    for k in path:
        seed = step(seed, k)
    return seed


def laurent_check(seed: ASeed) -> bool:
    """True iff every cluster variable is a Laurent polynomial in the initial ones."""
    return all(v.is_laurent() for v in seed.vars)


def positive_laurent_check(seed: ASeed) -> bool:
    return all(v.is_positive_laurent() for v in seed.vars)
