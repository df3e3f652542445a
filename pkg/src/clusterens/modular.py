"""Mutation-path group elements and their action on function fields.

An element is a pair {P, sigma}: P a mutation path based at a fixed quiver,
sigma a node bijection from the base quiver onto the path-applied quiver.
The product g1 * g2 is the element acting as "g2 first, then g1":

    {P1, s1} * {P2, s2} = {P2 + s2(P1), s2 o s1}

so that act(compose(g1, g2), f) = act(g1, act(g2, f)); the pentagon and
hexagon relations pinned in the tests fix this order convention.

The action on a rational function of the initial cluster expresses the
initial chart's coordinates in the final chart (walking the reversed path,
which inverts the transition maps since each mutation is an involution) and
then renames the final chart's variables back through sigma: the walk is
seeded with node m carrying the variable named sigma^-1(m), the standard
left action of sigma on functions.

Everything here is pure and immutable; exchange-class search deduplicates by
canonical rational-function forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .arith import RationalFunction, render
from .ensemble import ASeed, XSeed, a_names, mutate_a, mutate_x, x_names
from .quiver import (
    NodeBijection,
    Quiver,
    all_isomorphisms,
    apply_path as apply_path_quiver,
)


class BaseMismatch(ValueError):
    """Group elements based at different quivers."""


class NotAnIsomorphism(ValueError):
    """The closing permutation does not carry the base quiver to the path image."""


@dataclass(frozen=True)
class GroupElement:
    """A mutation path with a closing isomorphism, based at `quiver`."""

    quiver: Quiver
    path: Tuple[int, ...]
    perm: NodeBijection
    labels: Tuple[str, ...] = None  # optional display names per node

    def __post_init__(self):
        q = self.quiver
        object.__setattr__(self, "path", tuple(self.path))
        object.__setattr__(self, "perm", tuple(self.perm))
        if sorted(self.perm) != list(range(q.n)):
            raise NotAnIsomorphism(f"{self.perm} is not a permutation of {q.n} nodes")
        target = apply_path_quiver(q, self.path)
        for i in q.frozen:
            if self.perm[i] != i:
                raise NotAnIsomorphism("closing isomorphism must fix frozen nodes")
        for i in range(q.n):
            if q.multipliers[i] != target.multipliers[self.perm[i]]:
                raise NotAnIsomorphism("closing isomorphism must preserve multipliers")
            for j in range(q.n):
                if q.matrix[i][j] != target.matrix[self.perm[i]][self.perm[j]]:
                    raise NotAnIsomorphism(
                        "closing permutation is not a quiver isomorphism"
                    )

    def target_quiver(self) -> Quiver:
        return apply_path_quiver(self.quiver, self.path)

    def to_dict(self) -> dict:
        return {"path": list(self.path), "perm": list(self.perm)}

    def describe(self) -> str:
        labels = self.labels or tuple(str(i + 1) for i in range(self.quiver.n))
        path = "".join(labels[k] for k in self.path) or "<>"
        cycles = _cycles(self.perm, labels)
        return "{%s,%s}" % (path, cycles)


def _cycles(perm: NodeBijection, labels: Sequence[str]) -> str:
    seen = set()
    out = ""
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out += "(" + "".join(labels[k] for k in cyc) + ")"
    return out or "()"


def identity(q: Quiver, labels: Sequence[str] = None) -> GroupElement:
    return GroupElement(q, (), tuple(range(q.n)), tuple(labels) if labels else None)


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """g1 * g2, acting as g1 after g2 on functions: act(g1*g2, f) = act(g1, act(g2, f))."""
    if g1.quiver != g2.quiver:
        raise BaseMismatch("group elements based at different quivers")
    path = g2.path + tuple(g2.perm[k] for k in g1.path)
    perm = tuple(g2.perm[g1.perm[k]] for k in range(g1.quiver.n))
    return GroupElement(g1.quiver, path, perm, g1.labels or g2.labels)


def inverse(g: GroupElement) -> GroupElement:
    inv = [0] * len(g.perm)
    for i, p in enumerate(g.perm):
        inv[p] = i
    path = tuple(inv[k] for k in reversed(g.path))
    return GroupElement(g.quiver, path, tuple(inv), g.labels)


def power(g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        return power(inverse(g), -k)
    acc = identity(g.quiver, g.labels)
    for _ in range(k):
        acc = compose(acc, g)
    return acc


# ---------------------------------------------------------------------------
# action on functions


def _inverse_perm(perm: NodeBijection) -> NodeBijection:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def _walk_images(g: GroupElement, flavor: str, seed_values=None, names=None):
    """Images of the base chart's variables under g, as values.

    Walks the reversed path from the path-applied quiver, seeding node m with
    the variable named sigma^-1(m) (or with the caller's numeric values), and
    returns the arrived seed whose entries express the base coordinates.
    """
    q = g.quiver
    target = g.target_quiver()
    inv = _inverse_perm(g.perm)
    if flavor == "a":
        names = names or a_names(q)
        if seed_values is None:
            seed_values = tuple(
                RationalFunction.variable(names, inv[m]) for m in range(q.n)
            )
        seed = ASeed(target, names, tuple(seed_values))
        step = mutate_a
    elif flavor == "x":
        names = names or x_names(q)
        mutable = q.mutable
        if seed_values is None:
            slot = {node: s for s, node in enumerate(mutable)}
            seed_values = tuple(
                RationalFunction.variable(names, slot[inv[m]]) for m in mutable
            )
        seed = XSeed(target, names, tuple(seed_values))
        step = mutate_x
    else:
        raise ValueError("flavor must be 'a' or 'x'")
    for k in reversed(g.path):
        seed = step(seed, k)
    return seed


def act(g: GroupElement, f: RationalFunction, flavor: str = "a") -> RationalFunction:
    """The functional exchange of f by g (f over the base quiver's variables).

    The function's own variable tuple names the seed: one name per node on
    the A side, one per mutable node on the X side.
    """
    q = g.quiver
    expected = q.n if flavor == "a" else len(q.mutable)
    if flavor not in ("a", "x"):
        raise ValueError("flavor must be 'a' or 'x'")
    if len(f.names) != expected:
        raise ValueError(
            f"function has {len(f.names)} variables; the {flavor}-side basis needs {expected}"
        )
    seed = _walk_images(g, flavor, names=f.names)
    images = dict(zip(f.names, seed.vars))
    return f.substitute(images)


def is_trivial(g: GroupElement) -> bool:
    """True iff g fixes every initial X coordinate, checked symbolically."""
    q = g.quiver
    names = x_names(q)
    seed = _walk_images(g, "x")
    return all(
        seed.vars[s] == RationalFunction.variable(names, s)
        for s in range(len(names))
    )


def _numeric_point(n: int):
    from fractions import Fraction

    # fixed generic positive rationals, no small multiplicative relations
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    return [Fraction(primes[i % len(primes)] + 1, primes[(i + 5) % len(primes)])
            for i in range(n)]


def _screen_trivial(g: GroupElement, prec: int = 200) -> bool:
    """Cheap high-precision numeric test; certainly-nontrivial elements fail fast.

    Heights of X values grow doubly exponentially along long paths, so the
    screen uses mpmath floats (unbounded exponent); a positive screen is
    always confirmed symbolically by the caller.
    """
    import mpmath

    q = g.quiver
    mutable = q.mutable
    point = _numeric_point(len(mutable))
    inv = _inverse_perm(g.perm)
    with mpmath.workprec(prec):
        vals = [mpmath.mpf(p.numerator) / p.denominator for p in point]
        slot = {node: s for s, node in enumerate(mutable)}
        seeded = tuple(vals[slot[inv[m]]] for m in mutable)
        seed = _walk_images(g, "x", seed_values=seeded)
        for s in range(len(mutable)):
            ref = vals[s]
            if mpmath.fabs(seed.vars[s] - ref) > mpmath.fabs(ref) * mpmath.mpf(2) ** (20 - prec):
                return False
    return True


def order(g: GroupElement, bound: int = 50) -> Optional[int]:
    """Least k <= bound with g^k trivial, else None.

    Degrees of the X images grow fast for infinite-order elements, so each
    power is screened numerically first and only screen-positive powers are
    confirmed by the exact symbolic triviality check.
    """
    acc = identity(g.quiver, g.labels)
    for k in range(1, bound + 1):
        acc = compose(acc, g)
        if _screen_trivial(acc) and is_trivial(acc):
            return k
    return None


def commute(g1: GroupElement, g2: GroupElement) -> bool:
    lhs = compose(g1, g2)
    rhs = compose(g2, g1)
    return is_trivial(compose(lhs, inverse(rhs)))


def verify_invariant(
    f: RationalFunction, generators: Iterable[GroupElement], flavor: str = "a"
) -> bool:
    """True iff every generator fixes f (the generated subgroup then does)."""
    gens = list(generators)
    if len({g.quiver for g in gens}) > 1:
        raise BaseMismatch("generators based at different quivers")
    return all(act(g, f, flavor) == f for g in gens)


class ExchangeClassExceeded(RuntimeError):
    pass


def exchange_class(
    f: RationalFunction,
    generators: Sequence[GroupElement],
    max_size: int = 256,
    flavor: str = "a",
):
    """Closure of {f} under the generators and their inverses, up to max_size."""
    gens = list(generators) + [inverse(g) for g in generators]
    seen = {f}
    frontier = [f]
    while frontier:
        nxt = []
        for h in sorted(frontier, key=render):
            for g in gens:
                img = act(g, h, flavor)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
                    if len(seen) > max_size:
                        raise ExchangeClassExceeded(
                            f"exchange class exceeds {max_size} elements"
                        )
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# groupoid transport: conjugate an element to a different base quiver


def transport(g: GroupElement, path: Sequence[int], tau: NodeBijection,
              new_base: Quiver) -> GroupElement:
    """Conjugate g (based at Q1) to a new base Q0, given a groupoid map Q0 -> Q1.

    `path` mutates new_base to a quiver isomorphic to g.quiver and `tau` maps
    g.quiver's nodes into that arrived quiver (as returned by
    quiver.find_path(new_base, g.quiver)).  The result is h * g * h^-1 as a
    based element at new_base.
    """
    path = tuple(path)
    tau = tuple(tau)
    inv_tau = [0] * len(tau)
    for i, t in enumerate(tau):
        inv_tau[t] = i
    # h: new_base -> g.quiver, h^-1: g.quiver -> new_base
    mid_path = path + tuple(tau[k] for k in g.path)
    mid_perm = tuple(tau[g.perm[k]] for k in range(len(tau)))  # g.quiver -> arrived
    # close with the reversed transport path, relabeled through mid_perm o tau^-1
    back = tuple(reversed(path))
    sigma = tuple(mid_perm[inv_tau[k]] for k in range(len(tau)))  # new_base-ish
    full_path = mid_path + tuple(sigma[k] for k in back)
    full_perm = sigma
    return GroupElement(new_base, full_path, full_perm)


def single_mutation_elements(q: Quiver, node: int,
                             labels: Sequence[str] = None) -> List[GroupElement]:
    """All group elements {node, sigma} over the closing isomorphisms at node."""
    from .quiver import mutate

    target = mutate(q, node)
    return [
        GroupElement(q, (node,), sigma, tuple(labels) if labels else None)
        for sigma in all_isomorphisms(q, target)
    ]


# ---------------------------------------------------------------------------
# named invariants


@dataclass(frozen=True)
class InvariantRecord:
    """A named function together with the generating set fixing it."""

    name: str
    quiver: Quiver
    function: RationalFunction
    flavor: str  # "a" or "x"
    generators: Tuple[GroupElement, ...]
    denominator_vector: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not verify_invariant(self.function, self.generators, self.flavor):
            raise ValueError(f"{self.name}: not invariant under its generators")
        if self.denominator_vector is None and self.function.is_laurent():
            object.__setattr__(
                self, "denominator_vector", self.function.denominator_vector()
            )
