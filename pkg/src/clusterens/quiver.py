"""Skew-symmetrizable quivers: mutation, isomorphism, mutation-class search.

A quiver is an integer exchange matrix eps (eps[i][j] = signed number of
arrows from node i to node j), a set of frozen node indices, and a positive
integer multiplier per node making diag-weighted eps skew-symmetric.

Quivers are immutable; mutation returns a new quiver.  Canonical forms make
representative choice deterministic regardless of traversal order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Matrix = Tuple[Tuple[int, ...], ...]
NodeBijection = Tuple[int, ...]  # image list: node i maps to perm[i]

EXHAUSTIVE_SEARCH_BOUND = 12


class FrozenNodeError(ValueError):
    """Mutation requested at a frozen node."""


class NotSkewSymmetrizable(ValueError):
    pass


class ClassSizeExceeded(RuntimeError):
    """Mutation-class enumeration hit its size bound (class likely large or infinite)."""


class PathNotFound(RuntimeError):
    pass


class SearchBoundExceeded(RuntimeError):
    """Node count above the exhaustive-search bound."""


@dataclass(frozen=True)
class Quiver:
    matrix: Matrix
    frozen: frozenset = field(default_factory=frozenset)
    multipliers: Tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.matrix)
        matrix = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        mult = self.multipliers or (1,) * n
        object.__setattr__(self, "multipliers", tuple(int(d) for d in mult))
        if any(len(row) != n for row in matrix):
            raise ValueError("exchange matrix must be square")
        if len(self.multipliers) != n:
            raise ValueError("one multiplier per node required")
        if any(d <= 0 for d in self.multipliers):
            raise ValueError("multipliers must be positive")
        if any(i < 0 or i >= n for i in self.frozen):
            raise ValueError("frozen indices out of range")
        for i in range(n):
            if matrix[i][i] != 0:
                raise ValueError("no self loops: diagonal must vanish")
        d = self.multipliers
        for i in range(n):
            for j in range(i + 1, n):
                if Fraction(matrix[i][j], d[j]) != -Fraction(matrix[j][i], d[i]):
                    raise NotSkewSymmetrizable(
                        f"eps[{i}][{j}]/d[{j}] != -eps[{j}][{i}]/d[{i}]"
                    )

    # -- basic views -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def mutable(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.n) if i not in self.frozen)

    def is_mutable(self, i: int) -> bool:
        return 0 <= i < self.n and i not in self.frozen

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "frozen": sorted(self.frozen),
            "matrix": [list(row) for row in self.matrix],
            "multipliers": list(self.multipliers),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(data: dict) -> "Quiver":
        matrix = tuple(tuple(row) for row in data["matrix"])
        if "n" in data and data["n"] != len(matrix):
            raise ValueError("node count does not match matrix size")
        return Quiver(
            matrix,
            frozenset(data.get("frozen", ())),
            tuple(data.get("multipliers", ())) or (1,) * len(matrix),
        )

    @staticmethod
    def from_json(text: str) -> "Quiver":
        return Quiver.from_dict(json.loads(text))

    def permuted(self, perm: NodeBijection) -> "Quiver":
        """Relabel nodes: node i of self becomes node perm[i]."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        matrix = tuple(
            tuple(self.matrix[inv[i]][inv[j]] for j in range(n)) for i in range(n)
        )
        return Quiver(
            matrix,
            frozenset(perm[i] for i in self.frozen),
            tuple(self.multipliers[inv[i]] for i in range(n)),
        )


def mutate(q: Quiver, k: int) -> Quiver:
    """Exchange-matrix mutation at a mutable node k."""
    if not 0 <= k < q.n:
        raise IndexError(f"node {k} out of range")
    if k in q.frozen:
        raise FrozenNodeError(f"node {k} is frozen")
    eps = q.matrix
    n = q.n
    new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-eps[i][j])
            else:
                e_ik = eps[i][k]
                prod = e_ik * eps[k][j]
                if prod > 0:
                    sign = 1 if e_ik > 0 else -1
                    row.append(eps[i][j] + sign * prod)
                else:
                    row.append(eps[i][j])
        new.append(tuple(row))
    return Quiver(tuple(new), q.frozen, q.multipliers)


def apply_path(q: Quiver, path: Sequence[int]) -> Quiver:
    for k in path:
        q = mutate(q, k)
    return q


# ---------------------------------------------------------------------------
# isomorphism and canonical form
#
# An isomorphism maps frozen nodes to frozen nodes (setwise) and preserves
# multipliers; arrow-reversing maps are deliberately not considered.


def _node_class(q: Quiver, i: int) -> tuple:
    return (i in q.frozen, q.multipliers[i])


def _node_signature(q: Quiver, i: int) -> tuple:
    """Isomorphism-invariant per-node refinement used for search pruning."""
    row = sorted(q.matrix[i])
    col = sorted(q.matrix[j][i] for j in range(q.n))
    return (_node_class(q, i), tuple(row), tuple(col))


def _iso_search(q1: Quiver, q2: Quiver, find_all: bool) -> List[NodeBijection]:
    n = q1.n
    if n != q2.n:
        return []
    sig1 = [_node_signature(q1, i) for i in range(n)]
    sig2 = [_node_signature(q2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return []

    candidates = [
        [j for j in range(n) if sig2[j] == sig1[i]] for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    results: List[NodeBijection] = []
    image = [-1] * n
    used = [False] * n
    m1, m2 = q1.matrix, q2.matrix

    def extend(depth: int) -> bool:
        if depth == n:
            results.append(tuple(image))
            return not find_all
        i = order[depth]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for d in range(depth):
                i2 = order[d]
                j2 = image[i2]
                if m1[i][i2] != m2[j][j2] or m1[i2][i] != m2[j2][j]:
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if extend(depth + 1):
                    return True
                used[j] = False
                image[i] = -1
        return False

    extend(0)
    return results


def is_isomorphic(q1: Quiver, q2: Quiver) -> Optional[NodeBijection]:
    """A node bijection sigma with eps2[sigma(i)][sigma(j)] = eps1[i][j], or None."""
    found = _iso_search(q1, q2, find_all=False)
    return found[0] if found else None


def all_isomorphisms(q1: Quiver, q2: Quiver) -> List[NodeBijection]:
    return sorted(_iso_search(q1, q2, find_all=True))


def automorphisms(q: Quiver) -> List[NodeBijection]:
    """Full automorphism group by exhaustive search (node count <= 12)."""
    if q.n > EXHAUSTIVE_SEARCH_BOUND:
        raise SearchBoundExceeded(
            f"{q.n} nodes exceeds the exhaustive-search bound {EXHAUSTIVE_SEARCH_BOUND}"
        )
    return all_isomorphisms(q, q)


def canonical_form(q: Quiver) -> tuple:
    """Minimum encoding over node permutations respecting (frozen, multiplier).

    Encoding: per position k, the tuple of matrix entries linking the k-th
    chosen node to the previously chosen ones (row then column).  Partial
    assignments determine encoding prefixes, so branch-and-bound pruning on
    the prefix is sound; the minimum over all class-respecting permutations
    is isomorphism invariant.
    """
    n = q.n
    eps = q.matrix
    class_keys = tuple(sorted(_node_class(q, i) for i in range(n)))

    by_class: Dict[tuple, List[int]] = {}
    for i in range(n):
        by_class.setdefault(_node_class(q, i), []).append(i)

    best: List[Optional[List[tuple]]] = [None]
    chosen: List[int] = []
    exts: List[tuple] = []
    used = [False] * n

    def rec():
        k = len(chosen)
        if k == n:
            if best[0] is None or exts < best[0]:
                best[0] = list(exts)
            return
        for cand in by_class[class_keys[k]]:
            if used[cand]:
                continue
            ext = tuple(eps[cand][j] for j in chosen) + tuple(
                eps[j][cand] for j in chosen
            )
            exts.append(ext)
            if best[0] is None or exts <= best[0][: k + 1]:
                used[cand] = True
                chosen.append(cand)
                rec()
                chosen.pop()
                used[cand] = False
            exts.pop()

    rec()
    return (class_keys, tuple(best[0]))


def canonical_key(q: Quiver) -> tuple:
    return canonical_form(q)


def mutation_class(q: Quiver, max_size: int = 64):
    """One representative per isomorphism class reachable by mutation.

    Breadth-first search deduplicated by canonical form; each entry is the
    first-seen representative plus a witness mutation path from q.  Raises
    ClassSizeExceeded when more than max_size classes appear.
    """
    start_key = canonical_form(q)
    seen = {start_key}
    reps = [(q, ())]
    frontier = [(q, ())]
    while frontier:
        next_frontier = []
        for cur, path in frontier:
            for k in cur.mutable:
                nxt = mutate(cur, k)
                key = canonical_form(nxt)
                if key in seen:
                    continue
                seen.add(key)
                entry = (nxt, path + (k,))
                reps.append(entry)
                next_frontier.append(entry)
                if len(reps) > max_size:
                    raise ClassSizeExceeded(
                        f"more than {max_size} isomorphism classes"
                    )
        frontier = next_frontier
    return reps


def find_path(q_from: Quiver, q_to: Quiver, max_size: int = 64):
    """A mutation path P with mutate-along-P(q_from) isomorphic to q_to.

    Returns (path, tau) where tau maps q_to's nodes into the arrived quiver
    (the closing isomorphism).  Raises PathNotFound if the bounded search
    exhausts the mutation class without reaching q_to.
    """
    if q_from.n != q_to.n:
        raise PathNotFound("node counts differ")
    target_key = canonical_form(q_to)
    seen = {canonical_form(q_from)}
    frontier = [(q_from, ())]
    sigma = is_isomorphic(q_to, q_from)
    if sigma is not None:
        return (), sigma
    count = 1
    while frontier:
        next_frontier = []
        for cur, path in frontier:
            for k in cur.mutable:
                nxt = mutate(cur, k)
                key = canonical_form(nxt)
                if key in seen:
                    continue
                seen.add(key)
                count += 1
                if count > max_size:
                    raise ClassSizeExceeded(
                        f"more than {max_size} isomorphism classes searched"
                    )
                if key == target_key:
                    tau = is_isomorphic(q_to, nxt)
                    if tau is not None:
                        return path + (k,), tau
                next_frontier.append((nxt, path + (k,)))
        frontier = next_frontier
    raise PathNotFound("target quiver not in the bounded mutation class")
