"""Exact multivariate polynomial and rational-function arithmetic over ZZ.

Everything symbolic in this package bottoms out here.  Design points:

- a value's ambient variables are a fixed tuple of name strings ("a1", "x2",
  ...); operations demand identical tuples and raise VariableMismatchError
  otherwise.
- monomial order is graded lexicographic with variables ordered by their
  index in the ambient tuple (compare total degree, then the exponent tuple).
- coefficients are Python ints; the fraction field over ZZ-polynomials is
  enough for every identity we test and keeps equality decidable.
- a RationalFunction is always stored reduced: gcd(num, den) = 1 and the
  denominator's leading coefficient is positive.

All values are immutable after construction; every operation is a pure
function, so values can be shared freely across threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Optional, Tuple

# One int per ambient variable.  Non-negative inside Polynomial; kernel /
# Laurent-monomial vectors reuse the alias with signed entries.
ExponentVector = Tuple[int, ...]

Names = Tuple[str, ...]


class VariableMismatchError(ValueError):
    """Operands live over different ambient variable tuples."""


class NoDenominatorVector(ValueError):
    """Reduced denominator is not a single monomial."""


def grlex_key(exp: ExponentVector):
    """Sort key realizing graded lexicographic order."""
    return (sum(exp), exp)


def _check_names(a: Names, b: Names) -> None:
    if a != b:
        raise VariableMismatchError(f"variable sets differ: {a} vs {b}")


class Polynomial:
    """Sparse multivariate polynomial: dict from exponent tuple to nonzero int."""

    __slots__ = ("names", "terms", "_hash")

    def __init__(self, names: Names, terms: Dict[ExponentVector, int]):
        # Assumes terms is already clean (no zero coefficients); use make()
        # when that is not guaranteed.
        self.names = names
        self.terms = terms
        self._hash = None

    @staticmethod
    def make(names: Names, terms: Dict[ExponentVector, int]) -> "Polynomial":
        return Polynomial(names, {e: c for e, c in terms.items() if c})

    @staticmethod
    def zero(names: Names) -> "Polynomial":
        return Polynomial(names, {})

    @staticmethod
    def const(names: Names, c: int) -> "Polynomial":
        if c == 0:
            return Polynomial(names, {})
        return Polynomial(names, {(0,) * len(names): int(c)})

    @staticmethod
    def variable(names: Names, index: int) -> "Polynomial":
        exp = [0] * len(names)
        exp[index] = 1
        return Polynomial(names, {tuple(exp): 1})

    @staticmethod
    def monomial(names: Names, exp: ExponentVector, coeff: int = 1) -> "Polynomial":
        if coeff == 0:
            return Polynomial(names, {})
        return Polynomial(names, {tuple(exp): int(coeff)})

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.names): 1}

    def is_constant(self) -> bool:
        return len(self.terms) <= 1 and all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    # -- structure -------------------------------------------------------

    def leading(self) -> Tuple[ExponentVector, int]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return 0
        return max(e[index] for e in self.terms)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    def min_exponents(self) -> ExponentVector:
        """Pointwise minimum exponent per variable (the monomial content)."""
        if not self.terms:
            return (0,) * len(self.names)
        it = iter(self.terms)
        lo = list(next(it))
        for e in it:
            for i, v in enumerate(e):
                if v < lo[i]:
                    lo[i] = v
        return tuple(lo)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        _check_names(self.names, other.names)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Polynomial(self.names, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        _check_names(self.names, other.names)
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial(self.names, {})
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            (e0, c0), = a.items()
            if not any(e0):
                if c0 == 1:
                    return Polynomial(self.names, dict(b))
                return Polynomial(self.names, {e: c0 * c for e, c in b.items()})
            return Polynomial(
                self.names,
                {tuple(map(sum, zip(e0, e))): c0 * c for e, c in b.items()},
            )
        out: Dict[ExponentVector, int] = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(sum, zip(ea, eb)))
                s = get(e, 0) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Polynomial(self.names, out)

    def mul_int(self, c: int) -> "Polynomial":
        if c == 0:
            return Polynomial(self.names, {})
        if c == 1:
            return self
        return Polynomial(self.names, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.const(self.names, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, delta: ExponentVector) -> "Polynomial":
        """Multiply by the (possibly negative-exponent) monomial x^delta.

        Caller guarantees the result has non-negative exponents.
        """
        if not any(delta):
            return self
        return Polynomial(
            self.names,
            {tuple(map(sum, zip(e, delta))): c for e, c in self.terms.items()},
        )

    def divide_int(self, c: int) -> "Polynomial":
        if c == 1:
            return self
        return Polynomial(self.names, {e: v // c for e, v in self.terms.items()})

    def divide_exact(self, d: "Polynomial") -> Optional["Polynomial"]:
        """Quotient self/d when the division is exact over ZZ, else None."""
        _check_names(self.names, d.names)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        de, dc = d.leading()
        dterms = d.terms
        q: Dict[ExponentVector, int] = {}
        r = dict(self.terms)
        while r:
            re = max(r, key=grlex_key)
            rc = r[re]
            diff = tuple(a - b for a, b in zip(re, de))
            if any(v < 0 for v in diff) or rc % dc:
                return None
            qc = rc // dc
            q[diff] = qc
            for e, c in dterms.items():
                key = tuple(map(sum, zip(diff, e)))
                s = r.get(key, 0) - qc * c
                if s:
                    r[key] = s
                elif key in r:
                    del r[key]
        return Polynomial(self.names, q)

    # -- evaluation ------------------------------------------------------

    def evaluate(self, values: Dict[str, object]):
        """Evaluate at a point; value type (Fraction, float, ...) is the caller's."""
        total = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * values[self.names[i]] ** k
            total = term if total is None else total + term
        return 0 if total is None else total

    # -- equality / hashing ----------------------------------------------

    def _key(self):
        return tuple(sorted(self.terms.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.names, self._key()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({render_poly(self)!r})"


def _normalize_sign(p: Polynomial) -> Polynomial:
    if p.is_zero():
        return p
    _, c = p.leading()
    return -p if c < 0 else p


def _monomial_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    e = tuple(min(a, b) for a, b in zip(p.min_exponents(), q.min_exponents()))
    c = math.gcd(p.content(), q.content())
    return Polynomial.monomial(p.names, e, c)


def _dense(p: Polynomial, v: int):
    """Coefficients of p as polynomials in the other variables, by degree in v."""
    coeffs: Dict[int, Dict[ExponentVector, int]] = {}
    for e, c in p.terms.items():
        k = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        coeffs.setdefault(k, {})[rest] = c
    deg = max(coeffs) if coeffs else 0
    return [Polynomial(p.names, coeffs.get(i, {})) for i in range(deg + 1)]


def _from_dense(coeffs, v: int, names: Names) -> Polynomial:
    out: Dict[ExponentVector, int] = {}
    for k, poly in enumerate(coeffs):
        for e, c in poly.terms.items():
            out[e[:v] + (k,) + e[v + 1:]] = c
    return Polynomial(names, out)


def _dense_trim(coeffs):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _prem(a, b, names):
    """Pseudo-remainder of dense coefficient lists a mod b (deg a >= deg b)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(r) - 1 - db + 1
    while _dense_trim(r) and len(r) - 1 >= db:
        lr = r[-1]
        dr = len(r) - 1
        new = [lb * ri for ri in r]
        for i, bi in enumerate(b):
            j = dr - db + i
            new[j] = new[j] - lr * bi
        r = new
        e -= 1
    for _ in range(e):
        r = [lb * ri for ri in r]
    return _dense_trim(r)


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Multivariate gcd over ZZ with positive leading coefficient.

    Monomial parts split off first; the structured core is attempted with the
    evaluation-and-reconstruct heuristic (verified by exact division, so the
    answer is unconditionally correct) and falls back to the recursive
    primitive-part/content subresultant remainder sequence.
    """
    _check_names(p.names, q.names)
    if p.is_zero():
        return _normalize_sign(q)
    if q.is_zero():
        return _normalize_sign(p)
    if p.is_monomial() or q.is_monomial():
        return _monomial_gcd(p, q)

    names = p.names
    mono = _monomial_gcd(p, q)  # common monomial * integer content
    p0 = _normalize_sign(p.shift(tuple(-v for v in p.min_exponents())).divide_int(p.content()))
    q0 = _normalize_sign(q.shift(tuple(-v for v in q.min_exponents())).divide_int(q.content()))

    shared = [
        v for v in range(len(names))
        if p0.degree_in(v) > 0 and q0.degree_in(v) > 0
    ]
    if not shared:
        return mono

    core = _heu_gcd(p0, q0) if _heu_feasible(p0, q0) else None
    if core is None:
        v = min(shared, key=lambda i: min(p0.degree_in(i), q0.degree_in(i)))
        core = _prs_gcd(p0, q0, v)
    return _normalize_sign(mono * core)


def _heu_feasible(p: Polynomial, q: Polynomial, bound: int = 32768) -> bool:
    """Gate the heuristic: nested integer evaluation costs about the product
    of per-variable degree supports, so skip it when that blows up."""
    est = 1
    for v in range(len(p.names)):
        d = min(p.degree_in(v), q.degree_in(v))
        est *= d + 1
        if est > bound:
            return False
    return True


# -- heuristic gcd (evaluate at a big integer, reconstruct, verify) ----------


def _height(p: Polynomial) -> int:
    return max(abs(c) for c in p.terms.values())


def _eval_var(p: Polynomial, v: int, xi: int) -> Polynomial:
    """Substitute the integer xi for variable v (folded into coefficients)."""
    out: Dict[ExponentVector, int] = {}
    powers: Dict[int, int] = {0: 1}
    for e, c in p.terms.items():
        k = e[v]
        if k not in powers:
            powers[k] = xi ** k
        rest = e[:v] + (0,) + e[v + 1:]
        s = out.get(rest, 0) + c * powers[k]
        if s:
            out[rest] = s
        elif rest in out:
            del out[rest]
    return Polynomial(p.names, out)


def _smod(a: int, m: int) -> int:
    r = a % m
    return r - m if r + r >= m else r


def _reconstruct(h: Polynomial, v: int, xi: int) -> Polynomial:
    """Undo _eval_var: read off base-xi digits as the coefficients of v^k."""
    names = h.names
    out: Dict[ExponentVector, int] = {}
    k = 0
    cur = dict(h.terms)
    while cur:
        nxt: Dict[ExponentVector, int] = {}
        for e, c in cur.items():
            d = _smod(c, xi)
            if d:
                out[e[:v] + (k,) + e[v + 1:]] = d
            rem = (c - d) // xi
            if rem:
                nxt[e] = rem
        cur = nxt
        k += 1
        if k > 10_000:
            raise ArithmeticError("runaway reconstruction")
    return Polynomial(names, out)


def _heu_gcd(p: Polynomial, q: Polynomial, depth: int = 0) -> Optional[Polynomial]:
    """Verified heuristic gcd; None when it gives up.

    Integer content is carried through the recursion untouched: a factor
    like (x+1) turns into pure integer content of the evaluated image, so
    stripping content mid-recursion would silently drop real factors.  Every
    candidate is verified by exact division into both inputs before being
    returned, and the evaluation points satisfy the classical 2*min-height
    bound, so an accepted candidate is the gcd.
    """
    names = p.names
    if p.is_constant() and q.is_constant():
        return Polynomial.const(names, math.gcd(p.content(), q.content()))
    live = [
        v for v in range(len(names))
        if p.degree_in(v) > 0 or q.degree_in(v) > 0
    ]
    v = max(live, key=lambda i: max(p.degree_in(i), q.degree_in(i)))
    xi = 2 * min(_height(p), _height(q)) + 29
    for _ in range(6):
        pe = _eval_var(p, v, xi)
        qe = _eval_var(q, v, xi)
        if not (pe.is_zero() or qe.is_zero()):
            h = _heu_gcd(pe, qe, depth + 1)
            if h is not None and not h.is_zero():
                cand = _normalize_sign(_reconstruct(h, v, xi))
                if (
                    p.divide_exact(cand) is not None
                    and q.divide_exact(cand) is not None
                ):
                    return cand
        xi = xi * 73794 // 27011 + 31  # grow the point, coprime-ish jumps
    return None


def _content_dense(coeffs, names) -> Polynomial:
    g = Polynomial.zero(names)
    for c in coeffs:
        g = gcd(g, c)
        if g.is_one():
            break
    return g


def _prs_gcd(p: Polynomial, q: Polynomial, v: int) -> Polynomial:
    """Subresultant PRS gcd of content-free p, q in main variable v."""
    names = p.names
    a = _dense(p, v)
    b = _dense(q, v)
    if len(a) < len(b):
        a, b = b, a

    cont_a = _content_dense(a, names)
    cont_b = _content_dense(b, names)
    cont = gcd(cont_a, cont_b)
    a = [c.divide_exact(cont_a) for c in a]
    b = [c.divide_exact(cont_b) for c in b]

    one = Polynomial.const(names, 1)
    g, h = one, one
    while True:
        delta = (len(a) - 1) - (len(b) - 1)
        r = _prem(a, b, names)
        if not r:
            break
        if len(b) - 1 == 0:
            b = [one]
            break
        divisor = g * (h ** delta)
        a, b = b, [ri.divide_exact(divisor) for ri in r]
        g = a[-1]
        if delta >= 1:
            h = (g ** delta).divide_exact(h ** (delta - 1))
        # delta == 0 leaves h unchanged

    prim = _from_dense(b, v, names)
    cont_prim = _content_dense(b, names)
    prim = prim.divide_exact(_from_dense([cont_prim], v, names))
    return cont * prim


def render_poly(p: Polynomial) -> str:
    """Canonical text: terms in descending graded-lex order, coef*var^exp."""
    if p.is_zero():
        return "0"
    parts = []
    for e in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[e]
        body = "*".join(
            name if k == 1 else f"{name}^{k}"
            for name, k in zip(p.names, e)
            if k
        )
        mag = abs(c)
        if not body:
            txt = str(mag)
        elif mag == 1:
            txt = body
        else:
            txt = f"{mag}*{body}"
        parts.append((c < 0, txt))
    first_neg, first = parts[0]
    out = ("-" if first_neg else "") + first
    for neg, txt in parts[1:]:
        out += (" - " if neg else " + ") + txt
    return out


class RationalFunction:
    """Reduced fraction of integer-coefficient polynomials.

    Invariants: den != 0, gcd(num, den) = 1, den's leading coefficient
    (graded lex) positive.  Equality of values is equality of the canonical
    forms; cross-multiplication is available as a defensive check.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Polynomial):
        _check_names(num.names, den.names)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        return RationalFunction(p, Polynomial.const(p.names, 1))

    @staticmethod
    def const(names: Names, c: int) -> "RationalFunction":
        return RationalFunction.from_poly(Polynomial.const(names, c))

    @staticmethod
    def variable(names: Names, index: int) -> "RationalFunction":
        return RationalFunction.from_poly(Polynomial.variable(names, index))

    @property
    def names(self) -> Names:
        return self.num.names

    def one(self) -> "RationalFunction":
        return RationalFunction.const(self.names, 1)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_laurent(self) -> bool:
        """True iff the reduced denominator is a single monomial."""
        return self.den.is_monomial()

    def is_positive_laurent(self) -> bool:
        """Laurent with positive integer coefficients (monic monomial denominator)."""
        if not self.den.is_monomial():
            return False
        _, c = self.den.leading()
        if c != 1:
            return False
        return all(v > 0 for v in self.num.terms.values())

    def denominator_vector(self) -> ExponentVector:
        """Exponent tuple of the reduced (monomial) denominator."""
        if not self.den.is_monomial():
            raise NoDenominatorVector(render(self))
        (e, _), = self.den.terms.items()
        return e

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )

    def __neg__(self) -> "RationalFunction":
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        out._hash = None
        return out

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k == 0:
            return RationalFunction.const(self.names, 1)
        if k < 0:
            return self.inverse() ** (-k)
        num = self.num ** k
        den = self.den ** k
        out = RationalFunction.__new__(RationalFunction)
        out.num, out.den = num, den  # powers of a reduced fraction stay reduced
        out._hash = None
        return out

    # -- substitution / evaluation ---------------------------------------

    def substitute(self, images: Dict[str, "RationalFunction"]) -> "RationalFunction":
        """Simultaneously replace every variable by its image.

        Every variable occurring in self must have an image; images live over
        one common ambient tuple which becomes the result's.
        """
        occurring = set()
        for terms in (self.num.terms, self.den.terms):
            for e in terms:
                occurring.update(n for n, k in zip(self.names, e) if k)
        missing = occurring - set(images)
        if missing:
            raise KeyError(f"no image for variables {sorted(missing)}")
        if not images:
            return self
        target = next(iter(images.values())).names
        num = _poly_substitute(self.num, images, target)
        den = _poly_substitute(self.den, images, target)
        if den.is_zero():
            raise ZeroDivisionError("substitution produced a zero denominator")
        return num / den

    def evaluate_exact(self, point: Dict[str, Fraction]) -> Fraction:
        num = self.num.evaluate({k: Fraction(v) for k, v in point.items()})
        den = self.den.evaluate({k: Fraction(v) for k, v in point.items()})
        if den == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return Fraction(num) / Fraction(den)

    def evaluate_float(self, point: Dict[str, float]) -> float:
        num = self.num.evaluate(point)
        den = self.den.evaluate(point)
        if den == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return num / den

    # -- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (
            self.names == other.names
            and self.num.terms == other.num.terms
            and self.den.terms == other.den.terms
        )

    def equals_cross(self, other: "RationalFunction") -> bool:
        """Defensive equality by cross-multiplication (independent of reduction)."""
        _check_names(self.names, other.names)
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.names, self.num._key(), self.den._key()))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalFunction({render(self)!r})"


def _reduce(num: Polynomial, den: Polynomial) -> Tuple[Polynomial, Polynomial]:
    names = num.names
    if num.is_zero():
        return num, Polynomial.const(names, 1)

    # common monomial factor
    lo = tuple(
        -min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents())
    )
    if any(lo):
        num = num.shift(lo)
        den = den.shift(lo)

    # integer content
    c = math.gcd(num.content(), den.content())
    if c > 1:
        num = num.divide_int(c)
        den = den.divide_int(c)

    if len(den.terms) > 1:
        # cluster mutation denominators usually divide exactly; try that first
        q = num.divide_exact(den)
        if q is not None:
            num, den = q, Polynomial.const(names, 1)
        else:
            g = gcd(num, den)
            if not g.is_one():
                num = num.divide_exact(g)
                den = den.divide_exact(g)

    _, lc = den.leading()
    if lc < 0:
        num, den = -num, -den
    return num, den


def _poly_substitute(p: Polynomial, images: Dict[str, RationalFunction], target: Names):
    one = RationalFunction.const(target, 1)
    # cache powers per variable appearing with positive exponent
    powers: Dict[Tuple[int, int], RationalFunction] = {}

    def var_pow(i: int, k: int) -> RationalFunction:
        key = (i, k)
        if key not in powers:
            powers[key] = images[p.names[i]] ** k
        return powers[key]

    total = RationalFunction.const(target, 0)
    for e, c in p.terms.items():
        term = RationalFunction.const(target, c)
        for i, k in enumerate(e):
            if k:
                term = term * var_pow(i, k)
        total = total + term
    return total


def render(f: RationalFunction) -> str:
    """Canonical text rendering: `num` or `(num)/(den)`."""
    if f.den.is_one():
        return render_poly(f.num)
    return f"({render_poly(f.num)})/({render_poly(f.den)})"


# ---------------------------------------------------------------------------
# parsing: integer literals, variable tokens, + - * / ^, parentheses


class ParseError(ValueError):
    pass


def parse(text: str, names: Names) -> RationalFunction:
    """Parse the CLI expression grammar into a RationalFunction over names."""
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else ("end", "")

    def take(kind=None):
        tok = peek()
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'}")
        pos[0] += 1
        return tok

    index = {n: i for i, n in enumerate(names)}

    def atom() -> RationalFunction:
        kind, val = take()
        if kind == "int":
            return RationalFunction.const(names, int(val))
        if kind == "name":
            if val not in index:
                raise ParseError(f"unknown variable {val!r} (have {', '.join(names)})")
            return RationalFunction.variable(names, index[val])
        if kind == "(":
            inner = expr()
            take(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")

    def power() -> RationalFunction:
        base = atom()
        if peek()[0] == "^":
            take()
            sign = 1
            if peek()[0] == "op" and peek()[1] == "-":
                take()
                sign = -1
            k = int(take("int")[1])
            return base ** (sign * k)
        return base

    def unary() -> RationalFunction:
        neg = False
        while peek()[0] == "op" and peek()[1] in "+-":
            if take()[1] == "-":
                neg = not neg
        f = power()
        return -f if neg else f

    def term() -> RationalFunction:
        f = unary()
        while peek()[0] == "mul":
            op = take()[1]
            g = unary()
            f = f * g if op == "*" else f / g
        return f

    def expr() -> RationalFunction:
        f = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            g = term()
            f = f + g if op == "+" else f - g
        return f

    result = expr()
    if peek()[0] != "end":
        raise ParseError(f"trailing input at {peek()[1]!r}")
    return result


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
        elif ch in "+-":
            tokens.append(("op", ch))
            i += 1
        elif ch in "*/":
            tokens.append(("mul", ch))
            i += 1
        elif ch == "^":
            tokens.append(("^", ch))
            i += 1
        elif ch == "(":
            tokens.append(("(", ch))
            i += 1
        elif ch == ")":
            tokens.append((")", ch))
            i += 1
        else:
            raise ParseError(f"illegal character {ch!r}")
    return tokens
