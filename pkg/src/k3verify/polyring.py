"""Sparse multivariate polynomials with coefficients in Q(zeta_24).

A monomial is a tuple of ``(variable index, exponent)`` pairs sorted by index,
with no zero exponents.  Terms are ordered graded-lexicographically with the
global variable order ``VARIABLES`` (``x > y > z > w > s0 > s1 > ...``).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .exactfield import ONE, ZERO, CycloElement, PrimeFieldElement, reduce_mod_p_int

VARIABLES: tuple[str, ...] = (
    "x", "y", "z", "w",
    "s0", "s1", "t0", "t1", "u0", "u1", "v0", "v1",
    "s", "t", "u", "v",
    "a", "b", "c", "d", "lam",
)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}

Monomial = tuple[tuple[int, int], ...]
Coefficient = Union[int, Fraction, CycloElement]

# homogeneous coordinate names for each P^1 factor, in factor order
FACTORS: tuple[tuple[str, str], ...] = (("s0", "s1"), ("t0", "t1"), ("u0", "u1"), ("v0", "v1"))
AFFINE: tuple[str, ...] = ("s", "t", "u", "v")


class PolyError(ValueError):
    pass


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise PolyError(f"unknown variable {name!r}") from None


def mono_from_dict(exps: Mapping[str, int]) -> Monomial:
    return tuple(sorted((var_index(v), e) for v, e in exps.items() if e))


def mono_to_dict(m: Monomial) -> dict[str, int]:
    return {VARIABLES[i]: e for i, e in m}


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if a divides b."""
    db = dict(b)
    return all(db.get(i, 0) >= e for i, e in a)


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    d = dict(b)
    for i, e in a:
        d[i] -= e
    return tuple(sorted((i, e) for i, e in d.items() if e))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


@lru_cache(maxsize=1 << 15)
def mono_key(m: Monomial) -> tuple[int, ...]:
    dense = [0] * len(VARIABLES)
    for i, e in m:
        dense[i] = e
    return (mono_degree(m), *dense)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(VARIABLES[i] if e == 1 else f"{VARIABLES[i]}^{e}" for i, e in m)


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps Monomial -> CycloElement."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coefficient] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = CycloElement.coerce(c)
                if not c.is_zero():
                    clean[m] = c
        self.terms: dict[Monomial, CycloElement] = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict[Monomial, CycloElement]) -> MultiPoly:
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        return cls._trusted({((var_index(name), 1),): ONE})

    @classmethod
    def const(cls, c: Coefficient) -> MultiPoly:
        return cls({(): c})

    @classmethod
    def coerce(cls, value) -> MultiPoly:
        if isinstance(value, MultiPoly):
            return value
        return cls.const(value)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> CycloElement:
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return self.terms.get((), ZERO)

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = var_index(name)
        return max((dict(m).get(i, 0) for m in self.terms), default=-1)

    def variables(self) -> list[str]:
        used = {i for m in self.terms for i, _ in m}
        return [VARIABLES[i] for i in sorted(used)]

    def sorted_terms(self) -> list[tuple[Monomial, CycloElement]]:
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, CycloElement]:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def coefficient(self, exps: Mapping[str, int]) -> CycloElement:
        return self.terms.get(mono_from_dict(exps), ZERO)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> MultiPoly:
        other = MultiPoly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[m]
                else:
                    out[m] = v
        return MultiPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._trusted({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-MultiPoly.coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return MultiPoly.coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            c = CycloElement.coerce(other)
            if c.is_zero():
                return ZERO_POLY
            return MultiPoly._trusted({m: v * c for m, v in self.terms.items()})
        out: dict[Monomial, CycloElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._trusted({m: c for m, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise PolyError("negative power of a polynomial")
        result = ONE_POLY
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            q, r = divide_single(self, other)
            if not r.is_zero():
                raise PolyError("inexact polynomial division")
            return q
        c = CycloElement.coerce(other).inverse()
        return self * c

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, CycloElement)):
            return self == MultiPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            if not m:
                parts.append(cs)
            elif c == 1:
                parts.append(mono_str(m))
            elif c == -1:
                parts.append("-" + mono_str(m))
            else:
                parts.append(f"{cs}*{mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- calculus and substitution ----------------------------------------

    def diff(self, name: str) -> MultiPoly:
        i = var_index(name)
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(i, 0)
            if e == 0:
                continue
            if e == 1:
                del d[i]
            else:
                d[i] = e - 1
            nm = tuple(sorted(d.items()))
            out[nm] = out.get(nm, ZERO) + c * e
        return MultiPoly(out)

    def subs(self, assignment: Mapping[str, object]) -> MultiPoly:
        """Simultaneous substitution of polynomials (or scalars) for variables."""
        images = {var_index(k): MultiPoly.coerce(v) for k, v in assignment.items()}
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return powers[key]

        total = ZERO_POLY
        for m, c in self.terms.items():
            kept = []
            term = MultiPoly._trusted({(): c})
            for i, e in m:
                if i in images:
                    term = term * power(i, e)
                else:
                    kept.append((i, e))
            if kept:
                term = term * MultiPoly._trusted({tuple(kept): ONE})
            total = total + term
        return total

    def evaluate(self, point: Mapping[str, object]):
        return evaluate(self, point)

    def reduce_mod(self, p: int) -> dict[Monomial, int]:
        out = {}
        for m, c in self.terms.items():
            v = reduce_mod_p_int(c, p)
            if v:
                out[m] = v
        return out


ZERO_POLY = MultiPoly._trusted({})
ONE_POLY = MultiPoly._trusted({(): ONE})


def variables(names: str) -> tuple[MultiPoly, ...]:
    return tuple(MultiPoly.var(n) for n in names.split())


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise PolyError(f"unknown operation {op!r}")


def elementary_symmetric(i: int, names: Sequence[str] = AFFINE) -> MultiPoly:
    if not 1 <= i <= len(names):
        raise PolyError(f"elementary symmetric index {i} out of range")
    total = ZERO_POLY
    for combo in itertools.combinations(names, i):
        total = total + MultiPoly._trusted({mono_from_dict({v: 1 for v in combo}): ONE})
    return total


def partial_derivative(p: MultiPoly, name: str) -> MultiPoly:
    return p.diff(name)


def multihomogenize(p: MultiPoly, affine: Sequence[str] = AFFINE,
                    factors: Sequence[tuple[str, str]] = FACTORS) -> MultiPoly:
    """Degree-(1,..,1) form: s -> s0/s1 etc., cleared by s1*t1*u1*v1."""
    idx = [var_index(a) for a in affine]
    out = {}
    for m, c in p.terms.items():
        d = dict(m)
        new = {}
        for i, (h0, h1) in zip(idx, factors):
            e = d.pop(i, 0)
            if e > 1:
                raise PolyError(f"degree {e} > 1 in {VARIABLES[i]}")
            new[h0 if e else h1] = 1
        for i, e in d.items():
            new[VARIABLES[i]] = new.get(VARIABLES[i], 0) + e
        out[mono_from_dict(new)] = c
    return MultiPoly(out)


def dehomogenize(p: MultiPoly, affine: Sequence[str] = AFFINE,
                 factors: Sequence[tuple[str, str]] = FACTORS) -> MultiPoly:
    """Set s1 = t1 = u1 = v1 = 1 and rename s0 -> s, etc."""
    assignment = {}
    for a, (h0, h1) in zip(affine, factors):
        assignment[h0] = MultiPoly.var(a)
        assignment[h1] = ONE_POLY
    return p.subs(assignment)


def substitute_linear(p: MultiPoly, assignment: Mapping[str, object]) -> MultiPoly:
    for v, image in assignment.items():
        image = MultiPoly.coerce(image)
        if image.degree() > 1:
            raise PolyError(f"image of {v} is not linear")
    return p.subs(assignment)


def divide_single(f: MultiPoly, g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Division by one polynomial in graded-lex order: f = q*g + r."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = g.leading_term()
    lc_inv = lc.inverse()
    g_rest = [(m, c) for m, c in g.terms.items() if m != lm]
    work = dict(f.terms)
    quotient: dict[Monomial, CycloElement] = {}
    remainder: dict[Monomial, CycloElement] = {}
    while work:
        m = max(work, key=mono_key)
        c = work.pop(m)
        if mono_divides(lm, m):
            qm = mono_div(m, lm)
            qc = c * lc_inv
            quotient[qm] = quotient.get(qm, ZERO) + qc
            for gm, gc in g_rest:
                tm = mono_mul(qm, gm)
                v = work.get(tm, ZERO) - qc * gc
                if v.is_zero():
                    work.pop(tm, None)
                else:
                    work[tm] = v
        else:
            remainder[m] = c
    return MultiPoly(quotient), MultiPoly(remainder)


def intersection_number(classes: Sequence[Sequence[int]]) -> int:
    """Intersection of divisor classes on (P^1)^4 given by multidegrees."""
    if len(classes) != 4 or any(len(c) != 4 for c in classes):
        raise PolyError("need exactly four multidegrees on (P^1)^4")
    if any(e < 0 for c in classes for e in c):
        raise PolyError("multidegrees must be non-negative")
    hs = [MultiPoly.var(n) for n in AFFINE]
    prod = ONE_POLY
    for cls in classes:
        form = ZERO_POLY
        for e, h in zip(cls, hs):
            if e:
                form = form + h * e
        prod = prod * form
    c = prod.coefficient({"s": 1, "t": 1, "u": 1, "v": 1})
    return int(c.to_fraction())


def evaluate(p: MultiPoly, point: Mapping[str, object]):
    """Exact evaluation; values are all CycloElement-like or all PrimeFieldElement."""
    values = {var_index(k): v for k, v in point.items()}
    kinds = {isinstance(v, PrimeFieldElement) for v in values.values()}
    if len(kinds) > 1:
        raise PolyError("mixed fields in evaluation point")
    missing = {i for m in p.terms for i, _ in m} - values.keys()
    if missing:
        raise PolyError(f"unassigned variables {[VARIABLES[i] for i in sorted(missing)]}")
    if kinds == {True}:
        sample = next(iter(values.values()))
        pmod = sample.p
        total = PrimeFieldElement(0, pmod, sample.root)
        for m, c in p.terms.items():
            term = PrimeFieldElement(reduce_mod_p_int(c, pmod), pmod, sample.root)
            for i, e in m:
                term = term * values[i] ** e
            total = total + term
        return total
    vals = {i: CycloElement.coerce(v) for i, v in values.items()}
    total = ZERO
    for m, c in p.terms.items():
        term = c
        for i, e in m:
            term = term * vals[i] ** e
        total = total + term
    return total


def evaluate_mod(reduced: Mapping[Monomial, int], point: Mapping[int, int], p: int) -> int:
    """Fast evaluation of a reduce_mod() dictionary at an integer point (by var index)."""
    total = 0
    for m, c in reduced.items():
        term = c
        for i, e in m:
            term = term * pow(point[i], e, p) % p
        total += term
    return total % p


def linear_form(coeffs: Iterable[Coefficient], names: Sequence[str]) -> MultiPoly:
    total = ZERO_POLY
    for c, n in zip(coeffs, names):
        total = total + MultiPoly.var(n) * c
    return total
