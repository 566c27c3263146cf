"""Exact arithmetic in the cyclotomic field Q(zeta_24) and its reductions to F_p.

Elements are stored as ``c0 + c1*z + ... + c7*z^7`` with ``z`` a fixed primitive
24th root of unity, reduced modulo ``Phi_24(x) = x^8 - x^4 + 1``.  Internally the
eight rational coefficients share one positive denominator, which keeps the hot
multiplication path in plain integer arithmetic.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

N = 24
DEGREE = 8
# Phi_24 = x^8 - x^4 + 1, low degree first
PHI = (1, 0, 0, 0, -1, 0, 0, 0, 1)

Rational = Fraction
Scalar = Union[int, Fraction, "CycloElement"]


class FieldError(ArithmeticError):
    pass


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


def _reduce_product(prod: list[int]) -> list[int]:
    # x^8 = x^4 - 1
    for k in range(len(prod) - 1, DEGREE - 1, -1):
        c = prod[k]
        if c:
            prod[k - 4] += c
            prod[k - 8] -= c
    return prod[:DEGREE]


class CycloElement:
    """Immutable element of Q(zeta_24) in the power basis 1, z, ..., z^7."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coefficients: Iterable[int | Fraction] = (0,) * DEGREE):
        coeffs = [Fraction(c) for c in coefficients]
        if len(coeffs) > DEGREE:
            # allow longer input; reduce modulo Phi_24
            den = math.lcm(*(c.denominator for c in coeffs))
            ints = [int(c * den) for c in coeffs]
            ints = _reduce_product(ints + [0] * max(0, 2 * DEGREE - 1 - len(ints)))
        else:
            coeffs += [Fraction(0)] * (DEGREE - len(coeffs))
            den = math.lcm(*(c.denominator for c in coeffs))
            ints = [int(c * den) for c in coeffs]
        self._num, self._den = _normalize(ints, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: tuple[int, ...], den: int) -> CycloElement:
        obj = object.__new__(cls)
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, q: int | Fraction) -> CycloElement:
        q = Fraction(q)
        return cls._raw((q.numerator,) + (0,) * (DEGREE - 1), q.denominator)

    @classmethod
    def zeta_power(cls, k: int) -> CycloElement:
        """Return ``z**k`` for any integer k."""
        k %= N
        sign = 1
        if k >= 12:
            k -= 12
            sign = -1
        if k < DEGREE:
            num = [0] * DEGREE
            num[k] = sign
            return cls._raw(tuple(num), 1)
        # z^8..z^11 via z^8 = z^4 - 1
        num = [0] * DEGREE
        num[k - 4] += sign
        num[k - 8] -= sign
        return cls._raw(tuple(num), 1)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def coerce(value: Scalar) -> CycloElement:
        if isinstance(value, CycloElement):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloElement.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to CycloElement")

    def __add__(self, other: Scalar) -> CycloElement:
        try:
            o = CycloElement.coerce(other)
        except TypeError:
            return NotImplemented
        if o._den == self._den:
            return CycloElement._raw(*_normalize([a + b for a, b in zip(self._num, o._num)], self._den))
        den = self._den * o._den
        return CycloElement._raw(
            *_normalize([a * o._den + b * self._den for a, b in zip(self._num, o._num)], den)
        )

    __radd__ = __add__

    def __neg__(self) -> CycloElement:
        return CycloElement._raw(tuple(-c for c in self._num), self._den)

    def __sub__(self, other: Scalar) -> CycloElement:
        try:
            o = CycloElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> CycloElement:
        return CycloElement.coerce(other) - self

    def __mul__(self, other: Scalar) -> CycloElement:
        try:
            o = CycloElement.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._num, o._num
        if not any(a) or not any(b):
            return ZERO
        if not any(b[1:]):
            c = b[0]
            return CycloElement._raw(*_normalize([x * c for x in a], self._den * o._den))
        if not any(a[1:]):
            c = a[0]
            return CycloElement._raw(*_normalize([x * c for x in b], self._den * o._den))
        prod = [0] * (2 * DEGREE - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycloElement._raw(*_normalize(_reduce_product(prod), self._den * o._den))

    __rmul__ = __mul__

    def inverse(self) -> CycloElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_24)")
        return _inverse_cached(self._num, self._den)

    def __truediv__(self, other: Scalar) -> CycloElement:
        try:
            o = CycloElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> CycloElement:
        return CycloElement.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> CycloElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> CycloElement:
        """Complex conjugation, the automorphism z -> z^-1."""
        return self.galois(-1)

    def galois(self, k: int) -> CycloElement:
        """Apply the automorphism z -> z^k (k coprime to 24)."""
        if math.gcd(k, N) != 1:
            raise FieldError(f"z -> z^{k} is not an automorphism")
        total = ZERO
        for i, c in enumerate(self._num):
            if c:
                total = total + CycloElement.zeta_power(i * k) * c
        return total * Fraction(1, self._den)

    def norm(self) -> Fraction:
        """Absolute norm to Q (product of all eight conjugates)."""
        prod = ONE
        for k in (1, 5, 7, 11, 13, 17, 19, 23):
            prod = prod * self.galois(k)
        return prod.to_fraction()

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloElement):
            return self._num == other._num and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self._num, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CycloElement({serialize(self)!r})"

    def __str__(self) -> str:
        return pretty(self)

    def __reduce__(self):
        return (CycloElement._raw, (self._num, self._den))


@lru_cache(maxsize=1 << 16)
def _inverse_cached(num: tuple[int, ...], den: int) -> CycloElement:
    a = [Fraction(c, den) for c in num]
    inv = _poly_inverse_mod_phi(a)
    return CycloElement(inv)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bi in enumerate(b):
            a[i + shift] -= c * bi
        _poly_trim(a)
    return q, a


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _poly_trim([Fraction(c) for c in out])


def _poly_inverse_mod_phi(a: list[Fraction]) -> list[Fraction]:
    """Extended Euclid in Q[x]: find u with u*a = 1 mod Phi_24."""
    r0, r1 = [Fraction(c) for c in PHI], _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible modulo Phi_24")
    c = r1[0]
    return [x / c for x in s1]


def field_arith(a: Scalar, b: Scalar, op: str) -> CycloElement:
    a, b = CycloElement.coerce(a), CycloElement.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


ZERO = CycloElement._raw((0,) * DEGREE, 1)
ONE = CycloElement._raw((1,) + (0,) * (DEGREE - 1), 1)

ZETA = CycloElement.zeta_power(1)
ZETA12 = CycloElement.zeta_power(2)
ZETA8 = CycloElement.zeta_power(3)
ZETA6 = CycloElement.zeta_power(4)
I = CycloElement.zeta_power(6)
OMEGA = CycloElement.zeta_power(8)
SQRT2 = ZETA8 + ZETA8.inverse()
SQRT_M2 = ZETA8 + ZETA8 ** 3
SQRT_M3 = 1 + 2 * OMEGA
SQRT3 = ZETA12 + ZETA12.inverse()
SQRT_M1_2 = I * SQRT2 / 2
SQRT_M1_3 = SQRT_M3 / 3

# name -> (element, defining relation as coefficients of a monic-ish integer polynomial)
_CONSTANTS: dict[str, tuple[CycloElement, tuple[Fraction, ...]]] = {
    "zeta24": (ZETA, (1, 0, 0, 0, -1, 0, 0, 0, 1)),
    "zeta12": (ZETA12, (1, 0, -1, 0, 1)),
    "zeta8": (ZETA8, (1, 0, 0, 0, 1)),
    "zeta6": (ZETA6, (1, -1, 1)),
    "i": (I, (1, 0, 1)),
    "omega": (OMEGA, (1, 1, 1)),
    "sqrt2": (SQRT2, (-2, 0, 1)),
    "sqrt-2": (SQRT_M2, (2, 0, 1)),
    "sqrt-3": (SQRT_M3, (3, 0, 1)),
    "sqrt3": (SQRT3, (-3, 0, 1)),
    "sqrt-1/2": (SQRT_M1_2, (Fraction(1, 2), 0, 1)),
    "sqrt-1/3": (SQRT_M1_3, (Fraction(1, 3), 0, 1)),
}
_ALIASES = {"zeta4": "i", "sqrt-1": "i", "z": "zeta24"}


def named_constant(name: str) -> CycloElement:
    key = _ALIASES.get(name, name)
    try:
        return _CONSTANTS[key][0]
    except KeyError:
        raise KeyError(f"unknown constant {name!r}") from None


def constant_relation(name: str) -> tuple[Fraction, ...]:
    """Coefficients (low degree first) of the polynomial the constant satisfies."""
    return tuple(Fraction(c) for c in _CONSTANTS[_ALIASES.get(name, name)][1])


def constant_names() -> list[str]:
    return list(_CONSTANTS)


def eval_univariate(coeffs: Iterable[Scalar], x: CycloElement) -> CycloElement:
    acc = ZERO
    for c in reversed(list(coeffs)):
        acc = acc * x + CycloElement.coerce(c)
    return acc


def multiplicative_order(a: Scalar) -> int | None:
    """Order of ``a`` as a root of unity, or None if it is not one."""
    a = CycloElement.coerce(a)
    if a.is_zero():
        raise ZeroDivisionError("zero has no multiplicative order")
    p = a
    for n in range(1, N + 1):
        if p == ONE:
            return n
        p = p * a
    return None


# -- serialization ---------------------------------------------------------

def serialize(a: CycloElement) -> str:
    parts = []
    for k, c in enumerate(a.coefficients):
        s = str(c)
        parts.append(s if k == 0 else f"{s}*z" if k == 1 else f"{s}*z^{k}")
    return " + ".join(parts)


_TERM = re.compile(r"^\s*([-+]?\d+(?:/\d+)?)\s*(?:\*\s*z(?:\^(\d+))?)?\s*$")


def parse(text: str) -> CycloElement:
    coeffs = [Fraction(0)] * (2 * DEGREE)
    for chunk in text.split(" + "):
        m = _TERM.match(chunk)
        if not m:
            raise ValueError(f"malformed term {chunk!r}")
        power = 0
        if "z" in chunk:
            power = int(m.group(2)) if m.group(2) else 1
        if power >= 2 * DEGREE:
            raise ValueError(f"power {power} too large")
        coeffs[power] += Fraction(m.group(1))
    return CycloElement(coeffs)


def pretty(a: CycloElement) -> str:
    terms = []
    for k, c in enumerate(a.coefficients):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = "z" if k == 1 else f"z^{k}"
            terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


# -- prime field reduction -------------------------------------------------

class PrimeFieldElement:
    """Element of F_p together with the chosen image of zeta_24."""

    __slots__ = ("value", "p", "root")

    def __init__(self, value: int, p: int, root: int | None = None):
        self.p = p
        self.value = value % p
        self.root = smallest_root(p) if root is None else root

    def _check(self, other: PrimeFieldElement) -> None:
        if self.p != other.p or self.root != other.root:
            raise FieldError("mixed prime fields")

    def _wrap(self, v: int) -> PrimeFieldElement:
        return PrimeFieldElement(v, self.p, self.root)

    def _coerce(self, other) -> PrimeFieldElement:
        if isinstance(other, PrimeFieldElement):
            self._check(other)
            return other
        if isinstance(other, int):
            return self._wrap(other)
        if isinstance(other, Fraction):
            return self._wrap(other.numerator * pow(other.denominator, -1, self.p))
        raise FieldError(f"cannot mix F_{self.p} with {type(other).__name__}")

    def __add__(self, other):
        return self._wrap(self.value + self._coerce(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._coerce(other).value)

    def __rsub__(self, other):
        return self._wrap(self._coerce(other).value - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._coerce(other).value)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return self._wrap(self.value * pow(o.value, -1, self.p))

    def __pow__(self, n: int):
        return self._wrap(pow(self.value, n, self.p))

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return (self.value, self.p) == (other.value, other.p)
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_root(p: int) -> int:
    """Smallest r in [1, p) with Phi_24(r) = 0 mod p."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p % N != 1:
        raise ValueError(f"p = {p} is not 1 mod 24")
    for r in range(1, p):
        if (r ** 8 - r ** 4 + 1) % p == 0:
            return r
    raise AssertionError("Phi_24 has no root although p = 1 mod 24")


def _horner(num: Sequence[int], r: int, p: int) -> int:
    acc = 0
    for c in reversed(num):
        acc = (acc * r + c) % p
    return acc


@lru_cache(maxsize=None)
def _separator(p: int) -> CycloElement:
    """prod (z - r_j) over the other roots r_j of Phi_24 mod p.

    It lies in every prime above p except the one with z = smallest_root(p).
    """
    r = smallest_root(p)
    e = ONE
    for rj in range(1, p):
        if rj != r and (rj ** 8 - rj ** 4 + 1) % p == 0:
            e = e * (ZETA - rj)
    return e


@lru_cache(maxsize=1 << 16)
def _reduce_cached(num: tuple[int, ...], den: int, p: int) -> int:
    r = smallest_root(p)
    if den % p:
        return _horner(num, r, p) * pow(den, -1, p) % p
    # den = p^k m: clear p^k with the separator, which is a unit at our prime
    k, m = 0, den
    while m % p == 0:
        k, m = k + 1, m // p
    e = _separator(p)
    x = CycloElement._raw(num, 1) * e ** k / p ** k
    if x._den % p:
        unit = _horner(e._num, r, p) * pow(e._den, -1, p) % p
        return _horner(x._num, r, p) * pow(x._den * pow(unit, k, p) * m, -1, p) % p
    raise FieldError(f"element is not integral at the prime above {p} with z = {r}")


def reduce_mod_p_int(a: Scalar, p: int) -> int:
    """Image of ``a`` in F_p as a plain integer in [0, p)."""
    a = CycloElement.coerce(a)
    return _reduce_cached(a._num, a._den, p)


def reduce_mod_p(a: Scalar, p: int) -> PrimeFieldElement:
    return PrimeFieldElement(reduce_mod_p_int(a, p), p)
