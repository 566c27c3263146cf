"""Even binary lattices, CM points and j-invariants, all with exact arithmetic."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .exactfield import I, ONE, SQRT2, SQRT3, ZERO, CycloElement


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryQuadLattice:
    """Gram matrix [[2a, b], [b, 2c]], i.e. the form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise LatticeError(f"{self.gram} is not positive definite")

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[int]]) -> BinaryQuadLattice:
        (g00, g01), (g10, g11) = gram
        if g01 != g10:
            raise LatticeError("Gram matrix is not symmetric")
        if g00 % 2 or g11 % 2:
            raise LatticeError("lattice is not even")
        return cls(g00 // 2, g01, g11 // 2)

    @property
    def gram(self) -> list[list[int]]:
        return [[2 * self.a, self.b], [self.b, 2 * self.c]]

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def transform(self, P: Sequence[Sequence[int]]) -> BinaryQuadLattice:
        """Gram P^T G P for an integral P with det P = +-1."""
        (p, q), (r, s) = P
        if abs(p * s - q * r) != 1:
            raise LatticeError("basis change is not unimodular")
        G = self.gram
        GP = [[G[0][0] * p + G[0][1] * r, G[0][0] * q + G[0][1] * s],
              [G[1][0] * p + G[1][1] * r, G[1][0] * q + G[1][1] * s]]
        new = [[p * GP[0][0] + r * GP[1][0], p * GP[0][1] + r * GP[1][1]],
               [q * GP[0][0] + s * GP[1][0], q * GP[0][1] + s * GP[1][1]]]
        return BinaryQuadLattice.from_gram(new)

    def __str__(self) -> str:
        return str(self.gram)


def gauss_reduce(L: BinaryQuadLattice) -> BinaryQuadLattice:
    """Properly equivalent reduced form: |b| <= a <= c, and b >= 0 if |b| = a or a = c."""
    a, b, c = L.a, L.b, L.c
    while True:
        if c < a:
            a, b, c = c, -b, a                       # (x, y) -> (-y, x)
            continue
        if abs(b) > a:
            k = (a - b) // (2 * a)                   # b + 2ak lands in (-a, a]
            b, c = b + 2 * a * k, a * k * k + b * k + c
            continue
        break
    if b < 0 and (-b == a or a == c):
        b = -b
    return BinaryQuadLattice(a, b, c)


def is_reduced(L: BinaryQuadLattice) -> bool:
    return gauss_reduce(L) == L


def twist(L: BinaryQuadLattice, n: int) -> BinaryQuadLattice:
    if n < 1:
        raise LatticeError("twist factor must be positive")
    return BinaryQuadLattice(n * L.a, n * L.b, n * L.c)


def properly_equivalent(L1: BinaryQuadLattice, L2: BinaryQuadLattice) -> bool:
    return gauss_reduce(L1) == gauss_reduce(L2)


def improperly_equivalent(L1: BinaryQuadLattice, L2: BinaryQuadLattice) -> bool:
    """Equivalence under GL2(Z), i.e. also allowing an orientation reversal."""
    return properly_equivalent(L1, L2) or properly_equivalent(BinaryQuadLattice(L1.a, -L1.b, L1.c), L2)


def equivalence_report(L1: BinaryQuadLattice, L2: BinaryQuadLattice) -> dict:
    proper, improper = properly_equivalent(L1, L2), improperly_equivalent(L1, L2)
    return {"proper": proper, "improper": improper, "differ": proper != improper}


# -- square roots inside Q(zeta_24) -------------------------------------------------------------

_SQRT_SQUAREFREE = {1: ONE, 2: SQRT2, 3: SQRT3, 6: SQRT2 * SQRT3}


def sqrt_negative(D: int) -> CycloElement:
    """sqrt(D) for an integer D < 0 with sqrt(D) in the field, choosing the upper half plane."""
    if D >= 0:
        raise LatticeError("expected a negative discriminant")
    n, m = -D, 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            m *= k
        k += 1
    if n not in _SQRT_SQUAREFREE:
        raise LatticeError(f"sqrt({D}) lies outside Q(zeta_24)")
    root = _SQRT_SQUAREFREE[n] * I * m
    assert root * root == D
    return root


def to_complex(a: CycloElement) -> complex:
    z = cmath.exp(2j * math.pi / 24)
    return sum(float(c) * z ** k for k, c in enumerate(a.coefficients))


@dataclass(frozen=True)
class CMPoint:
    """tau with A tau^2 + B tau + C = 0 (integers, B^2 - 4AC < 0)."""

    tau: CycloElement
    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.B * self.B - 4 * self.A * self.C >= 0:
            raise LatticeError("tau is not imaginary quadratic")
        if self.tau * self.tau * self.A + self.tau * self.B + self.C != 0:
            raise LatticeError("tau does not satisfy its quadratic equation")

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def primitive_discriminant(self) -> int:
        g = math.gcd(math.gcd(self.A, self.B), self.C)
        return self.discriminant // (g * g)

    @classmethod
    def of(cls, tau: CycloElement) -> CMPoint:
        """Recover the primitive integral equation of an imaginary quadratic tau."""
        t2 = tau * tau
        # t2 = u + v tau with rational u, v; then tau^2 - v tau - u = 0
        basis = [ONE, tau]
        coeffs = linalg.solve_in_span(list(t2.coefficients), [list(b.coefficients) for b in basis])
        if coeffs is None:
            raise LatticeError("tau is not quadratic over Q")
        u, v = (c.to_fraction() for c in coeffs)
        den = math.lcm(u.denominator, v.denominator)
        A, B, C = den, int(-v * den), int(-u * den)
        g = math.gcd(math.gcd(A, B), C)
        point = cls(tau, A // g, B // g, C // g)
        if to_complex(tau).imag < 0:
            raise LatticeError("tau must lie in the upper half plane")
        return point


def shioda_mitani(L: BinaryQuadLattice) -> tuple[CMPoint, CMPoint]:
    """tau = (-b + sqrt D)/(2a) and tau' = (b + sqrt D)/2."""
    D = L.discriminant
    r = sqrt_negative(D)
    tau = (r - L.b) / (2 * L.a)
    tau2 = (r + L.b) / 2
    return CMPoint(tau, L.a, L.b, L.c), CMPoint(tau2, 1, -L.b, L.a * L.c)


def _exact_witness(t1: CycloElement, t2: CycloElement, m: Sequence[int]) -> bool:
    p, q, r, s = (int(v) for v in m)
    den = t1 * r + s
    return not den.is_zero() and t2 * den == t1 * p + q


def lattice_homothety_equal(t1: CMPoint, t2: CMPoint, bound: int = 10) -> tuple[bool | str, tuple | None]:
    """(True, (p, q, r, s)) if t2 = (p t1 + q)/(r t1 + s) with ps - qr = +-1, |entries| <= bound.

    Different primitive discriminants give (False, None) at once; an exhausted
    search gives ("undetermined", None).
    """
    if t1.primitive_discriminant != t2.primitive_discriminant:
        return False, None
    z1, z2 = to_complex(t1.tau), to_complex(t2.tau)
    rng = np.arange(-bound, bound + 1)
    p, q, r, s = np.meshgrid(rng, rng, rng, rng, indexing="ij")
    det = p * s - q * r
    close = np.abs(z2 * (r * z1 + s) - (p * z1 + q)) < 1e-9
    cand = np.argwhere((np.abs(det) == 1) & close)
    mats = [tuple(int(rng[i]) for i in ix) for ix in cand.tolist()]
    mats.sort(key=lambda m: (sum(map(abs, m)), [-v for v in m]))
    for m in mats:
        if _exact_witness(t1.tau, t2.tau, m):
            return True, m
    return "undetermined", None


# -- elliptic curves --------------------------------------------------------------------------------

@dataclass(frozen=True)
class EllipticCurveW:
    """kind "weierstrass": data = (g2, g3) for y^2 = 4x^3 - g2 x - g3;
    kind "branch": data = four points of P^1 as pairs;
    kind "quartic": data = (a, b, c, d, e) for y^2 = a x^4 + b x^3 + c x^2 + d x + e."""

    kind: str
    data: tuple


def _det(p, q) -> CycloElement:
    return CycloElement.coerce(p[0]) * q[1] - CycloElement.coerce(p[1]) * q[0]


def as_p1(pt) -> tuple[CycloElement, CycloElement]:
    if isinstance(pt, str):
        if pt in ("inf", "oo", "infinity"):
            return (ONE, ZERO)
        raise LatticeError(f"unknown point {pt!r}")
    if isinstance(pt, tuple):
        return (CycloElement.coerce(pt[0]), CycloElement.coerce(pt[1]))
    return (CycloElement.coerce(pt), ONE)


def cross_ratio(points: Sequence) -> CycloElement:
    z1, z2, z3, z4 = (as_p1(p) for p in points)
    num = _det(z3, z1) * _det(z2, z4)
    den = _det(z3, z4) * _det(z2, z1)
    if num.is_zero() or den.is_zero() or num == den:
        raise LatticeError("branch points are not distinct")
    return num / den


def j_from_lambda(lam: CycloElement) -> CycloElement:
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)


def j_invariant(E: EllipticCurveW) -> CycloElement:
    if E.kind == "weierstrass":
        g2, g3 = (CycloElement.coerce(v) for v in E.data)
        disc = g2 ** 3 - 27 * g3 * g3
        if disc.is_zero():
            raise LatticeError("singular Weierstrass cubic")
        return 1728 * g2 ** 3 / disc
    if E.kind == "branch":
        pts = [as_p1(p) for p in E.data]
        if len(pts) != 4:
            raise LatticeError("need four branch points")
        for p, q in itertools.combinations(pts, 2):
            if _det(p, q).is_zero():
                raise LatticeError("repeated branch point")
        return j_from_lambda(cross_ratio(pts))
    if E.kind == "quartic":
        a, b, c, d, e = (CycloElement.coerce(v) for v in E.data)
        inv_i = 12 * a * e - 3 * b * d + c * c
        inv_j = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c ** 3
        disc = 4 * inv_i ** 3 - inv_j * inv_j
        if disc.is_zero():
            raise LatticeError("quartic has a repeated root")
        return 6912 * inv_i ** 3 / disc
    raise LatticeError(f"unknown curve data kind {E.kind!r}")


def cross_ratio_match(set_a: Sequence, set_b: Sequence) -> bool:
    """True iff the double covers branched at the two sets have the same j-invariant."""
    ja = j_invariant(EllipticCurveW("branch", tuple(set_a)))
    jb = j_invariant(EllipticCurveW("branch", tuple(set_b)))
    return ja == jb


def rational_j(j: CycloElement) -> Fraction:
    if not j.is_rational():
        raise LatticeError(f"j = {j} is not rational")
    return j.to_fraction()
