"""Named matrices, polynomials and surfaces shared by the verification modules."""

from __future__ import annotations

from functools import lru_cache

from .exactfield import (I, OMEGA, ONE, SQRT_M1_2, SQRT_M1_3, SQRT_M3, ZERO, ZETA6, ZETA8,
                         ZETA12)
from .groups import GroupElement, block
from .polyring import (AFFINE, FACTORS, MultiPoly, elementary_symmetric, multihomogenize,
                       variables)

x, y, z, w = variables("x y z w")
s, t, u, v = variables("s t u v")
PROJ_COORDS = ("x", "y", "z", "w")

# -- 2x2 matrices ------------------------------------------------------------

E2 = [[ONE, ZERO], [ZERO, ONE]]
I2 = [[ZERO, ONE], [-ONE, ZERO]]
J2 = [[I, ZERO], [ZERO, -I]]
ALPHA = [[ZETA8, ZERO], [ZERO, ZETA8 ** 7]]
BETA = [[SQRT_M1_2, SQRT_M1_2], [SQRT_M1_2, -SQRT_M1_2]]
GAMMA = [[ONE, ZERO], [ZERO, OMEGA]]
DELTA = [[SQRT_M1_3, -SQRT_M1_3], [-2 * SQRT_M1_3, -SQRT_M1_3]]
_MU = ZETA12 - ZETA6
M = [[_MU, -ONE], [1 - I, (1 + I) * _MU]]


def scale2(c, m):
    return [[c * a for a in row] for row in m]


def matmul2(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def alpha() -> GroupElement:
    return GroupElement(ALPHA)


def beta() -> GroupElement:
    return GroupElement(BETA)


# -- elementary symmetric functions and the two invariant planes ----------------

SIGMA = {i: elementary_symmetric(i) for i in range(1, 5)}
F_S = SIGMA[4] + 1
G_S = SIGMA[2]
F1 = (s * t + u * v) + OMEGA * (s * u + t * v) + OMEGA ** 2 * (s * v + t * u)
F2 = (s * t + u * v) + OMEGA ** 2 * (s * u + t * v) + OMEGA * (s * v + t * u)

S_EQUATIONS = (multihomogenize(F_S), multihomogenize(G_S))
T_EQUATIONS = (multihomogenize(F1), multihomogenize(F2))

# -- quartic models -----------------------------------------------------------------

SCHUR = x ** 4 - x * y ** 3 - z ** 4 + z * w ** 3
T192 = x ** 4 + y ** 4 + z ** 4 + w ** 4 - 2 * SQRT_M3 * (x ** 2 * y ** 2 + z ** 2 * w ** 2)

# hyperplanes f_{mn}; point 4m+n (1-based) is index 4m+n-1 here
HYPERPLANES = (
    x, x - y, x - OMEGA * y, x - OMEGA ** 2 * y,
    z, z - w, z - OMEGA ** 2 * w, z - OMEGA * w,
)


def hyperplane_name(k: int) -> str:
    return f"f{k // 4}{k % 4 + 1}"


# -- projective automorphisms of the Schur quartic ------------------------------------

def pgl4(*blocks) -> GroupElement:
    return GroupElement(block(*blocks), projective=True)


@lru_cache(maxsize=None)
def aut_h4_generators() -> tuple[GroupElement, ...]:
    """(gamma 0; 0 E), (delta 0; 0 E), (0 E; E 0), (iE 0; 0 E)."""
    return (
        pgl4(GAMMA, 0, 0, E2),
        pgl4(DELTA, 0, 0, E2),
        pgl4(0, E2, E2, 0),
        pgl4(scale2(I, E2), 0, 0, E2),
    )


@lru_cache(maxsize=None)
def intersection_generators() -> tuple[GroupElement, ...]:
    return (
        pgl4(GAMMA, 0, 0, matmul2(GAMMA, GAMMA)),
        pgl4(DELTA, 0, 0, DELTA),
        pgl4(0, E2, E2, 0),
        pgl4(scale2(I, E2), 0, 0, E2),
    )


@lru_cache(maxsize=None)
def symplectic_generators() -> tuple[GroupElement, ...]:
    return (
        pgl4(GAMMA, 0, 0, matmul2(GAMMA, GAMMA)),
        pgl4(DELTA, 0, 0, DELTA),
        pgl4(0, E2, scale2(I, E2), 0),
    )


def linear_lift(g: GroupElement) -> list[list]:
    return [list(r) for r in g.matrix]


@lru_cache(maxsize=None)
def t192_generators() -> dict[str, GroupElement]:
    """Generators of the order-1152 group acting on the T192 quartic."""
    c = (1 + I) / 2
    a_star = [[c * OMEGA, c * OMEGA, ZERO, ZERO],
              [-c * ZETA12, c * ZETA12, ZERO, ZERO],
              [ZERO, ZERO, c * ZETA12 ** 5, -c * OMEGA ** 2],
              [ZERO, ZERO, c * ZETA12 ** 5, c * OMEGA ** 2]]
    c6 = (-1 + I) / 2
    six = block([[c6 * OMEGA, c6 * OMEGA], [-c6 * ZETA12, c6 * ZETA12]], 0, 0, I2)
    return {
        "(I 0; 0 E)": pgl4(I2, 0, 0, E2),
        "(J 0; 0 E)": pgl4(J2, 0, 0, E2),
        "(E 0; 0 I)": pgl4(E2, 0, 0, I2),
        "(E 0; 0 J)": pgl4(E2, 0, 0, J2),
        "alpha^-1*alpha": GroupElement(a_star, projective=True),
        "tau": pgl4(0, E2, E2, 0),
        "order-6": GroupElement(six, projective=True),
    }


def t192_to_schur() -> GroupElement:
    """diag(M, zeta8 M), pulling the Schur quartic back to a multiple of the T192 quartic."""
    return GroupElement(block(M, 0, 0, scale2(ZETA8, M)))
