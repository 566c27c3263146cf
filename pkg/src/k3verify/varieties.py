"""Surfaces in (P^1)^4 and P^3: smoothness over F_p, singular loci, fibrations and lines."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import fpgeom, linalg
from .exactfield import I, ONE, ZERO, CycloElement, pretty, reduce_mod_p_int
from .groups import FiniteGroup, GroupElement, PairElement, Permutation
from .models import (F1, F2, F_S, G_S, HYPERPLANES, S_EQUATIONS, SCHUR, T192, T_EQUATIONS,
                     PROJ_COORDS, beta, alpha)
from .polyring import AFFINE, FACTORS, MultiPoly, linear_form, variables


class VarietyError(RuntimeError):
    pass


@dataclass(frozen=True)
class SurfaceCI:
    name: str
    ambient: str                      # "P1^4" or "P3"
    equations: tuple[MultiPoly, ...]

    def __post_init__(self):
        if any(e.is_zero() for e in self.equations):
            raise VarietyError("zero defining polynomial")
        if self.ambient == "P3" and (len(self.equations) != 1 or self.equations[0].degree() != 4):
            raise VarietyError("P3 surfaces here are single quartics")
        if self.ambient == "P1^4":
            for e in self.equations:
                for a, b in FACTORS:
                    if e.degree_in(a) > 1 or e.degree_in(b) > 1:
                        raise VarietyError("equation is not of multidegree (1,1,1,1)")


S_SURFACE = SurfaceCI("S", "P1^4", S_EQUATIONS)
T_SURFACE = SurfaceCI("T", "P1^4", T_EQUATIONS)
SCHUR_SURFACE = SurfaceCI("S_Sch", "P3", (SCHUR,))
T192_SURFACE = SurfaceCI("S_T192", "P3", (T192,))


@dataclass(frozen=True)
class FpPoint:
    p: int
    coords: tuple[tuple[int, int], ...]

    @property
    def charts(self) -> tuple[str, ...]:
        return tuple("affine" if c[1] else "infinity" for c in self.coords)

    def label(self) -> str:
        return "(" + ", ".join(f"[{a}:{b}]" for a, b in self.coords) + ")"

    def to_json(self) -> list:
        return [list(c) for c in self.coords]


def _points_to_fp(pts: np.ndarray, p: int) -> list[FpPoint]:
    return [FpPoint(p, tuple(tuple(int(x) for x in c) for c in pt)) for pt in pts]


# -- symbolic identities ------------------------------------------------------------------

MINOR_IDENTITIES = (("s", "t", "(b-a)(c+d)cd"), ("t", "u", "(c-b)(a+d)ad"), ("u", "v", "(d-c)(a+b)ab"))


def jacobian_minor_identities() -> dict:
    """The three 2x2 Jacobian minors of (sigma4+1, sigma2) at (a,b,c,d), as exact identities."""
    a, b, c, d = variables("a b c d")
    point = dict(zip(AFFINE, (a, b, c, d)))
    expected = {
        "(b-a)(c+d)cd": (b - a) * (c + d) * c * d,
        "(c-b)(a+d)ad": (c - b) * (a + d) * a * d,
        "(d-c)(a+b)ab": (d - c) * (a + b) * a * b,
    }
    items = []
    for x, y, name in MINOR_IDENTITIES:
        minor = F_S.diff(x) * G_S.diff(y) - F_S.diff(y) * G_S.diff(x)
        value = minor.subs(point)
        residual = value - expected[name]
        items.append({"minor": f"d/d{x}, d/d{y}", "expected": name, "computed": str(value),
                      "holds": residual.is_zero(), "residual": str(residual)})
    return {"identities": items, "all_hold": all(i["holds"] for i in items)}


def verify_T_singular() -> dict:
    """T is singular at the origin and along the whole diagonal s = t = u = v."""
    (lam,) = variables("lam")
    origin = {n: 0 for n in AFFINE}
    at_origin = all(f.evaluate(origin) == 0 and all(f.diff(n).evaluate(origin) == 0 for n in AFFINE)
                    for f in (F1, F2))
    diag = {n: lam for n in AFFINE}
    eqs_vanish = all(f.subs(diag).is_zero() for f in (F1, F2))
    minors_vanish = all(
        (F1.diff(x) * F2.diff(y) - F1.diff(y) * F2.diff(x)).subs(diag).is_zero()
        for x, y in itertools.combinations(AFFINE, 2))
    # the point at infinity of the diagonal, in the multihomogeneous equations
    inf = {}
    for a, b in FACTORS:
        inf[a], inf[b] = 1, 0
    hom_inf = all(e.evaluate(inf) == 0 for e in T_EQUATIONS)
    return {"origin_singular": at_origin, "diagonal_on_T": eqs_vanish,
            "diagonal_minors_vanish": minors_vanish, "infinity_on_T": hom_inf,
            "holds": at_origin and eqs_vanish and minors_vanish and hom_inf}


# -- F_p enumeration -----------------------------------------------------------------------

def points_over_Fp(X: SurfaceCI, p: int) -> np.ndarray:
    if X.ambient == "P1^4":
        return fpgeom.points_p1x4(X.equations, p)
    return fpgeom.points_on_quartic(X.equations[0], p)


def smooth_over_Fp(X: SurfaceCI, p: int) -> list[FpPoint]:
    """Every singular F_p point of X (empty list = smooth over F_p).

    All (p+1)^3 choices of the first three coordinates are scanned, covering
    all 16 charts; the fourth coordinate is solved from the two equations.
    Singular means all 2x2 minors of the 2x8 homogeneous Jacobian vanish,
    which by the Euler relation in each factor is the chart-wise rank test.
    """
    if X.ambient != "P1^4":
        raise VarietyError("smoothness enumeration is implemented for (P^1)^4 only")
    pts = points_over_Fp(X, p)
    mask = fpgeom.jacobian_rank_deficient(X.equations, pts, p)
    return _points_to_fp(pts[mask], p)


def diagonal_points(p: int) -> list[FpPoint]:
    return [FpPoint(p, (tuple(map(int, c)),) * 4) for c in fpgeom.p1_points(p)]


# -- O acting on P^1 and on (P^1)^4 ------------------------------------------------------------

def mobius(g: GroupElement, point: tuple) -> tuple[CycloElement, CycloElement]:
    a, b = g.apply(point)
    if b.is_zero():
        return (ONE, ZERO)
    return (a / b, ONE)


def octahedral_group() -> FiniteGroup:
    return FiniteGroup.generate([alpha().to_projective(), beta().to_projective()], name="O")


ZERO_PT = (ZERO, ONE)
INF_PT = (ONE, ZERO)


def normalize_p1(point) -> tuple[CycloElement, CycloElement]:
    a, b = (CycloElement.coerce(x) for x in point)
    if b.is_zero():
        if a.is_zero():
            raise VarietyError("[0:0] is not a point")
        return (ONE, ZERO)
    return (a / b, ONE)


def point_name(pt) -> str:
    a, b = normalize_p1(pt)
    return "inf" if b.is_zero() else pretty(a)


# -- parametrized curves ---------------------------------------------------------------------

_a, _b = variables("a b")


@dataclass(frozen=True)
class AmbientCurve:
    """Rational curve in (P^1)^4: per factor a pair of forms of degree <= 1 in (a, b)."""

    name: str
    coords: tuple[tuple[MultiPoly, MultiPoly], ...]

    def pullback(self, f: MultiPoly) -> MultiPoly:
        asg = {}
        for (x0, x1), (c0, c1) in zip(FACTORS, self.coords):
            asg[x0], asg[x1] = c0, c1
        return f.subs(asg)

    def is_constant(self, k: int) -> bool:
        c0, c1 = self.coords[k]
        return c0.degree() <= 0 and c1.degree() <= 0

    def degrees(self) -> tuple[int, ...]:
        return tuple(0 if self.is_constant(k) else 1 for k in range(4))

    def constant_value(self, k: int):
        c0, c1 = self.coords[k]
        return normalize_p1((c0.constant_value() if not c0.is_zero() else ZERO,
                             c1.constant_value() if not c1.is_zero() else ZERO))

    def at(self, a, b) -> tuple:
        pt = {"a": a, "b": b}
        return tuple(normalize_p1((c0.evaluate(pt), c1.evaluate(pt))) for c0, c1 in self.coords)

    def transform(self, g: GroupElement, name: str) -> AmbientCurve:
        m = g.matrix
        new = tuple((c0 * m[0][0] + c1 * m[0][1], c0 * m[1][0] + c1 * m[1][1]) for c0, c1 in self.coords)
        return AmbientCurve(name, new)


def _const(c) -> MultiPoly:
    return MultiPoly.const(c)


def component_curve(i: int, j: int) -> AmbientCurve:
    """C_ij: factor i at 0 = [0:1], factor j at inf = [1:0], the other two [a:b] and [a:-b] (1-based)."""
    coords = []
    rest = [k for k in range(1, 5) if k not in (i, j)]
    for k in range(1, 5):
        if k == i:
            coords.append((_const(0), _const(1)))
        elif k == j:
            coords.append((_const(1), _const(0)))
        elif k == rest[0]:
            coords.append((_a, _b))
        else:
            coords.append((_a, -_b))
    return AmbientCurve(f"C{i}{j}", tuple(coords))


def curve_on_surface(C: AmbientCurve, X: SurfaceCI = S_SURFACE) -> bool:
    return all(C.pullback(e).is_zero() for e in X.equations)


def _pin_parameter(moving: tuple[MultiPoly, MultiPoly], target) -> tuple | None:
    """The parameter [a:b] where a degree-1 coordinate equals the point target."""
    c0, c1 = moving
    t0, t1 = target
    cond = c0 * t1 - c1 * t0          # linear form in a, b
    ca, cb = cond.coefficient({"a": 1}), cond.coefficient({"b": 1})
    if ca.is_zero() and cb.is_zero():
        return None
    return (-cb, ca)


def curve_intersections(C: AmbientCurve, D: AmbientCurve) -> list[tuple] | None:
    """Common points of two curves, or None if the structure does not pin them down."""
    pc = pd = None
    for k in range(4):
        if C.is_constant(k) and not D.is_constant(k) and pd is None:
            pd = _pin_parameter(D.coords[k], C.constant_value(k))
        if D.is_constant(k) and not C.is_constant(k) and pc is None:
            pc = _pin_parameter(C.coords[k], D.constant_value(k))
    if pc is None and pd is None:
        if all(C.is_constant(k) and D.is_constant(k) for k in range(4)):
            return [C.at(0, 1)] if C.at(0, 1) == D.at(0, 1) else []
        return None
    if pc is None or pd is None:
        return None
    P, Q = C.at(*pc), D.at(*pd)
    return [P] if P == Q else []


# -- fibration --------------------------------------------------------------------------------

def singular_values(G: FiniteGroup | None = None) -> list[tuple[CycloElement, CycloElement]]:
    """Orbit of 0 in P^1 under the octahedral group."""
    G = G or octahedral_group()
    orbit = {mobius(g, ZERO_PT) for g in G.elements}
    return sorted(orbit, key=lambda pt: (pt[1].is_zero(), str(pt)))


def _fiber_components(i: int, value, G: FiniteGroup) -> list[AmbientCurve]:
    value = normalize_p1(value)
    g = next((g for g in G.elements if mobius(g, ZERO_PT) == value), None)
    if g is None:
        return []
    comps = []
    for j in range(1, 5):
        if j == i:
            continue
        comps.append(component_curve(i, j).transform(g, f"g(C{i}{j})"))
    return comps


def fiber_point_count(i: int, value_mod_p: tuple[int, int], p: int, pts: np.ndarray | None = None) -> int:
    if pts is None:
        pts = points_over_Fp(S_SURFACE, p)
    target = np.array(fpgeom.normalize_pairs(np.array([value_mod_p]), p)[0])
    return int(np.all(pts[:, i - 1] == target, axis=1).sum())


def _reduce_point(pt, p: int) -> tuple[int, int]:
    return (reduce_mod_p_int(pt[0], p), reduce_mod_p_int(pt[1], p))


def fiber_analysis(i: int, value, p: int = 73, G: FiniteGroup | None = None,
                   pts: np.ndarray | None = None) -> dict:
    """Describe the fiber of S -> P^1 (projection to factor i, 1-based) over value."""
    if not 1 <= i <= 4:
        raise VarietyError("projection index must be 1..4")
    G = G or octahedral_group()
    value = normalize_p1(value)
    if pts is None:
        pts = points_over_Fp(S_SURFACE, p)
    count = fiber_point_count(i, _reduce_point(value, p), p, pts)
    comps = _fiber_components(i, value, G)
    if not comps:
        bound = 2 * math.isqrt(p) + 2
        return {"factor": i, "value": point_name(value), "type": "smooth-candidate", "points": count,
                "hasse_ok": abs(count - (p + 1)) <= 2 * math.sqrt(p), "bound": bound}
    for C in comps:
        if not curve_on_surface(C):
            raise VarietyError(f"component {C.name} is not on S")
        if C.constant_value(i - 1) != value:
            raise VarietyError(f"component {C.name} is not in the fiber")
        if sorted(C.degrees()) != [0, 0, 1, 1]:
            raise VarietyError(f"component {C.name} has unexpected multidegree {C.degrees()}")
    meets = []
    for C, D in itertools.combinations(comps, 2):
        common = curve_intersections(C, D)
        if common is None or len(common) != 1:
            raise VarietyError(f"could not certify a single intersection of {C.name} and {D.name}")
        meets.append(common[0])
    if len(set(meets)) != 1:
        raise VarietyError("the components do not share one common point")
    common = meets[0]
    return {"factor": i, "value": point_name(value), "type": "IV", "components": [c.name for c in comps],
            "component_degrees": [c.degrees() for c in comps],
            "common_point": tuple(point_name(c) for c in common),
            "points": count, "expected_points": 3 * p + 1, "count_ok": count == 3 * p + 1}


def critical_values_mod_p(i: int, p: int, pts: np.ndarray | None = None) -> list[tuple[int, int]]:
    """F_p values over which the fiber of projection i has a singular F_p point."""
    if pts is None:
        pts = points_over_Fp(S_SURFACE, p)
    others = [k for k in range(4) if k != i - 1]
    mask = fpgeom.jacobian_rank_deficient(S_EQUATIONS, pts, p, factors=others)
    return sorted({tuple(int(x) for x in c) for c in pts[mask][:, i - 1]})


def fibration_report(p: int = 73, i: int = 1) -> dict:
    G = octahedral_group()
    pts = points_over_Fp(S_SURFACE, p)
    values = singular_values(G)
    fibers = [fiber_analysis(i, v, p, G, pts) for v in values]
    expected = {(ZERO, ONE), (ONE, ZERO), (ONE, ONE), (-ONE, ONE), (I, ONE), (-I, ONE)}
    crit = critical_values_mod_p(i, p, pts)
    crit_expected = sorted(_reduce_point(v, p) for v in values)
    generic = []
    singular_set = set(crit_expected)
    for c in map(tuple, fpgeom.p1_points(p)):
        c = tuple(int(x) for x in c)
        if c in singular_set:
            continue
        n = fiber_point_count(i, c, p, pts)
        generic.append(abs(n - (p + 1)) <= 2 * math.sqrt(p))
    euler = sum(4 for f in fibers if f["type"] == "IV")
    return {"values": [point_name(v) for v in values], "values_match": set(values) == expected,
            "fibers": fibers, "all_type_IV": all(f["type"] == "IV" and f["count_ok"] for f in fibers),
            "critical_values_mod_p": crit, "critical_values_match": crit == crit_expected,
            "smooth_fibers_within_hasse": all(generic), "euler_tally": euler}


def fiber_curve_intersection(i: int, value, curve: AmbientCurve) -> int | str:
    """(p_i^*(value) . curve): degree of the pulled-back linear form, or "contained"."""
    v0, v1 = normalize_p1(value)
    x0, x1 = FACTORS[i - 1]
    form = MultiPoly.var(x0) * v1 - MultiPoly.var(x1) * v0
    pulled = curve.pullback(form)
    if pulled.is_zero():
        return "contained"
    return pulled.degree()


# -- lines on the Schur quartic -------------------------------------------------------------------

def _vec_key(rows) -> tuple:
    red, _ = linalg.rref(rows)
    return tuple(tuple(x for x in r) for r in red)


class ProjLine:
    """Line in P^3 stored by two spanning points and two defining forms."""

    def __init__(self, points: Sequence[Sequence], name: str = ""):
        pts = linalg.as_matrix(points)
        if linalg.rank(pts) != 2:
            raise VarietyError("points do not span a line")
        self.points = pts
        self.forms = linalg.nullspace(pts)
        self.name = name
        self.key = _vec_key(pts)

    @classmethod
    def from_forms(cls, f: MultiPoly, g: MultiPoly, name: str = "") -> ProjLine:
        rows = [[h.coefficient({n: 1}) for n in PROJ_COORDS] for h in (f, g)]
        if linalg.rank(rows) != 2:
            raise VarietyError("forms are dependent")
        return cls(linalg.nullspace(rows), name)

    def form_polys(self) -> list[MultiPoly]:
        return [linear_form(r, PROJ_COORDS) for r in self.forms]

    def transform(self, g: GroupElement, name: str = "") -> ProjLine:
        return ProjLine([g.apply(p) for p in self.points], name)

    def lies_on(self, F: MultiPoly) -> bool:
        lam, mu = MultiPoly.var("a"), MultiPoly.var("b")
        asg = {n: lam * self.points[0][k] + mu * self.points[1][k] for k, n in enumerate(PROJ_COORDS)}
        return F.subs(asg).is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjLine) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"ProjLine({self.name or self.key})"


def schur_lines_lij() -> list[ProjLine]:
    """l_ij = (f0i = f1j = 0), i, j = 1..4, in row-major order."""
    return [ProjLine.from_forms(HYPERPLANES[i], HYPERPLANES[4 + j], f"l{i + 1}{j + 1}")
            for i in range(4) for j in range(4)]


def lines_on_schur(G: FiniteGroup) -> dict:
    """The 16 lines l_ij together with the orbit of (x-z = y-w = 0) under G."""
    x, y, z, w = variables("x y z w")
    sixteen = schur_lines_lij()
    start = ProjLine.from_forms(x - z, y - w, "m0")
    orbit = {start.key: start}
    frontier = [start]
    gens = G.generators
    while frontier:
        nxt = []
        for L in frontier:
            for g in gens:
                M = L.transform(g)
                if M.key not in orbit:
                    M.name = f"m{len(orbit)}"
                    orbit[M.key] = M
                    nxt.append(M)
        frontier = nxt
    others = sorted(orbit.values(), key=lambda L: int(L.name[1:]))
    if len(others) != 48:
        raise VarietyError(f"orbit of (x-z = y-w = 0) has size {len(others)}")
    lines = sixteen + others
    bad = [L.name for L in lines if not L.lies_on(SCHUR)]
    if bad:
        raise VarietyError(f"lines not on the quartic: {bad}")
    distinct = len({L.key for L in lines})
    if distinct != 64:
        raise VarietyError(f"only {distinct} distinct lines")
    return {"lines": lines, "sixteen": sixteen, "orbit": others, "total": distinct}


def line_incidence(lines: Sequence[ProjLine]) -> list[list[int]]:
    """1 if two lines meet (stacked forms are dependent), diagonal -2."""
    keys = [L.key for L in lines]
    if len(set(keys)) != len(keys):
        raise VarietyError("coincident lines")
    n = len(lines)
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = -2
        for j in range(i + 1, n):
            meet = linalg.det(lines[i].forms + lines[j].forms).is_zero()
            mat[i][j] = mat[j][i] = int(meet)
    return mat


# -- the Sym(4) x O action on (P^1)^4 ------------------------------------------------------------

def pair_group(cap: int = 4096) -> FiniteGroup:
    """Sym(4) x O as pairs (A, sigma) acting by Q_i = A P_{sigma^-1(i)}."""
    ident = PairElement(GroupElement.identity(2, True), Permutation.identity(4))
    gens = [PairElement(alpha().to_projective(), Permutation.identity(4)),
            PairElement(beta().to_projective(), Permutation.identity(4)),
            PairElement(GroupElement.identity(2, True), Permutation.from_cycles(4, [(1, 2, 3, 4)])),
            PairElement(GroupElement.identity(2, True), Permutation.from_cycles(4, [(1, 2)]))]
    return FiniteGroup.generate(gens, cap=cap, identity=ident, name="S4xO")


def apply_pair_mod_p(g: PairElement, pts: np.ndarray, p: int) -> np.ndarray:
    """Image of F_p points (N, 4, 2) under (A, sigma), normalized."""
    A = np.array([[reduce_mod_p_int(x, p) for x in row] for row in g.matrix.matrix], dtype=np.int64)
    inv = g.perm.inverse()
    src = pts[:, [inv(i) for i in range(4)]]
    moved = np.einsum("ab,nkb->nka", A, src) % p
    return fpgeom.normalize_pairs(moved, p)


def apply_pair(g: PairElement, point: Sequence) -> tuple:
    """Exact image of a point given as four pairs."""
    inv = g.perm.inverse()
    return tuple(normalize_p1(g.matrix.apply(point[inv(i)])) for i in range(4))
