"""The birational maps between S and the Schur quartic, the T192 isomorphism, and the isogeny quotient."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import fpgeom, linalg
from .exactfield import OMEGA, ONE, ZERO, ZETA6, reduce_mod_p_int
from .groups import FiniteGroup, proportional
from .models import M, S_EQUATIONS, SCHUR, T192, t192_to_schur
from .polyring import FACTORS, MultiPoly, divide_single, variables
from .varieties import S_SURFACE, SCHUR_SURFACE, apply_pair_mod_p, points_over_Fp

x, y, z, w = variables("x y z w")
s0, s1, t0, t1, u0, u1, v0, v1 = variables("s0 s1 t0 t1 u0 u1 v0 v1")


class MapError(RuntimeError):
    pass


@dataclass
class RationalMap:
    source: str
    target: str
    coords: tuple                       # polynomials, or per-factor pairs
    indeterminacy: str
    extra: dict = field(default_factory=dict)

    @property
    def per_factor(self) -> bool:
        return isinstance(self.coords[0], tuple)


def build_phi() -> RationalMap:
    pairs = ((x, -z), (x - y, z - w), (x - OMEGA * y, z - OMEGA ** 2 * w), (x - OMEGA ** 2 * y, z - OMEGA * w))
    return RationalMap("P3", "(P1)^4", pairs, "some pair vanishes jointly")


def build_psi() -> RationalMap:
    """psi with A, B, C, D cleared by t0 u0 v0 (A, B) and t1 u1 v1 (C, D)."""
    A = t1 * u0 * v0 + t0 * u1 * v0 + t0 * u0 * v1
    B = t1 * u0 * v0 + OMEGA ** 2 * t0 * u1 * v0 + OMEGA * t0 * u0 * v1
    C = t0 * u1 * v1 + t1 * u0 * v1 + t1 * u1 * v0
    D = t0 * u1 * v1 + OMEGA * t1 * u0 * v1 + OMEGA ** 2 * t1 * u1 * v0
    coords = (s0 * A * C, s0 * B * C, -s1 * A * C, -s1 * A * D)
    rational = {"A": "t1/t0 + u1/u0 + v1/v0", "B": "t1/t0 + w^2 u1/u0 + w v1/v0",
                "C": "t0/t1 + u0/u1 + v0/v1", "D": "t0/t1 + w u0/u1 + w^2 v0/v1"}
    return RationalMap("(P1)^4", "P3", coords, "all four coordinates vanish",
                       {"cleared": {"A": A, "B": B, "C": C, "D": D}, "rational": rational})


def phi_substitution(phi: RationalMap | None = None) -> dict[str, MultiPoly]:
    phi = phi or build_phi()
    asg = {}
    for (a, b), (f, g) in zip(FACTORS, phi.coords):
        asg[a], asg[b] = f, g
    return asg


def verify_phi_into_S() -> dict:
    asg = phi_substitution()
    f_hom, g_hom = S_EQUATIONS
    pg = g_hom.subs(asg)
    pf = f_hom.subs(asg)
    scalar = proportional(pf, SCHUR)
    return {"sigma2_pullback": str(pg), "sigma2_vanishes": pg.is_zero(),
            "sigma4_pullback": str(pf), "schur_scalar": None if scalar is None else str(scalar),
            "holds": pg.is_zero() and scalar is not None and scalar in (ONE, -ONE)}


def compose_psi_phi() -> tuple[MultiPoly, ...]:
    asg = phi_substitution()
    return tuple(c.subs(asg) for c in build_psi().coords)


def symbolic_inverse_residuals() -> dict:
    P = compose_psi_phi()
    X = (x, y, z, w)
    items = []
    for i, j in itertools.combinations(range(4), 2):
        cross = P[i] * X[j] - P[j] * X[i]
        q, r = divide_single(cross, SCHUR)
        items.append({"pair": f"P{i}*{'xyzw'[j]} - P{j}*{'xyzw'[i]}", "remainder": str(r),
                      "zero": r.is_zero(), "identically_zero": cross.is_zero()})
    return {"cross_products": items, "composition_nonzero": not all(p.is_zero() for p in P),
            "holds": all(i["zero"] for i in items) and not all(p.is_zero() for p in P)}


# -- finite-field round trips ------------------------------------------------------------------

def _phi_mod_p(pts: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """phi on P3 points (N, 4): pairs (N, 4, 2) and a mask of defined points."""
    cols = {n: pts[:, k] for k, n in enumerate("xyzw")}
    pairs = np.stack([np.stack([fpgeom.eval_poly_vec(f, cols, p), fpgeom.eval_poly_vec(g, cols, p)], axis=1)
                      for f, g in build_phi().coords], axis=1)
    defined = np.all(np.any(pairs != 0, axis=2), axis=1)
    return pairs, defined


def _psi_mod_p(pts: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    cols = {}
    for k, (a, b) in enumerate(FACTORS):
        cols[a], cols[b] = pts[:, k, 0], pts[:, k, 1]
    vals = np.stack([fpgeom.eval_poly_vec(c, cols, p) for c in build_psi().coords], axis=1)
    return vals, np.any(vals != 0, axis=1)


def _same_p3(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    ok = np.ones(len(a), dtype=bool)
    for i, j in itertools.combinations(range(4), 2):
        ok &= (a[:, i] * b[:, j] - a[:, j] * b[:, i]) % p == 0
    return ok


def _same_p1x4(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.all((a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]) % p == 0, axis=1)


def round_trips(p: int = 73) -> dict:
    sch = points_over_Fp(SCHUR_SURFACE, p)
    pairs, d1 = _phi_mod_p(sch, p)
    back, d2 = _psi_mod_p(fpgeom.normalize_pairs(pairs[d1], p), p)
    ok_sch = _same_p3(back[d2], sch[d1][d2], p)
    on_s = all(np.all(fpgeom.evaluate_tensor(fpgeom.fp_tensor(e, p), fpgeom.normalize_pairs(pairs[d1], p), p) == 0)
               for e in S_EQUATIONS)

    spts = points_over_Fp(S_SURFACE, p)
    img, e1 = _psi_mod_p(spts, p)
    img_n = fpgeom.normalize_p3(img[e1], p)
    on_sch = bool(np.all(fpgeom.eval_poly_vec(SCHUR, {n: img_n[:, k] for k, n in enumerate("xyzw")}, p) == 0))
    again, e2 = _phi_mod_p(img_n, p)
    ok_s = _same_p1x4(again[e2], spts[e1][e2], p)
    n_sch, n_s = int(ok_sch.sum()), int(ok_s.sum())
    return {"p": p,
            "schur_points": len(sch), "phi_indeterminate": int((~d1).sum()),
            "psi_after_phi_indeterminate": int((~d2).sum()), "schur_round_trip_ok": n_sch,
            "schur_round_trip_fail": int((~ok_sch).sum()),
            "S_points": len(spts), "psi_indeterminate": int((~e1).sum()),
            "phi_after_psi_indeterminate": int((~e2).sum()), "S_round_trip_ok": n_s,
            "S_round_trip_fail": int((~ok_s).sum()),
            "phi_lands_in_S": bool(on_s), "psi_lands_in_schur": on_sch,
            "bijection_counts_equal": n_sch == n_s,
            "holds": bool(on_s and on_sch and ok_sch.all() and ok_s.all() and n_sch == n_s and n_sch > 0)}


def verify_inverse_pair(p: int = 73) -> dict:
    sym = symbolic_inverse_residuals()
    fp = round_trips(p)
    return {"symbolic": sym, "finite_field": fp, "holds": sym["holds"] and fp["holds"]}


# -- the T192 model ---------------------------------------------------------------------------

def verify_M_isomorphism() -> dict:
    K = t192_to_schur()
    asg = {n: sum((MultiPoly.var(m) * c for m, c in zip("xyzw", row)), MultiPoly())
           for n, row in zip("xyzw", K.matrix)}
    pulled = SCHUR.subs(asg)
    lam = proportional(pulled, T192)
    det_m = linalg.det(M)
    # binary quartics: M^-1 carries the roots of x^4 - x y^3 to roots of x^4 - 2 sqrt(-3) x^2 y^2 + y^4
    Minv = linalg.inverse(M)
    qT = T192.subs({"z": 0, "w": 0})
    roots = [(ZERO, ONE), (ONE, ONE), (OMEGA, ONE), (OMEGA ** 2, ONE)]
    images = []
    for r in roots:
        a = Minv[0][0] * r[0] + Minv[0][1] * r[1]
        b = Minv[1][0] * r[0] + Minv[1][1] * r[1]
        images.append((a, b))
    on_qT = [qT.evaluate({"x": a, "y": b}) == 0 for a, b in images]
    distinct = all(
        not (a1 * b2 - a2 * b1).is_zero() for (a1, b1), (a2, b2) in itertools.combinations(images, 2))
    return {"lambda": None if lam is None else str(lam), "proportional": lam is not None,
            "det_M": str(det_m), "det_nonzero": not det_m.is_zero(),
            "roots_mapped": all(on_qT) and distinct,
            "holds": lam is not None and not lam.is_zero() and not det_m.is_zero() and all(on_qT) and distinct}


# -- the isogeny quotient ------------------------------------------------------------------------

def verify_quotient_identity() -> dict:
    X, Y = variables("x y")
    e2 = Y ** 2 - (X ** 2 - 1) * (X ** 2 - ZETA6)
    pulled = (X * Y) ** 2 - X ** 2 * (X ** 2 - 1) * (X ** 2 - ZETA6)
    q, r = divide_single(pulled, e2)
    # tau'(x, y) = (-x, -y); affine fixed points need x = y = 0
    origin_on_e2 = e2.evaluate({"x": 0, "y": 0}) == 0
    f_invariant = ((-X) * (-Y) - X * Y).is_zero() and ((-X) ** 2 - X ** 2).is_zero()
    return {"remainder": str(r), "quotient": str(q), "divisible": r.is_zero(),
            "affine_fixed_points": 1 if origin_on_e2 else 0, "f_tau_invariant": f_invariant,
            "infinity": "unverified",
            "holds": r.is_zero() and q == X ** 2 and not origin_on_e2 and f_invariant}


# -- equivariance ---------------------------------------------------------------------------------

def equivariance_search(pair_group: FiniteGroup, aut_group: FiniteGroup, p: int = 73,
                        samples: int = 40, seed: int = 0) -> dict:
    """For each (A, sigma), look for g' in aut_group with psi(g x) = g' psi(x) on sampled F_p points.

    Only pairs acting linearly on the quartic model can succeed, so the expected
    outcome is a matched subgroup rather than a match for every generator.
    """
    spts = points_over_Fp(S_SURFACE, p)
    vals, ok = _psi_mod_p(spts, p)
    rng = np.random.default_rng(seed)
    choice = rng.choice(np.nonzero(ok)[0], size=min(samples, int(ok.sum())), replace=False)
    base = spts[np.sort(choice)]
    psi_base = fpgeom.normalize_p3(_psi_mod_p(base, p)[0], p)
    mats = np.array([[[reduce_mod_p_int(c, p) for c in row] for row in g.matrix] for g in aut_group.elements],
                    dtype=np.int64)
    imgs = np.einsum("gab,nb->gna", mats, psi_base) % p
    imgs = fpgeom.normalize_p3(imgs.reshape(-1, 4), p).reshape(len(mats), len(base), 4)
    matches = {}
    for i, g in enumerate(pair_group.elements):
        moved = apply_pair_mod_p(g, base, p)
        v, defined = _psi_mod_p(moved, p)
        if defined.sum() < 10:
            continue
        target = fpgeom.normalize_p3(v[defined], p)
        hit = np.all(np.all(imgs[:, defined] == target[None], axis=2), axis=1)
        found = np.nonzero(hit)[0]
        if len(found):
            matches[i] = int(found[0])
    return {"matched_pairs": sorted(matches), "images": matches, "count": len(matches)}
