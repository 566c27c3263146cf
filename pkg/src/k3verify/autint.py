"""Polarized automorphism groups of the Schur quartic and of S, their intersection and symplectic parts."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import fpgeom, linalg
from .exactfield import CycloElement, multiplicative_order, reduce_mod_p_int
from .groups import (FiniteGroup, GroupElement, PairElement, Permutation,
                     induced_permutation, proportional, structure_certify)
from .models import (DELTA, E2, F_S, G_S, HYPERPLANES, PROJ_COORDS, S_EQUATIONS, SCHUR,
                     aut_h4_generators, intersection_generators, matmul2, scale2,
                     symplectic_generators, t192_generators, t192_to_schur)
from .polyring import FACTORS, MultiPoly, substitute_linear
from .reps import coordinates
from .varieties import (S_SURFACE, SCHUR_SURFACE, line_incidence, octahedral_group, pair_group,
                        points_over_Fp, schur_lines_lij)


class AutError(RuntimeError):
    pass


PRINTED_PERMUTATIONS = {
    "(gamma 0; 0 E)": Permutation.from_cycles(8, [(2, 4, 3)]),
    "(delta 0; 0 E)": Permutation.from_cycles(8, [(1, 2), (3, 4)]),
    "(0 E; E 0)": Permutation.from_cycles(8, [(1, 5), (2, 6), (3, 8), (4, 7)]),
    "(iE 0; 0 E)": Permutation.identity(8),
}
GENERATOR_NAMES = list(PRINTED_PERMUTATIONS)
PARTITION = [{0, 4}, {1, 5}, {2, 6}, {3, 7}]


# -- the order-1152 group ---------------------------------------------------------------------

@lru_cache(maxsize=4)
def build_aut_h4(cap: int = 4096) -> FiniteGroup:
    G = FiniteGroup.generate(aut_h4_generators(), cap=cap, name="Aut(S_Sch,h4)")
    return G


def aut_h4_report(G: FiniteGroup | None = None) -> dict:
    G = G or build_aut_h4()
    K = t192_to_schur()
    Kinv = K.inverse()
    members = {}
    for name, g in t192_generators().items():
        h = GroupElement(linalg.matmul(linalg.matmul(K.matrix, g.matrix), Kinv.matrix), projective=True)
        members[name] = h in G
    d2 = matmul2(DELTA, DELTA)
    delta_sq_scalar = d2 == scale2(d2[0][0], E2)
    return {"order": len(G), "order_ok": len(G) == 1152,
            "t192_generators_conjugated_in_group": members,
            "delta_squared": str(d2[0][0]), "delta_projective_order_2": delta_sq_scalar,
            "preserves_quartic": all(proportional(pullback(SCHUR, g), SCHUR) is not None for g in G.generators)}


def pullback(F: MultiPoly, g: GroupElement, names: Sequence[str] = PROJ_COORDS) -> MultiPoly:
    asg = {n: sum((MultiPoly.var(m) * c for m, c in zip(names, row) if not c.is_zero()), MultiPoly())
           for n, row in zip(names, g.matrix)}
    return substitute_linear(F, asg)


# -- hyperplane permutations -------------------------------------------------------------------

def permutation_homomorphism(G: FiniteGroup | None = None) -> dict:
    """Images of the generators in Sym(8), the image of every element, and the kernel."""
    G = G or build_aut_h4()
    gens = [induced_permutation(g, HYPERPLANES) for g in G.generators]
    images = [Permutation.identity(8)] * len(G)
    for i, word in enumerate(G.words):
        p = Permutation.identity(8)
        for k in word:
            p = p * gens[k]
        images[i] = p
    kernel = [i for i, p in enumerate(images) if p == Permutation.identity(8)]
    printed = {name: (str(gens[k]), gens[k] == PRINTED_PERMUTATIONS[name])
               for k, name in enumerate(GENERATOR_NAMES)}
    return {"generators": printed, "all_match": all(ok for _, ok in printed.values()),
            "images": images, "kernel": kernel, "image_order": len(set(images))}


def preserves_partition(p: Permutation) -> bool:
    return all({p(i) for i in block} in PARTITION for block in PARTITION)


def partition_stabilizer(G: FiniteGroup | None = None, hom: dict | None = None) -> dict:
    G = G or build_aut_h4()
    hom = hom or permutation_homomorphism(G)
    stab = [i for i, p in enumerate(hom["images"]) if preserves_partition(p)]
    printed = [G.idx(g) for g in intersection_generators()]
    generated = G.closure(printed)
    missing = sorted(set(stab) - set(generated))
    extra = sorted(set(generated) - set(stab))
    H = FiniteGroup.generate(intersection_generators(), name="intersection")
    cert = structure_certify(H, "C4:S4")
    return {"order": len(stab), "members": stab, "equals_printed_closure": not missing and not extra,
            "witness_missing": missing[:1], "witness_extra": extra[:1], "certificate": cert,
            "group": H}


# -- symplectic scalars ------------------------------------------------------------------------

def symplectic_scalar_P3(g: GroupElement, F: MultiPoly = SCHUR, check: bool = True) -> CycloElement:
    """det(M)/lambda where F(M x) = lambda F(x)."""
    if check:
        lam = proportional(pullback(F, g), F)
        if lam is None:
            raise AutError("the quartic is not preserved up to scalar")
    else:
        lam = _scalar_by_evaluation(F, g)
    return g.det() / lam


def _scalar_by_evaluation(F: MultiPoly, g: GroupElement) -> CycloElement:
    """lambda from one point with F != 0; valid once g is known to preserve F."""
    for pt in itertools.product((0, 1, 2), repeat=4):
        val = F.evaluate(dict(zip(PROJ_COORDS, pt)))
        if val != 0:
            img = g.apply(pt)
            return F.evaluate(dict(zip(PROJ_COORDS, img))) / val
    raise AutError("no point with F != 0 found")


def pair_pullback(f: MultiPoly, g: PairElement) -> MultiPoly:
    """f(g X) with (gX)_i = A X_{sigma^-1(i)}."""
    A = g.matrix.matrix
    inv = g.perm.inverse()
    asg = {}
    for i, (a, b) in enumerate(FACTORS):
        sa, sb = FACTORS[inv(i)]
        va, vb = MultiPoly.var(sa), MultiPoly.var(sb)
        asg[a] = va * A[0][0] + vb * A[0][1]
        asg[b] = va * A[1][0] + vb * A[1][1]
    return substitute_linear(f, asg)


def span_matrix(g: PairElement) -> list[list[CycloElement]]:
    """N with (f, g)(gX) = N (f, g)(X) for f = hom(sigma4+1), g = hom(sigma2)."""
    basis = [coordinates(e) for e in S_EQUATIONS]
    rows = []
    for e in S_EQUATIONS:
        c = linalg.solve_in_span(coordinates(pair_pullback(e, g)), basis)
        if c is None:
            raise AutError("the pencil <f, g> is not preserved")
        rows.append(c)
    return rows


def symplectic_scalar_P1x4(g: PairElement) -> CycloElement:
    """det(A)^4 sgn(sigma) / det(N)."""
    N = span_matrix(g)
    return g.matrix.det() ** 4 * g.perm.sign() / linalg.det(N)


# -- F_p cross-validation -----------------------------------------------------------------------

def _inv(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


@lru_cache(maxsize=8)
def _surface_points(name: str, p: int) -> np.ndarray:
    return points_over_Fp(S_SURFACE if name == "S" else SCHUR_SURFACE, p)


def fp_scalar_P3(g: GroupElement, p: int, samples: int = 12, F: MultiPoly = SCHUR, seed: int = 0) -> list[int]:
    """Chart ratio J * F_w(P) / F_w(Q) in the chart x = 1, at sampled F_p points."""
    pts = _surface_points("Schur", p) if F is SCHUR else fpgeom.points_on_quartic(F, p)
    M = np.array([[reduce_mod_p_int(c, p) for c in row] for row in g.matrix], dtype=np.int64)
    grads = [F.diff(n) for n in PROJ_COORDS]
    rng = np.random.default_rng(seed)
    out = []
    for k in rng.permutation(len(pts)):
        P = pts[k]
        if P[0] == 0:
            continue
        Q = M @ P % p
        if Q[0] == 0:
            continue
        Qn = Q * _inv(Q[0], p) % p
        gp = [int(fpgeom.eval_poly_vec(d, {n: [P[i]] for i, n in enumerate(PROJ_COORDS)}, p)[0]) for d in grads]
        gq = [int(fpgeom.eval_poly_vec(d, {n: [Qn[i]] for i, n in enumerate(PROJ_COORDS)}, p)[0]) for d in grads]
        if gp[3] == 0 or gq[3] == 0:
            continue
        # tangent vectors in (y, z, w) at P, lifted to homogeneous (0, ., ., .)
        e1 = np.array([0, 1, 0, -gp[1] * _inv(gp[3], p) % p])
        e2 = np.array([0, 0, 1, -gp[2] * _inv(gp[3], p) % p])
        q0inv = _inv(Q[0], p)
        jac = []
        for e in (e1, e2):
            dQ = M @ e % p
            # d(Q_i / Q_0) = (dQ_i Q_0 - Q_i dQ_0) / Q_0^2, for i = y, z
            jac.append([(dQ[i] * Q[0] - Q[i] * dQ[0]) * q0inv * q0inv % p for i in (1, 2)])
        J = (jac[0][0] * jac[1][1] - jac[1][0] * jac[0][1]) % p
        out.append(int(J * gp[3] * _inv(gq[3], p) % p))
        if len(out) == samples:
            break
    return out


def fp_scalar_P1x4(g: PairElement, p: int, samples: int = 12, seed: int = 0) -> list[int]:
    """Chart ratio for omega = ds ^ dt / (f_u g_v - f_v g_u) in the all-affine chart."""
    pts = _surface_points("S", p)
    A = [[reduce_mod_p_int(c, p) for c in row] for row in g.matrix.matrix]
    inv = g.perm.inverse()
    aff = [F_S, G_S]
    partials = [[f.diff(n) for n in "stuv"] for f in aff]

    def jac_uv(x):
        pt = {n: [x[i]] for i, n in enumerate("stuv")}
        d = [[int(fpgeom.eval_poly_vec(q, pt, p)[0]) if not q.is_zero() else 0 for q in row] for row in partials]
        return d

    rng = np.random.default_rng(seed)
    out = []
    for k in rng.permutation(len(pts)):
        P = pts[k]
        if np.any(P[:, 1] == 0):
            continue
        x = [int(c[0]) for c in P]
        src = [x[inv(i)] for i in range(4)]
        dens = [(A[1][0] * s + A[1][1]) % p for s in src]
        if any(d == 0 for d in dens):
            continue
        y = [(A[0][0] * s + A[0][1]) * _inv(d, p) % p for s, d in zip(src, dens)]
        dP, dQ = jac_uv(x), jac_uv(y)
        jp = (dP[0][2] * dP[1][3] - dP[0][3] * dP[1][2]) % p
        jq = (dQ[0][2] * dQ[1][3] - dQ[0][3] * dQ[1][2]) % p
        if jp == 0 or jq == 0:
            continue
        # (u, v) as functions of (s, t): [f_u f_v; g_u g_v] d(u,v) = -[f_s f_t; g_s g_t] d(s,t)
        det_inv = _inv(jp, p)
        a11, a12, a21, a22 = dP[0][2], dP[0][3], dP[1][2], dP[1][3]
        tangent = []
        for col in (0, 1):
            r1, r2 = -dP[0][col] % p, -dP[1][col] % p
            du = (a22 * r1 - a12 * r2) * det_inv % p
            dv = (-a21 * r1 + a11 * r2) * det_inv % p
            e = [0, 0, du, dv]
            e[col] = 1
            tangent.append(e)
        detA = (A[0][0] * A[1][1] - A[0][1] * A[1][0]) % p
        deriv = [detA * _inv(d * d, p) % p for d in dens]   # Mobius derivative at the source coordinate
        # image coordinates s', t' are factors 0 and 1 of the target
        jac = [[deriv[i] * e[inv(i)] % p for e in tangent] for i in (0, 1)]
        J = (jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]) % p
        out.append(J * jp * _inv(jq, p) % p)
        if len(out) == samples:
            break
    return out


def cross_validate_P3(g: GroupElement, p: int = 73, samples: int = 12, seed: int = 0) -> dict:
    exact = symplectic_scalar_P3(g)
    ratios = fp_scalar_P3(g, p, samples, seed=seed)
    target = reduce_mod_p_int(exact, p)
    return {"exact": str(exact), "mod_p": target, "samples": ratios,
            "agree": len(ratios) >= min(samples, 10) and all(r == target for r in ratios)}


def cross_validate_P1x4(g: PairElement, p: int = 73, samples: int = 12, seed: int = 0) -> dict:
    exact = symplectic_scalar_P1x4(g)
    ratios = fp_scalar_P1x4(g, p, samples, seed=seed)
    target = reduce_mod_p_int(exact, p)
    return {"exact": str(exact), "mod_p": target, "samples": ratios,
            "agree": len(ratios) >= min(samples, 10) and all(r == target for r in ratios)}


# -- Sym(4) x O ----------------------------------------------------------------------------------

@lru_cache(maxsize=2)
def build_pair_group(cap: int = 4096) -> FiniteGroup:
    return pair_group(cap)


def octahedral_sign(G: FiniteGroup | None = None) -> dict[GroupElement, int]:
    """Sign of the image of each element of O under an explicit isomorphism O -> Sym(4)."""
    O = octahedral_group()
    cert = structure_certify(O, "S4")
    iso = cert["isomorphism"]
    signs = {}
    for k, perm in iso.items():
        cycles = Permutation.identity(4)
        # re-parse the printed cycle notation
        if perm != "id":
            groups = [tuple(int(c) for c in cyc.split(",")) for cyc in perm.strip("()").split(")(")]
            cycles = Permutation.from_cycles(4, groups)
        signs[O.elements[int(k)]] = cycles.sign()
    return signs


def symplectic_kernel_P1x4(P: FiniteGroup | None = None) -> dict:
    P = P or build_pair_group()
    signs = octahedral_sign()
    scalars = {}
    kernel, predicted = [], []
    for i, g in enumerate(P.elements):
        c = symplectic_scalar_P1x4(g)
        scalars[i] = c
        if c == 1:
            kernel.append(i)
        if g.perm.sign() == signs[g.matrix]:
            predicted.append(i)
    values = set(scalars.values())
    return {"order": len(P), "kernel_order": len(kernel), "kernel_is_equal_sign": kernel == predicted,
            "scalar_values": sorted(str(v) for v in values),
            "quotient_cyclic_order": len(values) if all(multiplicative_order(v) for v in values) else None,
            "kernel": kernel, "scalars": scalars}


# -- intersection of the two groups -----------------------------------------------------------------------

def intersection_report(G: FiniteGroup | None = None) -> dict:
    G = G or build_aut_h4()
    hom = permutation_homomorphism(G)
    stab = partition_stabilizer(G, hom)
    H = stab["group"]
    symp = [i for i, g in enumerate(H.elements) if symplectic_scalar_P3(g, check=False) == 1]
    printed = [H.idx(g) for g in symplectic_generators()]
    generated = H.closure(printed)
    Hs = FiniteGroup.generate(symplectic_generators(), name="symplectic")
    cert = structure_certify(Hs, "C2xS4")
    checked = all(symplectic_scalar_P3(g) == 1 for g in symplectic_generators())
    return {"aut_order": len(G), "generator_permutations": hom["generators"],
            "permutations_match": hom["all_match"],
            "intersection_order": stab["order"], "intersection_equals_printed": stab["equals_printed_closure"],
            "intersection_certificate": {k: v for k, v in stab["certificate"].items() if k in ("claim", "order")},
            "symplectic_order": len(symp), "symplectic_equals_printed": sorted(symp) == generated,
            "symplectic_generators_checked": checked,
            "symplectic_certificate": {k: v for k, v in cert.items() if k in ("claim", "order")},
            "index": len(H) // max(len(symp), 1),
            "holds": (len(G) == 1152 and hom["all_match"] and stab["order"] == 96
                      and stab["equals_printed_closure"] and len(symp) == 48
                      and sorted(symp) == generated and checked)}


# -- lines and the h24 stabilizer ---------------------------------------------------------------------

def diagonal_line_stabilizer(G: FiniteGroup | None = None) -> dict:
    G = G or build_aut_h4()
    lines = schur_lines_lij()
    inc = line_incidence(lines)
    l11 = 0
    off = [k for k in range(16) if k // 4 != k % 4]
    with_c = sum(inc[l11][k] for k in off)
    rest = [k for k in range(16) if k != l11]
    best = max(-2 + sum(inc[l11][k] for k in X) for X in itertools.combinations(rest, 11))
    keys = {L.key: k for k, L in enumerate(lines)}
    diagonal = [lines[5 * i] for i in range(4)]
    diag_keys = {L.key for L in diagonal}
    stabilizers = []
    for i, g in enumerate(G.elements):
        moved = {L.transform(g).key for L in diagonal}
        if moved == diag_keys:
            stabilizers.append(i)
    stab = partition_stabilizer(G)["members"]
    swap = G.generators[2]
    images = {}
    for k, L in enumerate(lines):
        j = keys.get(L.transform(swap).key)
        images[L.name] = lines[j].name if j is not None else None
    degrees = [sum(r) + 2 for r in inc]
    return {"l11_dot_C": with_c, "subset_bound": best, "bound_below": best < with_c,
            "stabilizer_order": len(stabilizers), "stabilizer_equals_intersection": stabilizers == sorted(stab),
            "swap_images": images, "incidence_degrees": degrees,
            "holds": with_c == 6 and best == 4 and stabilizers == sorted(stab)}


def scalar_table(G: FiniteGroup | None = None) -> dict:
    G = G or build_aut_h4()
    return {name: str(symplectic_scalar_P3(g)) for name, g in zip(GENERATOR_NAMES, G.generators)}
