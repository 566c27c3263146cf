"""Named verification checks and the `verify` command line."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import autint, exactfield, groups, lattices, maps, polyring, reps, varieties
from .exactfield import CycloElement

REPORT_DIR_ENV = "K3VERIFY_REPORT_DIR"
DEFAULT_PRIMES = (73, 97)
STATUSES = ("pass", "fail", "undetermined")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    primes: tuple[int, ...] = DEFAULT_PRIMES
    closure_cap: int = 4096
    seed: int = 0


@dataclass(frozen=True)
class CheckDescriptor:
    name: str
    module: str
    topic: str
    runtime: str            # fast | enumerative
    func: Callable[[Config], tuple[str, dict]] = field(repr=False, compare=False)


class Undetermined(Exception):
    pass


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# -- check bodies -------------------------------------------------------------------------------

def _field_relations(cfg: Config):
    out = {}
    for name in exactfield.constant_names():
        c = exactfield.named_constant(name)
        rel = exactfield.constant_relation(name)
        out[name] = exactfield.eval_univariate(rel, c).is_zero()
    z = exactfield.ZETA
    out["zeta^8 - zeta^4 + 1"] = (z ** 8 - z ** 4 + 1).is_zero()
    out["zeta has order 24"] = exactfield.multiplicative_order(z) == 24
    for p in cfg.primes:
        r = exactfield.smallest_root(p)
        out[f"root mod {p}"] = (pow(r, 8, p) - pow(r, 4, p) + 1) % p == 0
    return _status(all(out.values())), {"relations": out}


def _bo_table(cfg: Config):
    G = reps.bo_group()
    table = groups.binary_octahedral_table()
    classes = G.conjugacy_classes()
    sizes = sorted(c["size"] for c in classes)
    match = reps.bo_class_match()
    alpha_col = match.column_of(G, G.idx(G.generators[0]), table)
    beta_col = match.column_of(G, G.idx(G.generators[1]), table)
    ok = len(G) == 48 and len(classes) == 8 and sizes == [1, 1, 6, 6, 6, 8, 8, 12]
    return _status(ok), {"order": len(G), "classes": len(classes), "sizes": sizes,
                         "orthogonality": True, "alpha_class": alpha_col, "beta_class": beta_col,
                         "printed_beta_label": "4B", "beta_label_agrees": beta_col == "4B",
                         "consistent_bijections": match.alternatives}


def _s4_table(cfg: Config):
    G = reps.s4_group()
    table = groups.symmetric4_table()
    sizes = sorted(c["size"] for c in G.conjugacy_classes())
    return _status(len(G) == 24 and sizes == sorted(table.sizes)), {"order": len(G), "sizes": sizes}


def _generator_formulas(cfg: Config):
    res = reps.verify_generator_formulas()
    consistent = reps.printed_beta_is_consistent()
    # the printed beta*sigma2 image is self-inconsistent; everything else must hold literally
    ok = res["mismatches"] in ([], ["beta*sigma2"]) and (res["all_hold"] or not consistent)
    return _status(ok), {"mismatches": res["mismatches"], "printed_beta_consistent": consistent,
                         "formulas": res["formulas"]}


def _decomposition_16(cfg: Config):
    res = reps.enumerate_2dim_subreps()
    mult = {k: v for k, v in res["multiplicities"].items() if v}
    total = sum(d * m for _, _, d, m in res["constituents"])
    ok = total == 16 and all(isinstance(v, int) and v >= 0 for v in res["multiplicities"].values())
    return _status(ok), {"nonzero_multiplicities": mult, "total_dimension": total,
                         "constituents": res["constituents"], "certificate": res["certificate"]}


def _two_dim_subreps(cfg: Config):
    res = reps.enumerate_2dim_subreps()
    ok = res["count"] == 2 and all(res["matches"].values()) and res["route_agreement"]
    return _status(ok), {k: res[k] for k in ("count", "matches", "route_agreement", "certificate")}


def _w_splitting(cfg: Config):
    res = reps.decompose_W()
    return _status(res["dims"] == (2, 3)), res


def _minor_identities(cfg: Config):
    res = varieties.jacobian_minor_identities()
    return _status(res["all_hold"]), res


def _t_singular_symbolic(cfg: Config):
    res = varieties.verify_T_singular()
    return _status(res["holds"]), res


def _s_smooth(cfg: Config):
    out = {}
    for p in cfg.primes:
        sing = varieties.smooth_over_Fp(varieties.S_SURFACE, p)
        out[str(p)] = {"points": len(varieties.points_over_Fp(varieties.S_SURFACE, p)),
                       "singular": [pt.label() for pt in sing]}
    return _status(all(not v["singular"] for v in out.values())), out


def _t_singular_diagonal(cfg: Config):
    out = {}
    ok = True
    for p in cfg.primes:
        sing = varieties.smooth_over_Fp(varieties.T_SURFACE, p)
        diag = varieties.diagonal_points(p)
        found = sorted(pt.label() for pt in sing)
        ok &= found == sorted(pt.label() for pt in diag)
        out[str(p)] = {"singular_count": len(found), "diagonal_count": len(diag), "singular": found}
    return _status(ok), out


def _phi_pullbacks(cfg: Config):
    res = maps.verify_phi_into_S()
    return _status(res["holds"]), res


def _cross_products(cfg: Config):
    res = maps.symbolic_inverse_residuals()
    return _status(res["holds"]), res


def _round_trips(cfg: Config):
    out = {str(p): maps.round_trips(p) for p in cfg.primes}
    return _status(all(v["holds"] for v in out.values())), out


def _m_isomorphism(cfg: Config):
    res = maps.verify_M_isomorphism()
    return _status(res["holds"]), res


def _quotient_identity(cfg: Config):
    res = maps.verify_quotient_identity()
    return _status(res["holds"]), res


def _equivariance(cfg: Config):
    P = autint.build_pair_group(cfg.closure_cap)
    G = autint.build_aut_h4(cfg.closure_cap)
    res = maps.equivariance_search(P, G, cfg.primes[0], seed=cfg.seed)
    imgs = set(res["images"].values())
    closed = all(P.mul(a, b) in res["images"]
                 for a in res["matched_pairs"] for b in res["matched_pairs"][:8])
    ok = res["count"] == len(imgs) and res["count"] > 0 and closed
    return _status(ok), {"matched": res["count"], "distinct_images": len(imgs), "closed_under_products": closed}


def _line_census(cfg: Config):
    G = autint.build_aut_h4(cfg.closure_cap)
    res = varieties.lines_on_schur(G)
    inc = varieties.line_incidence(res["sixteen"])
    meets = [sum(v for j, v in enumerate(r) if j != i) for i, r in enumerate(inc)]
    selfint = {r[i] for i, r in enumerate(inc)}
    ok = res["total"] == 64 and all(m == 6 for m in meets) and selfint == {-2}
    return _status(ok), {"total": res["total"], "sixteen": len(res["sixteen"]), "orbit": len(res["orbit"]),
                         "meets_among_sixteen": meets, "incidence": inc}


def _line_bound(cfg: Config):
    res = autint.diagonal_line_stabilizer(autint.build_aut_h4(cfg.closure_cap))
    return _status(res["holds"]), res


def _fibration(cfg: Config):
    out = {}
    ok = True
    for p in cfg.primes:
        r = varieties.fibration_report(p)
        ok &= (r["values_match"] and r["all_type_IV"] and r["critical_values_match"]
               and r["smooth_fibers_within_hasse"] and r["euler_tally"] == 24)
        out[str(p)] = r
    return _status(ok), out


def _fiber_intersections(cfg: Config):
    vals = {
        "p1*(0).C34": varieties.fiber_curve_intersection(1, varieties.ZERO_PT, varieties.component_curve(3, 4)),
        "p1*(0).C12": varieties.fiber_curve_intersection(1, varieties.ZERO_PT, varieties.component_curve(1, 2)),
        "p2*(inf).C34": varieties.fiber_curve_intersection(2, varieties.INF_PT, varieties.component_curve(3, 4)),
    }
    ok = vals["p1*(0).C34"] == 1 and vals["p1*(0).C12"] == "contained" and vals["p2*(inf).C34"] == 1
    return _status(ok), vals


def _intersection_h4(cfg: Config):
    H = (1, 1, 1, 1)
    n = polyring.intersection_number([H, H, H, H])
    return _status(n == 24), {"H^4": n}


def _lattice_twist(cfg: Config):
    L = lattices.BinaryQuadLattice.from_gram([[4, 2], [2, 4]])
    t = lattices.gauss_reduce(lattices.twist(L, 2))
    return _status(t.gram == [[8, 4], [4, 8]]), {"reduced": t.gram}


def _shioda_mitani(cfg: Config):
    L = lattices.BinaryQuadLattice.from_gram([[4, 2], [2, 4]])
    tau, tau2 = lattices.shioda_mitani(L)
    om = lattices.CMPoint.of(exactfield.OMEGA)
    r3 = lattices.CMPoint.of(lattices.sqrt_negative(-3))
    a, wa = lattices.lattice_homothety_equal(tau, om)
    b, wb = lattices.lattice_homothety_equal(tau2, r3)
    details = {"tau": str(tau.tau), "tau_prime": str(tau2.tau), "to_omega": [a, wa], "to_sqrt-3": [b, wb]}
    if "undetermined" in (a, b):
        return "undetermined", details
    return _status(a is True and b is True), details


def _branch_sets():
    z6, z12, s3 = (exactfield.named_constant(n) for n in ("zeta6", "zeta12", "sqrt3"))
    om = exactfield.OMEGA
    return {
        "E": (1, om, om * om, "inf"),
        "E1": (0, 1, z6, "inf"),
        "E'": (-1, (1 + 2 * s3) / 2, (1 - 2 * s3) / 2, "inf"),
        "E2": (1, -1, z12, -z12),
    }


def _j_invariants(cfg: Config):
    E = lattices.EllipticCurveW
    z6 = exactfield.named_constant("zeta6")
    vals = {
        "weierstrass (0, 1)": lattices.j_invariant(E("weierstrass", (0, 1))),
        "weierstrass (15, 11)": lattices.j_invariant(E("weierstrass", (15, 11))),
        "quartic (x^2-1)(x^2-zeta6)": lattices.j_invariant(E("quartic", (1, 0, -1 - z6, 0, z6))),
    }
    for name, pts in _branch_sets().items():
        vals[f"branch {name}"] = lattices.j_invariant(E("branch", pts))
    expected = {"weierstrass (0, 1)": 0, "weierstrass (15, 11)": 54000, "quartic (x^2-1)(x^2-zeta6)": 54000,
                "branch E": 0, "branch E1": 0, "branch E'": 54000, "branch E2": 54000}
    ok = all(vals[k] == v for k, v in expected.items())
    return _status(ok), {"values": {k: str(v) for k, v in vals.items()}, "expected": expected}


def _cross_ratio(cfg: Config):
    sets = _branch_sets()
    a = lattices.cross_ratio_match(sets["E"], sets["E1"])
    b = lattices.cross_ratio_match(sets["E'"], sets["E2"])
    return _status(a and b), {"E vs E1": a, "E' vs E2": b}


def _aut_order(cfg: Config):
    res = autint.aut_h4_report(autint.build_aut_h4(cfg.closure_cap))
    ok = res["order_ok"] and all(res["t192_generators_conjugated_in_group"].values()) and res["preserves_quartic"]
    return _status(ok), res


def _hyperplane_perms(cfg: Config):
    res = autint.permutation_homomorphism(autint.build_aut_h4(cfg.closure_cap))
    return _status(res["all_match"]), {"generators": res["generators"], "image_order": res["image_order"],
                                       "kernel_order": len(res["kernel"])}


def _intersection_report(cfg: Config):
    res = autint.intersection_report(autint.build_aut_h4(cfg.closure_cap))
    return _status(res["holds"]), res


def _symplectic_p1x4(cfg: Config):
    res = autint.symplectic_kernel_P1x4(autint.build_pair_group(cfg.closure_cap))
    ok = res["order"] == 576 and res["kernel_order"] == 288 and res["kernel_is_equal_sign"] \
        and res["quotient_cyclic_order"] == 2
    return _status(ok), {k: v for k, v in res.items() if k not in ("kernel", "scalars")}


def _scalar_crosscheck(cfg: Config):
    out = {}
    ok = True
    G = autint.build_aut_h4(cfg.closure_cap)
    P = autint.build_pair_group(cfg.closure_cap)
    for p in cfg.primes:
        rows = [autint.cross_validate_P3(g, p, seed=cfg.seed) for g in G.generators]
        rows += [autint.cross_validate_P1x4(g, p, seed=cfg.seed) for g in P.generators]
        ok &= all(r["agree"] for r in rows)
        out[str(p)] = rows
    return _status(ok), out


_CHECKS = [
    ("field-relations", "exactfield", "defining relations of the named roots of unity", "fast", _field_relations),
    ("bo-character-table", "groups", "binary octahedral group, classes and character table", "fast", _bo_table),
    ("s4-character-table", "groups", "symmetric group on four letters", "fast", _s4_table),
    ("rep-generator-formulas", "reps", "generator images of the elementary symmetric sections", "fast",
     _generator_formulas),
    ("rep-decomposition-16", "reps", "decomposition of the sixteen-dimensional section space", "fast",
     _decomposition_16),
    ("rep-two-dim-subreps", "reps", "the two-dimensional invariant subspaces", "fast", _two_dim_subreps),
    ("rep-w-splitting", "reps", "splitting of the symmetric five-dimensional subspace", "fast", _w_splitting),
    ("t-jacobian-minors", "varieties", "minor identities along the diagonal of T", "fast", _minor_identities),
    ("t-singular-symbolic", "varieties", "diagonal points are singular on T", "fast", _t_singular_symbolic),
    ("s-smooth-mod-p", "varieties", "S has no singular F_p points", "enumerative", _s_smooth),
    ("t-singular-diagonal-mod-p", "varieties", "singular F_p points of T are the diagonal", "enumerative",
     _t_singular_diagonal),
    ("phi-pullbacks", "maps", "pullbacks of the defining equations of S", "fast", _phi_pullbacks),
    ("psi-phi-cross-products", "maps", "the composition psi o phi is the identity", "fast", _cross_products),
    ("birational-round-trips", "maps", "round trips on F_p points", "enumerative", _round_trips),
    ("t192-isomorphism", "maps", "diag(M, zeta8 M) carries one quartic to the other", "fast", _m_isomorphism),
    ("quotient-identity", "maps", "quotient identity and fixed points of the involution", "fast",
     _quotient_identity),
    ("equivariance-search", "maps", "pairs in S4 x O acting linearly on the quartic", "enumerative",
     _equivariance),
    ("schur-line-census", "varieties", "the 64 lines and their incidences", "fast", _line_census),
    ("line-incidence-bound", "autint", "intersection bound forcing the stabilizer of the diagonal lines", "fast",
     _line_bound),
    ("fibration-singular-fibers", "varieties", "singular fibers of the projection to one factor", "enumerative",
     _fibration),
    ("fiber-curve-intersections", "varieties", "fiber classes against the curves C_ij", "fast",
     _fiber_intersections),
    ("intersection-number-h4", "polyring", "top self-intersection of the polarization", "fast", _intersection_h4),
    ("lattice-twist-reduction", "lattices", "twist and Gauss reduction", "fast", _lattice_twist),
    ("shioda-mitani-homothety", "lattices", "CM points attached to the transcendental lattice", "fast",
     _shioda_mitani),
    ("j-invariants", "lattices", "j-invariants from Weierstrass and branch data", "fast", _j_invariants),
    ("cross-ratio-matches", "lattices", "branch-point sets with equal j-invariant", "fast", _cross_ratio),
    ("aut-group-order", "autint", "the order-1152 automorphism group", "fast", _aut_order),
    ("hyperplane-permutations", "autint", "permutation images of the four generators", "fast",
     _hyperplane_perms),
    ("aut-intersection", "autint", "intersection of the two polarized groups and its symplectic part", "fast",
     _intersection_report),
    ("symplectic-kernel-p1x4", "autint", "symplectic kernel of S4 x O", "fast", _symplectic_p1x4),
    ("symplectic-scalar-crosscheck", "autint", "determinant formula against F_p chart Jacobians", "enumerative",
     _scalar_crosscheck),
]

CATALOG: dict[str, CheckDescriptor] = {n: CheckDescriptor(n, m, t, r, f) for n, m, t, r, f in _CHECKS}


def list_checks() -> list[CheckDescriptor]:
    return [CATALOG[n] for n in sorted(CATALOG)]


# -- running --------------------------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, (CycloElement, Fraction, groups.Permutation)):
        return str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(v) if not isinstance(v, (str, int)) else v for v in obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if hasattr(obj, "name"):
        return str(obj.name)
    return repr(obj)


def _normalize(obj):
    """Round-trip through JSON so reports compare and serialize identically."""
    return json.loads(json.dumps(obj, default=_jsonable, sort_keys=True))


def run_check(name: str, cfg: Config) -> dict:
    d = CATALOG[name]
    start = time.perf_counter()
    try:
        status, details = d.func(cfg)
    except groups.GroupError as exc:
        if "exceeds cap" not in str(exc):
            raise
        status, details = "undetermined", {"reason": str(exc)}
    except Undetermined as exc:
        status, details = "undetermined", {"reason": str(exc)}
    except Exception as exc:                 # a crashing check is reported, not hidden
        status, details = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    if status not in STATUSES:
        raise RuntimeError(f"check {name} returned status {status!r}")
    return {"name": name, "module": d.module, "topic": d.topic, "runtime_class": d.runtime,
            "status": status, "details": _normalize(details),
            "seconds": round(time.perf_counter() - start, 3)}


def validate(names: Sequence[str] | str, cfg: Config) -> list[str]:
    if names == "all" or not names:
        selected = sorted(CATALOG)
    else:
        unknown = [n for n in names if n not in CATALOG]
        if unknown:
            raise ConfigError(f"unknown check: {', '.join(unknown)}")
        selected = sorted(set(names))
    if not cfg.primes:
        raise ConfigError("at least one prime is required")
    for p in cfg.primes:
        try:
            exactfield.smallest_root(p)
        except Exception as exc:
            raise ConfigError(f"unsupported prime {p}: {exc}") from None
        if p > 1024:
            raise ConfigError(f"prime {p} exceeds the enumeration limit 1024")
    if cfg.closure_cap < 1:
        raise ConfigError("closure cap must be positive")
    return selected


def run(names: Sequence[str] | str = "all", cfg: Config | None = None, workers: int = 1) -> dict:
    cfg = cfg or Config()
    selected = validate(names, cfg)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda n: run_check(n, cfg), selected))
    else:
        results = [run_check(n, cfg) for n in selected]
    results.sort(key=lambda r: r["name"])
    overall = "pass" if all(r["status"] == "pass" for r in results) else (
        "fail" if any(r["status"] == "fail" for r in results) else "undetermined")
    return {"config": {"primes": list(cfg.primes), "closure_cap": cfg.closure_cap, "seed": cfg.seed},
            "checks": results, "overall": overall}


def exit_code(report: dict) -> int:
    return 0 if report["overall"] == "pass" else 1


def canonical_json(report: dict, timings: bool = True) -> str:
    if not timings:
        report = {**report, "checks": [{k: v for k, v in r.items() if k != "seconds"} for r in report["checks"]]}
    return json.dumps(report, sort_keys=True, indent=2)


def format_text(report: dict) -> str:
    lines = [f"{r['status']:<13} {r['name']:<30} {r['seconds']:.2f}s" for r in report["checks"]]
    lines.append(f"overall: {report['overall']}")
    return "\n".join(lines)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="k3verify", description="Exact verification checks.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run checks")
    v.add_argument("--check", action="append", default=[], metavar="NAME")
    v.add_argument("--prime", action="append", type=int, default=[], metavar="P")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--closure-cap", type=int, default=4096)
    v.add_argument("--seed", type=int, default=0)
    sub.add_parser("list", help="list checks")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command == "list":
        for d in list_checks():
            print(f"{d.name:<30} {d.module:<11} {d.runtime:<12} {d.topic}")
        return 0
    cfg = Config(tuple(args.prime) or DEFAULT_PRIMES, args.closure_cap, args.seed)
    try:
        if args.workers < 1:
            raise ConfigError("workers must be positive")
        report = run(args.check or "all", cfg, args.workers)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = canonical_json(report)
    print(text if args.format == "json" else format_text(report))
    out_dir = os.environ.get(REPORT_DIR_ENV)
    if out_dir:
        path = Path(out_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / "report.json").write_text(text + "\n")
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
