"""The 16-dimensional representation of BO x Sym(4) on multidegree-(1,1,1,1) sections.

Convention: a 2x2 matrix A acts on a section f by substitution of every factor
pair (s0, s1) -> A (s0, s1), a permutation sigma by sending the variables of
factor k to those of factor sigma(k).  Substitution is an anti-homomorphism in
A, so the honest representation uses A^-1; characters below are computed that
way.  On degree-4 forms the scalar -E acts trivially.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .exactfield import ONE, ZERO, CycloElement, reduce_mod_p_int
from .groups import (CharacterTable, FiniteGroup, GroupElement, Permutation,
                     binary_octahedral_table, match_classes_to_table, s4_class_index,
                     symmetric4_table)
from .models import ALPHA, BETA, F1, F2, F_S, G_S, SIGMA, alpha, beta
from .polyring import (FACTORS, MultiPoly, dehomogenize, mono_from_dict, multihomogenize,
                       substitute_linear)


class RepError(RuntimeError):
    pass


# -- section space ------------------------------------------------------------------

@lru_cache(maxsize=None)
def section_basis() -> tuple[MultiPoly, ...]:
    """The 16 monomials, ordered by the bit pattern (factor k uses its second variable iff bit k)."""
    basis = []
    for bits in itertools.product((0, 1), repeat=4):
        mono = mono_from_dict({FACTORS[k][b]: 1 for k, b in enumerate(bits)})
        basis.append(MultiPoly._trusted({mono: ONE}))
    return tuple(basis)


@lru_cache(maxsize=None)
def _basis_index() -> dict:
    return {next(iter(b.terms)): i for i, b in enumerate(section_basis())}


def coordinates(f: MultiPoly) -> list[CycloElement]:
    index = _basis_index()
    vec = [ZERO] * 16
    for m, c in f.terms.items():
        if m not in index:
            raise RepError(f"{f} is not a multidegree-(1,1,1,1) form")
        vec[index[m]] = c
    return vec


def from_coordinates(vec: Sequence) -> MultiPoly:
    out = MultiPoly()
    for c, b in zip(vec, section_basis()):
        if not CycloElement.coerce(c).is_zero():
            out = out + b * c
    return out


def as_section(f: MultiPoly) -> MultiPoly:
    """Accept either a section or its dehomogenization in s, t, u, v."""
    if any(v in f.variables() for v in ("s", "t", "u", "v")) or f.is_constant():
        return multihomogenize(f)
    return f


# -- substitution matrices ----------------------------------------------------------

def substitute_matrix(f: MultiPoly, A: Sequence[Sequence]) -> MultiPoly:
    asg = {}
    for a, b in FACTORS:
        va, vb = MultiPoly.var(a), MultiPoly.var(b)
        asg[a] = va * A[0][0] + vb * A[0][1]
        asg[b] = va * A[1][0] + vb * A[1][1]
    return substitute_linear(f, asg)


def permute_factors(f: MultiPoly, sigma: Permutation) -> MultiPoly:
    asg = {}
    for k, (a, b) in enumerate(FACTORS):
        ta, tb = FACTORS[sigma(k)]
        asg[a] = MultiPoly.var(ta)
        asg[b] = MultiPoly.var(tb)
    return f.subs(asg)


def _matrix_of(op) -> list[list[CycloElement]]:
    cols = [coordinates(op(b)) for b in section_basis()]
    return [[cols[j][i] for j in range(16)] for i in range(16)]


@lru_cache(maxsize=None)
def _substitution_matrix(A: GroupElement) -> tuple:
    return tuple(map(tuple, _matrix_of(lambda f: substitute_matrix(f, A.matrix))))


def rho(A: GroupElement) -> list[list[CycloElement]]:
    """Matrix of the honest (homomorphic) action of A: substitution by A^-1."""
    return [list(r) for r in _substitution_matrix(A.inverse())]


@lru_cache(maxsize=None)
def _perm_matrix(sigma: Permutation) -> tuple:
    return tuple(map(tuple, _matrix_of(lambda f: permute_factors(f, sigma))))


def pi(sigma: Permutation) -> list[list[CycloElement]]:
    return [list(r) for r in _perm_matrix(sigma)]


@dataclass
class RepAction:
    """16x16 matrices for the generators of BO x Sym(4) in the section basis."""

    generators: dict[str, list[list[CycloElement]]]
    basis: tuple[MultiPoly, ...] = field(default_factory=section_basis)

    def apply(self, name: str, f: MultiPoly) -> MultiPoly:
        vec = coordinates(as_section(f))
        m = self.generators[name]
        return from_coordinates([sum((m[i][j] * vec[j] for j in range(16)), ZERO) for i in range(16)])


TRANSPOSITIONS = {f"({i + 1},{j + 1})": Permutation.from_cycles(4, [(i + 1, j + 1)])
                  for i, j in itertools.combinations(range(4), 2)}


def build_rep_action() -> RepAction:
    """Substitution matrices for alpha, beta and the six transpositions."""
    gens = {"alpha": [list(r) for r in _substitution_matrix(alpha())],
            "beta": [list(r) for r in _substitution_matrix(beta())]}
    for name, sigma in TRANSPOSITIONS.items():
        gens[name] = pi(sigma)
    for name, m in gens.items():
        if linalg.rank(m) != 16:
            raise RepError(f"matrix of {name} is singular")
    return RepAction(gens)


# -- the ten generator formulas --------------------------------------------------------

def _w(c4=0, c3=0, c2=0, c1=0, c0=0) -> MultiPoly:
    return SIGMA[4] * c4 + SIGMA[3] * c3 + SIGMA[2] * c2 + SIGMA[1] * c1 + MultiPoly.const(c0)


_IMAG = CycloElement.zeta_power(6)
_H = CycloElement.from_rational(1) / 2
_Q = CycloElement.from_rational(1) / 4

# (generator, source index, printed image); source index 0 stands for the constant 1
PRINTED_FORMULAS = [
    ("alpha", 4, _w(c4=-1)),
    ("alpha", 3, _w(c3=_IMAG)),
    ("alpha", 2, _w(c2=1)),
    ("alpha", 1, _w(c1=-_IMAG)),
    ("alpha", 0, _w(c0=-1)),
    ("beta", 4, _w(_Q, _Q, _Q, _Q, _Q)),
    ("beta", 3, _w(1, _H, 0, -_H, -1)),
    ("beta", 2, _w(3 * _H, 0, -_H, 3 * _H, 0)),
    ("beta", 1, _w(1, -_H, 0, _H, -1)),
    ("beta", 0, _w(_Q, -_Q, _Q, -_Q, _Q)),
]


def _w_source(k: int) -> MultiPoly:
    return SIGMA[k] if k else MultiPoly.const(1)


def _label(gen: str, k: int) -> str:
    return f"{gen}*{'sigma' + str(k) if k else '1'}"


def verify_generator_formulas(A: RepAction | None = None) -> dict:
    """Compare each printed image with the computed one (dehomogenized)."""
    A = A or build_rep_action()
    items = []
    for gen, k, printed in PRINTED_FORMULAS:
        computed = dehomogenize(A.apply(gen, _w_source(k)))
        diff = computed - printed
        items.append({"formula": _label(gen, k), "printed": str(printed), "computed": str(computed),
                      "holds": diff.is_zero(), "residual": str(diff)})
    return {"formulas": items, "all_hold": all(i["holds"] for i in items),
            "mismatches": [i["formula"] for i in items if not i["holds"]]}


def w_matrix(A: RepAction, gen: str, images: dict[int, MultiPoly] | None = None) -> list[list[CycloElement]]:
    """Matrix of a generator on W = <sigma4, sigma3, sigma2, sigma1, 1> (columns are images)."""
    order = [4, 3, 2, 1, 0]
    basis = [coordinates(multihomogenize(_w_source(k))) for k in order]
    cols = []
    for k in order:
        img = images[k] if images is not None else dehomogenize(A.apply(gen, _w_source(k)))
        coeffs = linalg.solve_in_span(coordinates(multihomogenize(img)), basis)
        if coeffs is None:
            raise RepError(f"image of {_label(gen, k)} leaves W")
        cols.append(coeffs)
    return [[cols[j][i] for j in range(5)] for i in range(5)]


def printed_beta_is_consistent() -> bool:
    """Whether the printed beta-images square to the identity, as beta^2 = -E forces on W."""
    images = {k: f for g, k, f in PRINTED_FORMULAS if g == "beta"}
    B = w_matrix(None, "beta", images)  # type: ignore[arg-type]
    return linalg.matmul(B, B) == linalg.identity(5)


# -- stability ------------------------------------------------------------------------

def is_stable(V: Sequence[MultiPoly], A: RepAction | None = None,
              generators: Sequence[str] | None = None) -> bool:
    A = A or build_rep_action()
    basis = [coordinates(as_section(f)) for f in V]
    if linalg.rank(basis) != len(basis):
        raise RepError("basis is linearly dependent")
    for name in generators or A.generators:
        m = A.generators[name]
        for vec in basis:
            img = [sum((m[i][j] * vec[j] for j in range(16) if not vec[j].is_zero()), ZERO)
                   for i in range(16)]
            if not linalg.in_span(img, basis):
                return False
    return True


def action_scalars(V: Sequence[MultiPoly], A: RepAction | None = None) -> dict[str, list[list[str]]]:
    """Matrices of each generator on a stable subspace, in the given basis."""
    A = A or build_rep_action()
    basis = [coordinates(as_section(f)) for f in V]
    out = {}
    for name, m in A.generators.items():
        cols = []
        for vec in basis:
            img = [sum((m[i][j] * vec[j] for j in range(16)), ZERO) for i in range(16)]
            c = linalg.solve_in_span(img, basis)
            if c is None:
                raise RepError(f"subspace not stable under {name}")
            cols.append(c)
        out[name] = [[str(cols[j][i]) for j in range(len(basis))] for i in range(len(basis))]
    return out


def same_span(U: Sequence[Sequence], V: Sequence[Sequence]) -> bool:
    r = linalg.rank(U)
    return r == linalg.rank(V) == linalg.rank(list(U) + list(V))


# -- characters -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bo_group() -> FiniteGroup:
    return FiniteGroup.generate([alpha(), beta()], name="BO")


@lru_cache(maxsize=None)
def s4_group() -> FiniteGroup:
    gens = [Permutation.from_cycles(4, [(1, 2, 3, 4)]), Permutation.from_cycles(4, [(1, 2)])]
    return FiniteGroup.generate(gens, identity=Permutation.identity(4), name="S4")


@lru_cache(maxsize=None)
def bo_class_match():
    G, table = bo_group(), binary_octahedral_table()
    return match_classes_to_table(G, table, lambda g: g.trace())


def _trace_product(a: Sequence[Sequence], b: Sequence[Sequence]) -> CycloElement:
    acc = ZERO
    for i in range(len(a)):
        for k in range(len(a)):
            if not a[i][k].is_zero() and not b[k][i].is_zero():
                acc = acc + a[i][k] * b[k][i]
    return acc


def character_16() -> list[list[CycloElement]]:
    """chi(a, b) with a over BO table columns, b over Sym(4) table columns."""
    G, bo_table = bo_group(), binary_octahedral_table()
    match = bo_class_match()
    s4_table = symmetric4_table()
    s4_reps = {}
    for p in s4_group().elements:
        s4_reps.setdefault(s4_class_index(p), p)
    chi = [[ZERO] * len(s4_table.labels) for _ in bo_table.labels]
    for k, c in enumerate(G.conjugacy_classes()):
        R = rho(G.elements[c["representative"]])
        for j in range(len(s4_table.labels)):
            chi[match.columns[k]][j] = _trace_product(R, pi(s4_reps[j]))
    return chi


def product_multiplicities(chi: Sequence[Sequence], t1: CharacterTable, t2: CharacterTable) -> list[list[int]]:
    order = t1.group_order * t2.group_order
    out = []
    for r1 in t1.rows:
        row = []
        for r2 in t2.rows:
            acc = ZERO
            for a, (sa, va) in enumerate(zip(t1.sizes, r1)):
                for b, (sb, vb) in enumerate(zip(t2.sizes, r2)):
                    acc = acc + chi[a][b] * (va * vb).conjugate() * (sa * sb)
            m = acc / order
            if not m.is_rational() or m.to_fraction().denominator != 1 or m.to_fraction() < 0:
                raise RepError(f"non-integral multiplicity {m}")
            row.append(int(m.to_fraction()))
        out.append(row)
    return out


def _projector(G: FiniteGroup, mats, table: CharacterTable, row: int, class_col) -> list[list]:
    """(dim/|G|) sum conj(chi(g)) R(g) over the whole group."""
    dim = table.dims()[row]
    acc = [[ZERO] * 16 for _ in range(16)]
    for i in range(len(G)):
        c = table.rows[row][class_col(i)].conjugate()
        if c.is_zero():
            continue
        R = mats(i)
        for a in range(16):
            for b in range(16):
                if not R[a][b].is_zero():
                    acc[a][b] = acc[a][b] + c * R[a][b]
    scale = CycloElement.from_rational(dim) / len(G)
    return [[x * scale for x in r] for r in acc]


def _column_space(m: Sequence[Sequence]) -> list[list[CycloElement]]:
    cols = [[m[i][j] for i in range(16)] for j in range(16)]
    return linalg.rref(cols)[0]


@dataclass
class Constituent:
    bo_irrep: str
    s4_irrep: str
    dimension: int
    multiplicity: int
    basis: list[list[CycloElement]] | None = None


def decompose_16(with_subspaces: bool = True) -> dict:
    """Route 1: multiplicities from characters, isotypic subspaces from projectors."""
    t1, t2 = binary_octahedral_table(), symmetric4_table()
    chi = character_16()
    mults = product_multiplicities(chi, t1, t2)
    constituents = []
    G, S = bo_group(), s4_group()
    match = bo_class_match()
    bo_col = {m: match.columns[k] for k, c in enumerate(G.conjugacy_classes()) for m in c["members"]}
    for r1, n1 in enumerate(t1.names):
        for r2, n2 in enumerate(t2.names):
            m = mults[r1][r2]
            if not m:
                continue
            dim = t1.dims()[r1] * t2.dims()[r2]
            basis = None
            if with_subspaces:
                P1 = _projector(G, lambda i: rho(G.elements[i]), t1, r1, lambda i: bo_col[i])
                P2 = _projector(S, lambda i: pi(S.elements[i]), t2, r2,
                                lambda i: s4_class_index(S.elements[i]))
                basis = _column_space(linalg.matmul(P1, P2))
                if len(basis) != m * dim:
                    raise RepError(f"isotypic component {n1}x{n2} has dimension {len(basis)}")
            constituents.append(Constituent(n1, n2, dim, m, basis))
    total = sum(c.dimension * c.multiplicity for c in constituents)
    if total != 16:
        raise RepError(f"constituent dimensions sum to {total}")
    return {"multiplicities": {f"{t1.names[a]}x{t2.names[b]}": mults[a][b]
                               for a in range(len(t1.names)) for b in range(len(t2.names))},
            "constituents": constituents, "character": chi}


# -- route 2: label-free certificate -----------------------------------------------------

def _rank_mod_p(rows: np.ndarray, p: int) -> int:
    m = rows.copy() % p
    r = 0
    for col in range(m.shape[1]):
        nz = np.nonzero(m[r:, col])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, col]), -1, p) % p
        others = np.nonzero(m[:, col])[0]
        others = others[others != r]
        m[others] = (m[others] - np.outer(m[others, col], m[r])) % p
        r += 1
        if r == m.shape[0]:
            break
    return r


def commutant_dimension_bound(A: RepAction, p: int = 73) -> int:
    """dim over F_p of {X : X R = R X for all generators}; bounds the char-0 dimension from above."""
    n = 16
    eqs = []
    for m in A.generators.values():
        R = np.array([[reduce_mod_p_int(x, p) for x in row] for row in m], dtype=np.int64)
        # (X R - R X)[i,j] = sum_k X[i,k] R[k,j] - R[i,k] X[k,j], unknown X[a,b] at a*n+b
        for i in range(n):
            for j in range(n):
                row = np.zeros(n * n, dtype=np.int64)
                row[i * n:(i + 1) * n] += R[:, j]
                row[np.arange(n) * n + j] -= R[i, :]
                eqs.append(row % p)
    return n * n - _rank_mod_p(np.array(eqs), p)


def certify_decomposition(A: RepAction, subspaces: Sequence[Sequence[Sequence]], p: int = 73) -> dict:
    """Stable subspaces in direct sum plus commutant bound => multiplicity-free irreducible split.

    With k nonzero stable summands filling the space, the number N of irreducible
    constituents (with multiplicity) is at least k, and dim End = sum m_i^2 >= N.
    If the F_p bound gives dim End <= k, every summand is irreducible and the
    representation is multiplicity free, so its subrepresentations are exactly
    the sums of summands.
    """
    stable = []
    for basis in subspaces:
        polys = [from_coordinates(v) for v in basis]
        stable.append(is_stable(polys, A))
    full = linalg.rank([v for basis in subspaces for v in basis])
    bound = commutant_dimension_bound(A, p)
    k = len(subspaces)
    ok = all(stable) and full == 16 and sum(len(b) for b in subspaces) == 16 and bound <= k
    return {"summands": k, "all_stable": all(stable), "direct_sum_rank": full,
            "commutant_dim_bound": bound, "multiplicity_free": ok}


def enumerate_2dim_subreps(A: RepAction | None = None) -> dict:
    """All 2-dimensional subrepresentations, by characters and by the label-free certificate."""
    A = A or build_rep_action()
    dec = decompose_16()
    cons = dec["constituents"]
    infinite = [f"{c.bo_irrep}x{c.s4_irrep}" for c in cons if c.dimension <= 2 and c.multiplicity >= 2]
    route1 = [c for c in cons if c.dimension == 2 and c.multiplicity == 1]
    ones = [c for c in cons if c.dimension == 1 and c.multiplicity == 1]
    candidates = [c.basis for c in route1]
    for a, b in itertools.combinations(ones, 2):
        candidates.append(a.basis + b.basis)
    cert = certify_decomposition(A, [c.basis for c in cons])
    route2 = []
    if cert["multiplicity_free"]:
        dims = [len(c.basis) for c in cons]
        for r in range(1, len(cons) + 1):
            for combo in itertools.combinations(range(len(cons)), r):
                if sum(dims[i] for i in combo) == 2:
                    route2.append([v for i in combo for v in cons[i].basis])
    agree = len(route1) + len(ones) * (len(ones) - 1) // 2 == len(route2) and all(
        any(same_span(c, d) for d in route2) for c in candidates)
    expected = {"<f1,f2>": [coordinates(multihomogenize(F1)), coordinates(multihomogenize(F2))],
                "<sigma4+1,sigma2>": [coordinates(multihomogenize(F_S)), coordinates(multihomogenize(G_S))]}
    matched = {name: any(same_span(basis, c) for c in candidates) for name, basis in expected.items()}
    return {"count": len(candidates), "infinite_family": infinite, "subspaces": candidates,
            "route_agreement": agree, "certificate": cert, "matches": matched,
            "multiplicities": dec["multiplicities"],
            "constituents": [(c.bo_irrep, c.s4_irrep, c.dimension, c.multiplicity) for c in cons]}


# -- W ---------------------------------------------------------------------------------

def decompose_W(A: RepAction | None = None) -> dict:
    A = A or build_rep_action()
    Ma, Mb = w_matrix(A, "alpha"), w_matrix(A, "beta")
    chi_a, chi_b = linalg.trace(Ma), linalg.trace(Mb)
    two = [F_S, G_S]
    three = [SIGMA[4] - 1, SIGMA[3], SIGMA[1]]
    gens = ("alpha", "beta")
    stable2, stable3 = is_stable(two, A, gens), is_stable(three, A, gens)
    full = linalg.rank([coordinates(multihomogenize(f)) for f in two + three]) == 5
    if not (stable2 and stable3 and full):
        raise RepError("W does not split as <sigma4+1, sigma2> + <sigma4-1, sigma3, sigma1>")
    # BO-irreducibility: a 2- or 3-dim BO-rep is reducible iff it has a 1-dim summand,
    # detected by the character inner product with the 1-dim characters
    G, table = bo_group(), binary_octahedral_table()
    match = bo_class_match()
    names = {}
    for label, basis in (("two", two), ("three", three)):
        cols = [coordinates(multihomogenize(f)) for f in basis]
        chi = [ZERO] * len(table.labels)
        for k, c in enumerate(G.conjugacy_classes()):
            R = rho(G.elements[c["representative"]])
            vals = []
            for vec in cols:
                vals.append(linalg.solve_in_span(
                    [sum((R[i][j] * vec[j] for j in range(16)), ZERO) for i in range(16)], cols))
            chi[match.columns[k]] = sum((vals[i][i] for i in range(len(cols))), ZERO)
        irreducible = table.inner(chi, chi) == 1
        if not irreducible:
            raise RepError(f"the {label}-dimensional summand is reducible")
        mult = [table.inner(chi, row) for row in table.rows]
        names[label] = next(table.names[i] for i, m in enumerate(mult) if m == 1)
    return {"chi_alpha": chi_a, "chi_beta": chi_b, "dims": (2, 3),
            "two_dim_basis": ["sigma4+1", "sigma2"], "three_dim_basis": ["sigma4-1", "sigma3", "sigma1"],
            "table_rows": names, "alpha_class": match.column_of(G, G.idx(alpha()), table),
            "beta_class": match.column_of(G, G.idx(beta()), table)}
