"""Finite matrix groups over Q(zeta_24): closure, classes, characters, certificates."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from . import linalg
from .exactfield import ONE, ZERO, CycloElement, SQRT2, serialize
from .polyring import MultiPoly, linear_form


class GroupError(RuntimeError):
    pass


# -- elements ---------------------------------------------------------------

class GroupElement:
    """Square matrix over Q(zeta_24), optionally taken up to scalars.

    Projective elements are stored with the first nonzero entry (row-major)
    equal to 1, so equality and hashing are structural.
    """

    __slots__ = ("matrix", "projective", "_hash")

    def __init__(self, rows: Sequence[Sequence], projective: bool = False):
        m = tuple(tuple(CycloElement.coerce(x) for x in row) for row in rows)
        if any(len(row) != len(m) for row in m):
            raise GroupError("matrix is not square")
        if projective:
            lead = next(x for row in m for x in row if not x.is_zero())
            if lead != ONE:
                inv = lead.inverse()
                m = tuple(tuple(x * inv for x in row) for row in m)
        self.matrix = m
        self.projective = projective
        self._hash = None

    @property
    def size(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int, projective: bool = False) -> GroupElement:
        return cls(linalg.identity(n), projective)

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.projective != other.projective or self.size != other.size:
            raise GroupError("incompatible group elements")
        return GroupElement(linalg.matmul(self.matrix, other.matrix), self.projective)

    def __pow__(self, n: int) -> GroupElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = GroupElement.identity(self.size, self.projective)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> GroupElement:
        return GroupElement(linalg.inverse(self.matrix), self.projective)

    def det(self) -> CycloElement:
        return linalg.det(self.matrix)

    def trace(self) -> CycloElement:
        return linalg.trace(self.matrix)

    def apply(self, vector: Sequence) -> tuple[CycloElement, ...]:
        out = []
        for row in self.matrix:
            acc = ZERO
            for a, x in zip(row, vector):
                if not a.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def to_projective(self) -> GroupElement:
        return GroupElement(self.matrix, True)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupElement) and self.projective == other.projective
                and self.matrix == other.matrix)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.matrix, self.projective))
        return self._hash

    def __repr__(self) -> str:
        kind = "PGL" if self.projective else "GL"
        return f"{kind}{self.size}[" + "; ".join(", ".join(map(str, r)) for r in self.matrix) + "]"

    def to_json(self) -> dict:
        return {"projective": self.projective,
                "matrix": [[serialize(x) for x in row] for row in self.matrix]}


def block(a: Sequence[Sequence], b: Sequence[Sequence], c: Sequence[Sequence],
          d: Sequence[Sequence]) -> list[list]:
    """Assemble the 4x4 matrix (a b; c d) from 2x2 blocks (0 allowed for a zero block)."""
    def blk(m):
        return [[ZERO, ZERO], [ZERO, ZERO]] if m == 0 else m
    a, b, c, d = map(blk, (a, b, c, d))
    return [list(a[0]) + list(b[0]), list(a[1]) + list(b[1]),
            list(c[0]) + list(d[0]), list(c[1]) + list(d[1])]


@dataclass(frozen=True)
class Permutation:
    """Bijection of {0, ..., n-1}; printed 1-based in cycle notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls(tuple(img))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i + 1)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        fixed = len(self.images) - sum(lengths)
        return tuple(sorted(lengths + [1] * fixed, reverse=True))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def order(self) -> int:
        from math import lcm
        return lcm(*[len(c) for c in self.cycles()]) if self.cycles() else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) if cyc else "id"


@dataclass(frozen=True)
class PairElement:
    """Element (A, sigma) of a direct product of a matrix group and a permutation group."""

    matrix: GroupElement
    perm: Permutation

    def __mul__(self, other: PairElement) -> PairElement:
        return PairElement(self.matrix * other.matrix, self.perm * other.perm)


# -- finite groups ------------------------------------------------------------

class FiniteGroup:
    """Finite group given by a breadth-first closure of its generators.

    Elements are indexed in discovery order.  Right multiplication by each
    generator is tabulated, and every element carries a generator word, so any
    product reduces to table lookups.
    """

    def __init__(self, elements: list, generators: list, right: list[list[int]],
                 words: list[tuple[int, ...]], name: str = "G"):
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self.generators = generators
        self.right = right
        self.words = words
        self.name = name
        self._inverse: list[int] | None = None
        self._classes = None
        self._orders: list[int] | None = None

    @classmethod
    def generate(cls, gens: Sequence[Hashable], cap: int = 4096, identity=None,
                 name: str = "G") -> FiniteGroup:
        if cap < 1:
            raise GroupError("cap must be positive")
        gens = list(gens)
        if identity is None:
            if not gens:
                raise GroupError("need an identity or at least one generator")
            g0 = gens[0]
            identity = GroupElement.identity(g0.size, g0.projective)
        kinds = {(g.size, g.projective) for g in gens if isinstance(g, GroupElement)}
        if len(kinds) > 1:
            raise GroupError("generators differ in size or projective flag")
        elements = [identity]
        index = {identity: 0}
        words: list[tuple[int, ...]] = [()]
        right: list[list[int]] = [[] for _ in gens]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            e = elements[i]
            for k, s in enumerate(gens):
                prod = e * s
                j = index.get(prod)
                if j is None:
                    j = len(elements)
                    if j >= cap:
                        raise GroupError(f"closure exceeds cap {cap} (partial size {j})")
                    elements.append(prod)
                    index[prod] = j
                    words.append(words[i] + (k,))
                    queue.append(j)
                right[k].append(j)
        # the queue pops indices in increasing order, so right[k][i] lines up with i
        return cls(elements, gens, right, words, name)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def idx(self, element) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise GroupError("element is not in the group") from None

    def __contains__(self, element) -> bool:
        return element in self.index

    def mul(self, i: int, j: int) -> int:
        for k in self.words[j]:
            i = self.right[k][i]
        return i

    def power(self, i: int, n: int) -> int:
        acc = 0
        for _ in range(n):
            acc = self.mul(acc, i)
        return acc

    def inverse(self, i: int) -> int:
        if self._inverse is None:
            inv = [0] * len(self)
            for a in range(len(self)):
                o = self.element_order(a)
                inv[a] = self.power(a, o - 1)
            self._inverse = inv
        return self._inverse[i]

    def element_order(self, i: int) -> int:
        if self._orders is None:
            self._orders = [0] * len(self)
        if not self._orders[i]:
            acc, n = i, 1
            while acc != 0:
                acc = self.mul(acc, i)
                n += 1
            self._orders[i] = n
        return self._orders[i]

    def conjugate(self, x: int, g: int) -> int:
        """g^-1 x g."""
        return self.mul(self.mul(self.inverse(g), x), g)

    def closure(self, gens: Iterable[int]) -> list[int]:
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for g in gens:
                b = self.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(seen)

    def is_subgroup(self, members: Iterable[int]) -> bool:
        s = set(members)
        return 0 in s and all(self.mul(a, b) in s for a in s for b in s)

    def is_normal(self, members: Iterable[int]) -> bool:
        s = set(members)
        gens = [self.idx(g) for g in self.generators]
        return all(self.conjugate(x, g) in s for x in s for g in gens)

    def center(self) -> list[int]:
        gens = [self.idx(g) for g in self.generators]
        return [x for x in range(len(self)) if all(self.mul(x, g) == self.mul(g, x) for g in gens)]

    def conjugacy_classes(self) -> list[dict]:
        """Classes sorted by (element order, size); each with representative and members."""
        if self._classes is None:
            gens = [self.idx(g) for g in self.generators]
            assigned = [-1] * len(self)
            raw = []
            for x in range(len(self)):
                if assigned[x] >= 0:
                    continue
                members = {x}
                queue = deque([x])
                while queue:
                    a = queue.popleft()
                    for g in gens:
                        b = self.conjugate(a, g)
                        if b not in members:
                            members.add(b)
                            queue.append(b)
                for m in members:
                    assigned[m] = len(raw)
                raw.append(sorted(members))
            classes = [{"representative": m[0], "size": len(m), "order": self.element_order(m[0]),
                        "members": m} for m in raw]
            classes.sort(key=lambda c: (c["order"], c["size"], c["representative"]))
            self._classes = classes
        return self._classes

    def class_of(self, i: int) -> int:
        for k, c in enumerate(self.conjugacy_classes()):
            if i in c["members"]:
                return k
        raise GroupError("element not found in any class")


def generate_closure(gens: Sequence[GroupElement], cap: int = 4096, name: str = "G") -> FiniteGroup:
    return FiniteGroup.generate(gens, cap=cap, name=name)


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, int, int]]:
    return [(c["representative"], c["size"], c["order"]) for c in G.conjugacy_classes()]


# -- character tables -----------------------------------------------------------

def _label_order(label: str) -> int:
    digits = "".join(ch for ch in label if ch.isdigit())
    return int(digits)


@dataclass
class CharacterTable:
    labels: list[str]
    sizes: list[int]
    orders: list[int]
    rows: list[list[CycloElement]]
    names: list[str]

    def __post_init__(self):
        self.rows = [[CycloElement.coerce(v) for v in row] for row in self.rows]
        self.validate()

    @property
    def group_order(self) -> int:
        return sum(self.sizes)

    def dims(self) -> list[int]:
        return [int(row[0].to_fraction()) for row in self.rows]

    def inner(self, chi: Sequence, psi: Sequence) -> CycloElement:
        acc = ZERO
        for size, a, b in zip(self.sizes, chi, psi):
            acc = acc + CycloElement.coerce(a) * CycloElement.coerce(b).conjugate() * size
        return acc / self.group_order

    def validate(self) -> None:
        n = len(self.labels)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise GroupError("character table is not square")
        order = self.group_order
        if sum(d * d for d in self.dims()) != order:
            raise GroupError("sum of squared dimensions differs from the group order")
        for i, j in itertools.product(range(n), repeat=2):
            if self.inner(self.rows[i], self.rows[j]) != (1 if i == j else 0):
                raise GroupError(f"rows {self.names[i]}, {self.names[j]} not orthonormal")
        for a, b in itertools.product(range(n), repeat=2):
            acc = ZERO
            for row in self.rows:
                acc = acc + row[a] * row[b].conjugate()
            expected = Fraction(order, self.sizes[a]) if a == b else 0
            if acc != expected:
                raise GroupError(f"columns {self.labels[a]}, {self.labels[b]} fail orthogonality")


def binary_octahedral_table() -> CharacterTable:
    r2 = SQRT2
    rows = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, -1, 1, -1, -1],
        [2, 2, -1, 2, 0, -1, 0, 0],
        [2, -2, -1, 0, 0, 1, r2, -r2],
        [2, -2, -1, 0, 0, 1, -r2, r2],
        [3, 3, 0, -1, -1, 0, 1, 1],
        [3, 3, 0, -1, 1, 0, -1, -1],
        [4, -4, 1, 0, 0, -1, 0, 0],
    ]
    labels = ["1", "2", "3", "4A", "4B", "6", "8A", "8B"]
    return CharacterTable(labels, [1, 1, 8, 6, 12, 8, 6, 6], [_label_order(l) for l in labels],
                          rows, [f"rho{i}" for i in range(1, 9)])


def symmetric4_table() -> CharacterTable:
    labels = ["1", "(12)", "(12)(34)", "(123)", "(1234)"]
    rows = [
        [1, 1, 1, 1, 1],
        [1, -1, 1, 1, -1],
        [2, 0, 2, -1, 0],
        [3, 1, -1, 0, -1],
        [3, -1, -1, 0, 1],
    ]
    return CharacterTable(labels, [1, 6, 3, 8, 6], [1, 2, 2, 3, 4], rows,
                          ["trivial", "sign", "two", "standard", "standard*sign"])


S4_CYCLE_TYPES = [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]


def s4_class_index(p: Permutation) -> int:
    return S4_CYCLE_TYPES.index(p.cycle_type())


@dataclass
class ClassMatch:
    columns: list[int]              # computed class k -> table column
    probe_row: int                  # table row equal to the probe character
    alternatives: int               # number of consistent bijections found
    probe_values: list[CycloElement]

    def column_of(self, G: FiniteGroup, element_index: int, table: CharacterTable) -> str:
        return table.labels[self.columns[G.class_of(element_index)]]


def match_classes_to_table(G: FiniteGroup, table: CharacterTable,
                           probe: Callable[[object], CycloElement]) -> ClassMatch:
    """Match computed classes to table columns using sizes, orders and a probe character."""
    classes = G.conjugacy_classes()
    if len(classes) != len(table.labels):
        raise GroupError(f"{len(classes)} classes but the table has {len(table.labels)} columns")
    values = [CycloElement.coerce(probe(G.elements[c["representative"]])) for c in classes]
    candidates_per_class = []
    for c in classes:
        cols = [j for j in range(len(table.labels))
                if table.sizes[j] == c["size"] and table.orders[j] == c["order"]]
        if not cols:
            raise GroupError(f"class of order {c['order']} and size {c['size']} has no column")
        candidates_per_class.append(cols)
    valid = []
    for choice in itertools.product(*candidates_per_class):
        if len(set(choice)) != len(choice):
            continue
        for r, row in enumerate(table.rows):
            if all(row[col] == v for col, v in zip(choice, values)):
                valid.append((r, list(choice)))
    if not valid:
        raise GroupError("no class/column bijection is consistent with the probe character")
    valid.sort(key=lambda rc: (rc[0], rc[1]))
    row, cols = valid[0]
    return ClassMatch(cols, row, len(valid), values)


def class_function(G: FiniteGroup, match: ClassMatch, table: CharacterTable,
                   f: Callable[[int], CycloElement]) -> list[CycloElement]:
    """Values of f (given on element indices) in table column order."""
    out = [ZERO] * len(table.labels)
    for k, c in enumerate(G.conjugacy_classes()):
        out[match.columns[k]] = CycloElement.coerce(f(c["representative"]))
    return out


def decompose_character(chi: Sequence, table: CharacterTable) -> list[int]:
    mults = []
    for row, name in zip(table.rows, table.names):
        m = table.inner(chi, row)
        if not m.is_rational():
            raise GroupError(f"multiplicity of {name} is not rational: {m}")
        q = m.to_fraction()
        if q.denominator != 1 or q < 0:
            raise GroupError(f"multiplicity of {name} is {q}; class matching is inconsistent")
        mults.append(int(q))
    return mults


# -- permutation actions on linear forms -------------------------------------------

def pullback_linear(form: MultiPoly, g: GroupElement, names: Sequence[str]) -> MultiPoly:
    """form(g X) for the coordinate vector X = names."""
    assignment = {n: linear_form(row, names) for n, row in zip(names, g.matrix)}
    return form.subs(assignment)


def proportional(p: MultiPoly, q: MultiPoly) -> CycloElement | None:
    """c with p = c*q, or None."""
    if p.is_zero() or q.is_zero():
        return None
    m, c = q.leading_term()
    ratio = p.terms.get(m)
    if ratio is None:
        return None
    ratio = ratio / c
    return ratio if p == q * ratio else None


def induced_permutation(g: GroupElement, forms: Sequence[MultiPoly],
                        names: Sequence[str] = ("x", "y", "z", "w")) -> Permutation:
    """Permutation of the hyperplanes (form = 0) induced by X -> gX.

    The image of point i is the index of g(H_i).  Since form_j(g X) = c*form_i(X)
    means g(H_i) = H_j, this is the inverse of the pullback correspondence.
    """
    pulled_to = []
    for j, f in enumerate(forms):
        pb = pullback_linear(f, g, names)
        hits = [i for i, h in enumerate(forms) if proportional(pb, h) is not None]
        if len(hits) != 1:
            raise GroupError(f"pullback of form {j + 1} is proportional to {len(hits)} listed forms")
        pulled_to.append(hits[0])
    # pulled_to[j] = i  <=>  g(H_i) = H_j
    images = [0] * len(forms)
    for j, i in enumerate(pulled_to):
        images[i] = j
    return Permutation(tuple(images))


# -- structure certificates -------------------------------------------------------

S4_A = Permutation.from_cycles(4, [(1, 2, 3, 4)])
S4_B = Permutation.from_cycles(4, [(1, 2)])


def s4_isomorphism(G: FiniteGroup, a: int, b: int) -> dict[int, Permutation] | None:
    """Isomorphism <a, b> -> Sym(4) with a -> (1234), b -> (12), or None.

    The map is built along a spanning tree of the Cayley graph and then checked
    on every edge, which makes it a well-defined homomorphism.
    """
    image = {0: Permutation.identity(4)}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, pg in ((a, S4_A), (b, S4_B)):
            y = G.mul(x, g)
            py = image[x] * pg
            if y in image:
                if image[y] != py:
                    return None
            else:
                image[y] = py
                queue.append(y)
    if len(image) != 24 or len(set(image.values())) != 24:
        return None
    return image


def find_s4_subgroups(G: FiniteGroup, avoid: Iterable[int] = (), within: Iterable[int] | None = None):
    """Yield (a, b, members, isomorphism) for subgroups <a,b> = S4 meeting `avoid` trivially."""
    avoid = set(avoid) - {0}
    pool = range(len(G)) if within is None else sorted(set(within))
    fours = [x for x in pool if G.element_order(x) == 4]
    twos = [x for x in pool if G.element_order(x) == 2]
    seen = set()
    for a in fours:
        for b in twos:
            if G.element_order(G.mul(a, b)) != 3:
                continue
            iso = s4_isomorphism(G, a, b)
            if iso is None:
                continue
            members = frozenset(iso)
            if members in seen or members & avoid:
                continue
            seen.add(members)
            yield a, b, sorted(members), iso


def _perm_json(p: Permutation) -> str:
    return str(p)


def structure_certify(G: FiniteGroup, claim: str, n: int | None = None,
                      factors: tuple[Sequence[int], Sequence[int]] | None = None) -> dict:
    """Explicit witnesses for a structural claim about G.

    claim is one of "cyclic", "S4", "C4:S4", "C2xS4", "S4xS4".
    """
    order = len(G)
    if claim == "cyclic":
        for x in range(len(G)):
            if G.element_order(x) == order and (n is None or n == order):
                return {"claim": f"C{order}", "order": order, "generator": x}
        raise GroupError(f"group of order {order} is not cyclic")
    if claim == "S4":
        if order != 24:
            raise GroupError(f"order {order} != 24")
        for a, b, members, iso in find_s4_subgroups(G):
            return {"claim": "S4", "order": 24, "a": a, "b": b,
                    "isomorphism": {str(k): _perm_json(v) for k, v in sorted(iso.items())}}
        raise GroupError("no isomorphism to Sym(4) found")
    if claim == "C4:S4":
        if order != 96:
            raise GroupError(f"order {order} != 96")
        for c in range(len(G)):
            if G.element_order(c) != 4:
                continue
            cyc = G.closure([c])
            if not G.is_normal(cyc):
                continue
            for a, b, members, iso in find_s4_subgroups(G, avoid=cyc):
                return {"claim": "C4:S4", "order": 96, "normal_cyclic_generator": c,
                        "normal_cyclic": cyc, "complement": members,
                        "complement_generators": [a, b],
                        "complement_isomorphism": {str(k): _perm_json(v) for k, v in sorted(iso.items())}}
        raise GroupError("no normal C4 with an S4 complement found")
    if claim == "C2xS4":
        if order != 48:
            raise GroupError(f"order {order} != 48")
        for z in G.center():
            if G.element_order(z) != 2:
                continue
            for a, b, members, iso in find_s4_subgroups(G, avoid=[z]):
                return {"claim": "C2xS4", "order": 48, "central_involution": z,
                        "complement": members, "complement_generators": [a, b],
                        "complement_isomorphism": {str(k): _perm_json(v) for k, v in sorted(iso.items())}}
        raise GroupError("no central involution with an S4 complement found")
    if claim == "S4xS4":
        if order != 576 or factors is None:
            raise GroupError("S4xS4 certification needs order 576 and two factor generating sets")
        h1, h2 = G.closure(factors[0]), G.closure(factors[1])
        if len(h1) != 24 or len(h2) != 24 or set(h1) & set(h2) != {0}:
            raise GroupError("factors are not two order-24 subgroups meeting trivially")
        if any(G.mul(x, y) != G.mul(y, x) for x in h1 for y in h2):
            raise GroupError("factors do not commute")
        certs = []
        for h in (h1, h2):
            found = next(find_s4_subgroups(G, within=h), None)
            if found is None or sorted(found[2]) != h:
                raise GroupError("a factor is not isomorphic to S4")
            certs.append({"a": found[0], "b": found[1]})
        return {"claim": "S4xS4", "order": 576, "factors": [h1, h2], "factor_generators": certs}
    raise GroupError(f"unknown structure claim {claim!r}")
