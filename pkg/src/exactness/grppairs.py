"""The Grp instance: Cayley-table groups, subgroups, normal closure,
quotients, the category of pairs (G, S) and its five functors."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from exactness.finset import FiniteFunction, FiniteSet, MorphismClass, hash_once


class GroupAxiomError(ValueError):
    def __init__(self, name: str, axiom: str, witness):
        self.name, self.axiom, self.witness = name, axiom, witness
        super().__init__(f"group {name!r} fails {axiom}: {witness}")


@hash_once
@dataclass(frozen=True)
class FinGroup:
    """A group given by its multiplication table on positions 0..n-1."""

    table: tuple[tuple[int, ...], ...]
    labels: tuple[Hashable, ...] = None
    name: str = field(default="", compare=False)
    identity_pos: int = field(default=None, compare=False)

    def __post_init__(self):
        table = tuple(tuple(r) for r in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(n)))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        name = self.name or f"group{n}"
        if n == 0:
            raise GroupAxiomError(name, "non-emptiness", "empty table")
        if len(self.labels) != n:
            raise GroupAxiomError(name, "shape", "label count differs from order")
        for i, row in enumerate(table):
            if len(row) != n:
                raise GroupAxiomError(name, "shape", f"row {i} has length {len(row)}")
            for x in row:
                if not 0 <= x < n:
                    raise GroupAxiomError(name, "closure", f"entry {x} in row {i}")
        e = next((a for a in range(n) if all(table[a][x] == x == table[x][a] for x in range(n))), None)
        if e is None:
            raise GroupAxiomError(name, "identity", "no two-sided identity")
        object.__setattr__(self, "identity_pos", e)
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise GroupAxiomError(name, "associativity", (a, b, c))
        for a in range(n):
            if not any(table[a][b] == e == table[b][a] for b in range(n)):
                raise GroupAxiomError(name, "inverses", f"element {a} has no inverse")

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def e(self) -> int:
        return self.identity_pos

    @functools.cached_property
    def carrier(self) -> FiniteSet:
        return FiniteSet(self.labels)

    @functools.cached_property
    def _inverses(self) -> tuple[int, ...]:
        return tuple(next(b for b in range(self.order) if self.table[a][b] == self.e) for a in range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def identity(self) -> GroupHom:
        return GroupHom(self, self, tuple(range(self.order)))

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        return self.name or f"<group of order {self.order}>"


def validate_group(table: Sequence[Sequence[int]], name: str = "") -> FinGroup:
    """Build a group from a Cayley table with 1-based entries."""
    n = len(table)
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupAxiomError(name or "?", "shape", f"row {i + 1} has length {len(row)}, expected {n}")
    return FinGroup(tuple(tuple(x - 1 for x in row) for row in table), name=name)


@hash_once
@dataclass(frozen=True)
class GroupHom:
    domain: FinGroup
    codomain: FinGroup
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        G, H, m = self.domain, self.codomain, self.mapping
        if len(m) != G.order or any(not 0 <= y < H.order for y in m):
            raise ValueError("mapping does not fit the groups")
        for a, b in itertools.product(range(G.order), repeat=2):
            if m[G.mul(a, b)] != H.mul(m[a], m[b]):
                raise ValueError(f"not a homomorphism at ({a}, {b})")

    @property
    def fn(self) -> FiniteFunction:
        return FiniteFunction(self.domain.carrier, self.codomain.carrier, self.mapping)

    def __matmul__(self, other: GroupHom) -> GroupHom:
        if other.codomain != self.domain:
            raise ValueError("cannot compose: endpoints differ")
        return GroupHom._trusted(other.domain, self.codomain, tuple(self.mapping[y] for y in other.mapping))

    @classmethod
    def _trusted(cls, domain: FinGroup, codomain: FinGroup, mapping: tuple[int, ...]) -> GroupHom:
        # composites of homomorphisms need no re-check
        h = object.__new__(cls)
        object.__setattr__(h, "domain", domain)
        object.__setattr__(h, "codomain", codomain)
        object.__setattr__(h, "mapping", mapping)
        return h

    def kernel(self) -> Subgroup:
        return Subgroup(self.domain, tuple(a for a, y in enumerate(self.mapping) if y == self.codomain.e))

    def __str__(self) -> str:
        return f"{self.domain}->{self.codomain}{list(self.mapping)}"


def grp_classify(h: GroupHom) -> MorphismClass:
    # no group is empty, and Grp is pointed, so both classes are empty
    return MorphismClass(is_z_empty=False, is_null=False)


# -- subgroups -------------------------------------------------------------------


@hash_once
@dataclass(frozen=True)
class Subgroup:
    parent: FinGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", els)
        G = self.parent
        s = set(els)
        if G.e not in s:
            raise ValueError("subgroup must contain the identity")
        for a in els:
            if G.inv(a) not in s or any(G.mul(a, b) not in s for b in els):
                raise ValueError(f"{els} is not closed in {G}")

    @functools.cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def __le__(self, other: Subgroup) -> bool:
        return self.parent == other.parent and set(self.elements) <= set(other.elements)

    def __str__(self) -> str:
        lab = self.parent.labels
        return "<" + ",".join(str(lab[a]) for a in self.elements) + ">"


@functools.lru_cache(maxsize=None)
def trivial_subgroup(G: FinGroup) -> Subgroup:
    return Subgroup(G, (G.e,))


@functools.lru_cache(maxsize=None)
def whole_group(G: FinGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def generate(G: FinGroup, gens) -> Subgroup:
    els = {G.e}
    frontier = [G.e]
    gens = list(gens)
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = G.mul(x, s)
            if y not in els:
                els.add(y)
                frontier.append(y)
    return Subgroup(G, tuple(els))


@functools.lru_cache(maxsize=None)
def subgroups(G: FinGroup) -> tuple[Subgroup, ...]:
    """All subgroups, by closure test on every subset containing the identity."""
    others = [a for a in range(G.order) if a != G.e]
    found = []
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            s = {G.e, *extra}
            if all(G.mul(a, b) in s for a in s for b in s):
                found.append(Subgroup(G, tuple(s)))
    return tuple(sorted(found, key=lambda H: (len(H), H.elements)))


def is_normal(S: Subgroup) -> bool:
    G = S.parent
    return all(G.mul(G.mul(g, s), G.inv(g)) in S for g in range(G.order) for s in S.elements)


@functools.lru_cache(maxsize=None)
def normal_closure(G: FinGroup, S: Subgroup) -> Subgroup:
    """Smallest normal subgroup containing S: generated by all conjugates of S."""
    if S.parent != G:
        raise ValueError("subgroup of a different group")
    conj = {G.mul(G.mul(g, s), G.inv(g)) for g in range(G.order) for s in S.elements}
    return generate(G, sorted(conj))


@functools.lru_cache(maxsize=None)
def quotient(G: FinGroup, N: Subgroup) -> tuple[FinGroup, GroupHom]:
    """G/N on minimal coset representatives, with the projection."""
    if N.parent != G:
        raise ValueError("subgroup of a different group")
    if not is_normal(N):
        raise ValueError(f"{N} is not normal in {G}")
    rep_of = [min(G.mul(g, n) for n in N.elements) for g in range(G.order)]
    reps = sorted(set(rep_of))
    pos = {r: i for i, r in enumerate(reps)}
    table = tuple(tuple(pos[rep_of[G.mul(a, b)]] for b in reps) for a in reps)
    Q = FinGroup(table, labels=tuple(G.labels[r] for r in reps), name=f"{G}/{N}")
    return Q, GroupHom(G, Q, tuple(pos[r] for r in rep_of))


@functools.lru_cache(maxsize=None)
def subgroup_group(S: Subgroup) -> FinGroup:
    """S as a group in its own right, keeping the parent's labels."""
    G = S.parent
    pos = {a: i for i, a in enumerate(S.elements)}
    table = tuple(tuple(pos[G.mul(a, b)] for b in S.elements) for a in S.elements)
    return FinGroup(table, labels=tuple(G.labels[a] for a in S.elements), name=f"{G}{S}")


def inclusion(S: Subgroup) -> GroupHom:
    return GroupHom(subgroup_group(S), S.parent, S.elements)


# -- homomorphisms ---------------------------------------------------------------


def generating_set(G: FinGroup) -> list[int]:
    gens: list[int] = []
    span = trivial_subgroup(G)
    for a in range(G.order):
        if a not in span:
            gens.append(a)
            span = generate(G, gens)
    return gens


def _hom_bruteforce(G: FinGroup, H: FinGroup) -> list[GroupHom]:
    out = []
    others = [a for a in range(G.order) if a != G.e]
    for imgs in itertools.product(range(H.order), repeat=len(others)):
        m = [H.e] * G.order
        for a, y in zip(others, imgs):
            m[a] = y
        if all(m[G.mul(a, b)] == H.mul(m[a], m[b]) for a in range(G.order) for b in range(G.order)):
            out.append(GroupHom(G, H, m))
    return out


def _hom_by_generators(G: FinGroup, H: FinGroup) -> list[GroupHom]:
    gens = generating_set(G)
    out = []
    for imgs in itertools.product(range(H.order), repeat=len(gens)):
        m: list = [None] * G.order
        m[G.e] = H.e
        frontier = [G.e]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for s, t in zip(gens, imgs):
                y, v = G.mul(x, s), H.mul(m[x], t)
                if m[y] is None:
                    m[y] = v
                    frontier.append(y)
                elif m[y] != v:
                    ok = False
                    break
        if ok and all(m[G.mul(a, b)] == H.mul(m[a], m[b]) for a in range(G.order) for b in range(G.order)):
            out.append(GroupHom(G, H, m))
    return sorted(out, key=lambda h: h.mapping)


@functools.lru_cache(maxsize=None)
def hom_grp(G: FinGroup, H: FinGroup) -> tuple[GroupHom, ...]:
    """All homomorphisms G -> H, ordered by mapping."""
    if G.order <= 4:
        return tuple(_hom_bruteforce(G, H))
    return tuple(_hom_by_generators(G, H))


# -- pairs -----------------------------------------------------------------------


@hash_once
@dataclass(frozen=True)
class PairObject:
    group: FinGroup
    sub: Subgroup

    def __post_init__(self):
        if self.sub.parent != self.group:
            raise ValueError("subgroup of a different group")

    def identity(self) -> PairMorphism:
        return PairMorphism(self, self, self.group.identity())

    def __str__(self) -> str:
        return f"({self.group}, {self.sub})"


@hash_once
@dataclass(frozen=True)
class PairMorphism:
    source: PairObject
    target: PairObject
    hom: GroupHom

    def __post_init__(self):
        if self.hom.domain != self.source.group or self.hom.codomain != self.target.group:
            raise ValueError("homomorphism does not match the endpoints")
        if any(self.hom.mapping[s] not in self.target.sub for s in self.source.sub.elements):
            raise ValueError("image of the source subgroup escapes the target subgroup")

    @property
    def domain(self) -> PairObject:
        return self.source

    @property
    def codomain(self) -> PairObject:
        return self.target

    def __matmul__(self, other: PairMorphism) -> PairMorphism:
        if other.target != self.source:
            raise ValueError("cannot compose: endpoints differ")
        # a composite of pair morphisms carries subgroups into subgroups already
        m = object.__new__(PairMorphism)
        object.__setattr__(m, "source", other.source)
        object.__setattr__(m, "target", self.target)
        object.__setattr__(m, "hom", self.hom @ other.hom)
        return m

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} via {list(self.hom.mapping)}"


def hom_pair(P: PairObject, Q: PairObject) -> list[PairMorphism]:
    return [
        PairMorphism(P, Q, h)
        for h in hom_grp(P.group, Q.group)
        if all(h.mapping[s] in Q.sub for s in P.sub.elements)
    ]


def pair_objects(groups: Sequence[FinGroup]) -> list[PairObject]:
    return [PairObject(G, S) for G in groups for S in subgroups(G)]


# -- the five functors -----------------------------------------------------------


def grp_F(P: PairObject) -> FinGroup:
    return P.group


def grp_F_mor(m: PairMorphism) -> GroupHom:
    return m.hom


@functools.lru_cache(maxsize=None)
def grp_M0(G: FinGroup) -> PairObject:
    return PairObject(G, trivial_subgroup(G))


@functools.lru_cache(maxsize=None)
def grp_M1(G: FinGroup) -> PairObject:
    return PairObject(G, whole_group(G))


@functools.lru_cache(maxsize=None)
def grp_M0_mor(f: GroupHom) -> PairMorphism:
    return PairMorphism(grp_M0(f.domain), grp_M0(f.codomain), f)


@functools.lru_cache(maxsize=None)
def grp_M1_mor(f: GroupHom) -> PairMorphism:
    return PairMorphism(grp_M1(f.domain), grp_M1(f.codomain), f)


def grp_D(P: PairObject) -> FinGroup:
    return subgroup_group(P.sub)


def grp_D_mor(m: PairMorphism) -> GroupHom:
    """Restriction S -> T."""
    pos = {a: i for i, a in enumerate(m.target.sub.elements)}
    return GroupHom(grp_D(m.source), grp_D(m.target), tuple(pos[m.hom.mapping[s]] for s in m.source.sub.elements))


Closure = Callable[[FinGroup, Subgroup], Subgroup]


def grp_C(P: PairObject, closure: Closure = normal_closure) -> FinGroup:
    return quotient(P.group, closure(P.group, P.sub))[0]


def grp_projection(P: PairObject, closure: Closure = normal_closure) -> GroupHom:
    return quotient(P.group, closure(P.group, P.sub))[1]


def grp_C_mor(m: PairMorphism, closure: Closure = normal_closure) -> GroupHom:
    """The homomorphism G/S' -> H/T' induced on quotients by the normal closures."""
    src = grp_projection(m.source, closure)
    tgt = grp_projection(m.target, closure)
    values: dict[int, int] = {}
    for g, c in enumerate(src.mapping):
        v = tgt.mapping[m.hom.mapping[g]]
        if values.setdefault(c, v) != v:
            raise ValueError(f"{m} does not descend to the quotients")
    return GroupHom(src.codomain, tgt.codomain, tuple(values[c] for c in range(src.codomain.order)))


def factor_through_projection(f: GroupHom, proj: GroupHom) -> GroupHom | None:
    values: dict[int, int] = {}
    for c, v in zip(proj.mapping, f.mapping):
        if values.setdefault(c, v) != v:
            return None
    return GroupHom(proj.codomain, f.codomain, tuple(values[c] for c in range(proj.codomain.order)))


def corestrict(f: GroupHom, S: Subgroup) -> GroupHom | None:
    """f with codomain cut down to S (as a group), or None if the image escapes S."""
    pos = {a: i for i, a in enumerate(S.elements)}
    if any(y not in pos for y in f.mapping):
        return None
    return GroupHom(f.domain, subgroup_group(S), tuple(pos[y] for y in f.mapping))


# -- built-in corpus and the text format -----------------------------------------


def cyclic(n: int) -> FinGroup:
    return FinGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), name=f"C{n}")


def klein_four() -> FinGroup:
    return FinGroup(tuple(tuple(a ^ b for b in range(4)) for a in range(4)), name="V4")


def symmetric3() -> FinGroup:
    perms = list(itertools.permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = tuple(tuple(pos[tuple(p[q[x]] for x in range(3))] for q in perms) for p in perms)
    return FinGroup(table, labels=tuple("".join(map(str, p)) for p in perms), name="S3")


def corpus(max_order: int = 6) -> list[FinGroup]:
    groups = [cyclic(1), cyclic(2), cyclic(3), cyclic(4), klein_four(), cyclic(5), cyclic(6), symmetric3()]
    return [G for G in groups if G.order <= max_order]


class GroupFileError(ValueError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_groups(text: str) -> list[FinGroup]:
    """Parse records of the form: name / ``order n`` / n rows of n 1-based indices.

    Blank lines and ``#`` comments are ignored.
    """
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    groups = []
    k = 0
    while k < len(lines):
        name_line, name = lines[k]
        if k + 1 >= len(lines):
            raise GroupFileError(f"group {name!r} has no order line", name_line)
        order_line, header = lines[k + 1]
        parts = header.split()
        if len(parts) != 2 or parts[0] != "order" or not parts[1].isdigit() or int(parts[1]) < 1:
            raise GroupFileError(f"expected 'order n' for group {name!r}, got {header!r}", order_line)
        n = int(parts[1])
        rows = []
        for r in range(n):
            if k + 2 + r >= len(lines):
                raise GroupFileError(f"group {name!r} has only {r} of {n} table rows", order_line)
            row_line, row = lines[k + 2 + r]
            try:
                vals = [int(x) for x in row.split()]
            except ValueError:
                raise GroupFileError(f"non-integer entry in table of {name!r}", row_line) from None
            if len(vals) != n:
                raise GroupFileError(f"row of {name!r} has {len(vals)} entries, expected {n}", row_line)
            if any(not 1 <= x <= n for x in vals):
                raise GroupFileError(f"entry out of range 1..{n} in table of {name!r}", row_line)
            rows.append(vals)
        groups.append(validate_group(rows, name=name))
        k += 2 + n
    return groups


def format_group(G: FinGroup) -> str:
    rows = "\n".join(" ".join(str(x + 1) for x in row) for row in G.table)
    return f"{G.name}\norder {G.order}\n{rows}\n"
