"""The Set instance: SetRel / SetRel*, the functors F, M0, M1, C and the
R-functor D, in/out families, and the end-adjunction bijections."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from exactness.famcat import FamMorphism, FamObject
from exactness.finset import (
    EquivRel,
    FiniteFunction,
    FiniteSet,
    hash_once,
    all_equivs,
    direct_image,
    enumerate_functions,
    equiv_bottom,
    equiv_leq,
    equiv_top,
    is_z_empty,
)


class UndefinedOnZEmpty(ValueError):
    """C and D are not defined on morphisms whose underlying function is Z-empty."""


@hash_once
@dataclass(frozen=True)
class RelObject:
    carrier: FiniteSet
    relation: EquivRel

    def __post_init__(self):
        if self.relation.carrier != self.carrier:
            raise ValueError("relation is not on this carrier")

    def identity(self) -> RelMorphism:
        return RelMorphism(self, self, self.carrier.identity())

    def __str__(self) -> str:
        return f"({self.carrier}, {self.relation})"


@hash_once
@dataclass(frozen=True)
class RelMorphism:
    source: RelObject
    target: RelObject
    map: FiniteFunction

    def __post_init__(self):
        if self.map.domain != self.source.carrier or self.map.codomain != self.target.carrier:
            raise ValueError("underlying function does not match the endpoints")
        if not _carries(self.map, self.source.relation, self.target.relation):
            raise ValueError(f"{self.map} does not carry {self.source.relation} into {self.target.relation}")

    @property
    def domain(self) -> RelObject:
        return self.source

    @property
    def codomain(self) -> RelObject:
        return self.target

    @property
    def starred(self) -> bool:
        return not is_z_empty(self.map)

    def __matmul__(self, other: RelMorphism) -> RelMorphism:
        if other.target != self.source:
            raise ValueError("cannot compose: endpoints differ")
        return RelMorphism(other.source, self.target, self.map @ other.map)

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} via {self.map.mapping}"


def rel_object(X: FiniteSet, blocks=None) -> RelObject:
    """Shorthand: ``blocks`` given as label lists; None means the bottom relation."""
    S = equiv_bottom(X) if blocks is None else EquivRel.from_labels(X, blocks)
    return RelObject(X, S)


def is_rel_morphism(f: FiniteFunction, S: EquivRel, T: EquivRel, starred: bool = False) -> bool:
    if S.carrier != f.domain or T.carrier != f.codomain:
        raise ValueError("relations do not sit on the endpoints of the function")
    if starred and is_z_empty(f):
        return False
    return equiv_leq(direct_image(f, S), T)


def _carries(f: FiniteFunction, S: EquivRel, T: EquivRel) -> bool:
    # S <= f^-1 T, the adjoint form of fS <= T; avoids a closure per construction
    t, m = T.block_map, f.mapping
    return all(len({t[m[x]] for x in b}) == 1 for b in S.blocks)


def hom_set(X: FiniteSet, A: FiniteSet, starred: bool = True) -> list[FiniteFunction]:
    fs = enumerate_functions(X, A)
    return [f for f in fs if not is_z_empty(f)] if starred else fs


def hom_setrel(X: RelObject, A: RelObject, starred: bool = False) -> list[RelMorphism]:
    return [
        RelMorphism(X, A, f)
        for f in enumerate_functions(X.carrier, A.carrier)
        if is_rel_morphism(f, X.relation, A.relation, starred)
    ]


def rel_objects(max_size: int) -> list[RelObject]:
    """One carrier {0..n-1} per size n <= max_size, with every relation on it."""
    out = []
    for n in range(max_size + 1):
        X = FiniteSet.range(n)
        out.extend(RelObject(X, S) for S in all_equivs(X))
    return out


# -- the form F and the middle functors ----------------------------------------


def form_F(m: RelMorphism) -> FiniteFunction:
    return m.map


def form_F_obj(X: RelObject) -> FiniteSet:
    return X.carrier


@functools.lru_cache(maxsize=None)
def M0(X: FiniteSet) -> RelObject:
    return RelObject(X, equiv_bottom(X))


@functools.lru_cache(maxsize=None)
def M1(X: FiniteSet) -> RelObject:
    return RelObject(X, equiv_top(X))


def M0_mor(f: FiniteFunction) -> RelMorphism:
    return RelMorphism(M0(f.domain), M0(f.codomain), f)


def M1_mor(f: FiniteFunction) -> RelMorphism:
    return RelMorphism(M1(f.domain), M1(f.codomain), f)


# -- in/out families ------------------------------------------------------------


@dataclass(frozen=True)
class InFamily:
    object: RelObject
    inmorphisms: tuple[FiniteFunction, ...]

    def __len__(self):
        return len(self.inmorphisms)


@dataclass(frozen=True)
class OutFamily:
    object: RelObject
    outmorphisms: tuple[FiniteFunction, ...]


def block_domain(X: RelObject, k: int) -> FiniteSet:
    lab = X.carrier.labels
    return FiniteSet(tuple(lab[x] for x in X.relation.blocks[k]))


@functools.lru_cache(maxsize=None)
def in_family(X: RelObject) -> InFamily:
    if X.carrier.size == 0:
        return InFamily(X, (X.carrier.identity(),))
    return InFamily(
        X,
        tuple(
            FiniteFunction(block_domain(X, k), X.carrier, block)
            for k, block in enumerate(X.relation.blocks)
        ),
    )


@functools.lru_cache(maxsize=None)
def out_family(X: RelObject) -> OutFamily:
    return OutFamily(X, (FiniteFunction(X.carrier, C_obj(X), X.relation.block_map),))


def factor_through_mono(f: FiniteFunction, mono: FiniteFunction) -> FiniteFunction | None:
    """The unique u with f = mono . u, or None if f does not factor."""
    if f.codomain != mono.codomain:
        raise ValueError("codomains differ")
    where = {y: i for i, y in enumerate(mono.mapping)}
    try:
        return FiniteFunction(f.domain, mono.domain, tuple(where[y] for y in f.mapping))
    except KeyError:
        return None


def factor_through_epi(f: FiniteFunction, epi: FiniteFunction) -> FiniteFunction | None:
    """The unique u with f = u . epi, or None if f is not constant on the fibres of epi."""
    if f.domain != epi.domain:
        raise ValueError("domains differ")
    values: dict[int, int] = {}
    for e, y in zip(epi.mapping, f.mapping):
        if values.setdefault(e, y) != y:
            return None
    if len(values) != epi.codomain.size:
        return None
    return FiniteFunction(epi.codomain, f.codomain, tuple(values[i] for i in range(epi.codomain.size)))


# -- D as an R-functor and C as a functor ---------------------------------------


def D_obj(X: RelObject) -> FamObject:
    return FamObject(tuple(l.domain for l in in_family(X).inmorphisms))


def d_factorizations(f: RelMorphism) -> list[tuple[int, int, FiniteFunction]]:
    """Every (k, j, q) with f . l_k = l_j . q, ordered by (k, j).

    This is D read as a relation; it is defined on all of SetRel.
    """
    source = in_family(f.source).inmorphisms
    target = in_family(f.target).inmorphisms
    out = []
    for k, lk in enumerate(source):
        flk = f.map @ lk
        for j, lj in enumerate(target):
            q = factor_through_mono(flk, lj)
            if q is not None:
                out.append((k, j, q))
    return out


def D_relation(f: RelMorphism) -> FamMorphism:
    """D(f) as the family of all factorizations, one member per (k, j) pair.

    Agrees with :func:`D_mor` on starred morphisms; on a Z-empty morphism the
    source family may have more members than D_obj(source).
    """
    facts = d_factorizations(f)
    members = tuple(q.domain for _, _, q in facts)
    return FamMorphism(FamObject(members), D_obj(f.target), tuple(j for _, j, _ in facts), tuple(q for _, _, q in facts))


def D_mor(f: RelMorphism) -> FamMorphism:
    if not f.starred:
        raise UndefinedOnZEmpty(f"D is undefined on the Z-empty morphism {f}")
    facts = d_factorizations(f)
    if [k for k, _, _ in facts] != list(range(len(in_family(f.source)))):
        raise AssertionError(f"inmorphisms of {f.source} do not factor uniquely along {f}")
    return FamMorphism(D_obj(f.source), D_obj(f.target), tuple(j for _, j, _ in facts), tuple(q for _, _, q in facts))


def C_obj(X: RelObject) -> FiniteSet:
    return FiniteSet.range(len(X.relation.blocks))


def C_mor(f: RelMorphism) -> FiniteFunction:
    """The unique p with r_T . f = p . r_S."""
    if not f.starred:
        raise UndefinedOnZEmpty(f"C is undefined on the Z-empty morphism {f}")
    (r_s,) = out_family(f.source).outmorphisms
    (r_t,) = out_family(f.target).outmorphisms
    p = factor_through_epi(r_t @ f.map, r_s)
    if p is None:
        raise AssertionError(f"{f} does not descend to the quotients")
    return p


# -- end adjunctions --------------------------------------------------------------


@dataclass(frozen=True)
class TaggedHom:
    """An element of a coproduct of homsets: the summand index plus the map."""

    block_index: int
    map: object

    def __str__(self) -> str:
        return f"<{self.block_index}: {self.map}>"


def alpha(m: RelMorphism) -> TaggedHom:
    """hom(M1 X, A) -> coproduct of hom(X, D(A)_j): corestrict to the class holding the image."""
    X = m.source.carrier
    if m.source != M1(X):
        raise ValueError("alpha expects a morphism out of M1(X)")
    if not m.starred:
        raise UndefinedOnZEmpty(f"alpha is undefined on the Z-empty morphism {m}")
    hits = []
    for j, lj in enumerate(in_family(m.target).inmorphisms):
        q = factor_through_mono(m.map, lj)
        if q is not None:
            hits.append(TaggedHom(j, q))
    if len(hits) != 1:
        raise AssertionError(f"{m} factors through {len(hits)} inmorphisms, expected exactly one")
    return hits[0]


def alpha_inv(X: FiniteSet, A: RelObject, t: TaggedHom) -> RelMorphism:
    inms = in_family(A).inmorphisms
    if not 0 <= t.block_index < len(inms):
        raise ValueError(f"tag {t.block_index} outside D({A})")
    lj = inms[t.block_index]
    if t.map.domain != X or t.map.codomain != lj.domain:
        raise ValueError(f"{t} is not a map from {X} into D({A})_{t.block_index}")
    if is_z_empty(t.map):
        raise UndefinedOnZEmpty(f"{t} is Z-empty")
    return RelMorphism(M1(X), A, lj @ t.map)


def beta(m: RelMorphism) -> TaggedHom:
    """hom(X, M0 A) -> hom(C X, A): the unique p with p . r_S = m."""
    A = m.target.carrier
    if m.target != M0(A):
        raise ValueError("beta expects a morphism into M0(A)")
    if not m.starred:
        raise UndefinedOnZEmpty(f"beta is undefined on the Z-empty morphism {m}")
    (r_s,) = out_family(m.source).outmorphisms
    p = factor_through_epi(m.map, r_s)
    if p is None:
        raise AssertionError(f"{m} does not kill {m.source.relation}")
    return TaggedHom(0, p)


def beta_inv(X: RelObject, A: FiniteSet, t: TaggedHom) -> RelMorphism:
    if t.block_index != 0:
        raise ValueError("C is an ordinary functor: the only tag is 0")
    (r_s,) = out_family(X).outmorphisms
    if t.map.domain != r_s.codomain or t.map.codomain != A:
        raise ValueError(f"{t} is not a map C({X}) -> {A}")
    if is_z_empty(t.map):
        raise UndefinedOnZEmpty(f"{t} is Z-empty")
    return RelMorphism(X, M0(A), t.map @ r_s)


def recover_families(X: RelObject) -> tuple[OutFamily, InFamily]:
    """Rebuild the out/in families by applying C to (X,0) -> (X,S) and D to (X,S) -> (X,1)."""
    C = X.carrier
    to_s = RelMorphism(M0(C), X, C.identity())
    to_top = RelMorphism(X, M1(C), C.identity())
    # C(M0 X) is the set of singleton blocks, canonically in bijection with X
    p = C_mor(to_s)
    out = OutFamily(X, (FiniteFunction(C, p.codomain, p.mapping),))
    d = D_mor(to_top)
    top_inms = in_family(M1(C)).inmorphisms
    inn = InFamily(X, tuple(top_inms[j] @ q for j, q in zip(d.index_map, d.components)))
    if out != out_family(X) or inn != in_family(X):
        raise AssertionError(f"recovered families of {X} differ from the canonical ones")
    return out, inn

