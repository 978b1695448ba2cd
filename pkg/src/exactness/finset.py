"""Finite sets, total functions and the lattice of equivalence relations.

Elements are addressed by *position* internally; labels are only for display
and for building subsets (block domains keep the labels of the parent set).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field, fields
from typing import Hashable, Iterable, Iterator, Sequence


def hash_once(cls):
    """Memoize the field hash of a frozen dataclass; its values serve as dict
    keys in the hot loops of the verifiers."""
    keys = [f.name for f in fields(cls) if f.compare and f.hash is not False]

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = self.__dict__["_hash"] = hash(tuple(getattr(self, k) for k in keys))
            return h

    cls.__hash__ = __hash__
    return cls


@hash_once
@dataclass(frozen=True)
class FiniteSet:
    labels: tuple[Hashable, ...]
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        index = {x: i for i, x in enumerate(labels)}
        if len(index) != len(labels):
            raise ValueError(f"duplicate labels in {labels!r}")
        object.__setattr__(self, "_index", index)

    @classmethod
    def range(cls, n: int) -> FiniteSet:
        return cls(tuple(range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.labels)

    def __contains__(self, x) -> bool:
        return x in self._index

    def position(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ValueError(f"{x!r} is not an element of {self}") from None

    def identity(self) -> FiniteFunction:
        return FiniteFunction(self, self, tuple(range(self.size)))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.labels)) + "}"


@hash_once
@dataclass(frozen=True)
class FiniteFunction:
    """A total function, stored as a tuple of codomain positions."""

    domain: FiniteSet
    codomain: FiniteSet
    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(self.mapping)
        object.__setattr__(self, "mapping", mapping)
        if len(mapping) != self.domain.size:
            raise ValueError(f"mapping length {len(mapping)} != domain size {self.domain.size}")
        n = self.codomain.size
        for y in mapping:
            if not 0 <= y < n:
                raise ValueError(f"mapping entry {y} outside codomain of size {n}")

    @classmethod
    def from_dict(cls, domain: FiniteSet, codomain: FiniteSet, values: dict) -> FiniteFunction:
        return cls(domain, codomain, tuple(codomain.position(values[x]) for x in domain))

    def __call__(self, x):
        return self.codomain.labels[self.mapping[self.domain.position(x)]]

    def __matmul__(self, other: FiniteFunction) -> FiniteFunction:
        return compose(self, other)

    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.codomain.size

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def is_identity(self) -> bool:
        return self.domain == self.codomain and self.mapping == tuple(range(self.domain.size))

    def __str__(self) -> str:
        pairs = ", ".join(f"{x}->{self.codomain.labels[y]}" for x, y in zip(self.domain, self.mapping))
        return f"{self.domain}->{self.codomain}[{pairs}]"


def compose(g: FiniteFunction, f: FiniteFunction) -> FiniteFunction:
    """g after f."""
    if f.codomain != g.domain:
        raise ValueError(f"cannot compose: codomain {f.codomain} != domain {g.domain}")
    gm = g.mapping
    return FiniteFunction(f.domain, g.codomain, tuple(gm[y] for y in f.mapping))


def enumerate_functions(X: FiniteSet, A: FiniteSet) -> list[FiniteFunction]:
    """All |A|^|X| functions, lexicographic by mapping."""
    return [FiniteFunction(X, A, m) for m in itertools.product(range(A.size), repeat=X.size)]


def enumerate_bijections(X: FiniteSet, A: FiniteSet) -> list[FiniteFunction]:
    if X.size != A.size:
        return []
    return [FiniteFunction(X, A, m) for m in itertools.permutations(range(A.size))]


@hash_once
@dataclass(frozen=True)
class EquivRel:
    """A partition in canonical form.

    Blocks are tuples of positions, each sorted, and ordered by least element.
    Use :meth:`from_blocks` (or the lattice helpers) rather than the raw
    constructor, which only validates.
    """

    carrier: FiniteSet
    blocks: tuple[tuple[int, ...], ...]
    _block_of: tuple[int, ...] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        blocks = tuple(tuple(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        block_of = [-1] * self.carrier.size
        for i, b in enumerate(blocks):
            if not b:
                raise ValueError("empty block")
            if list(b) != sorted(b):
                raise ValueError(f"block {b} not in canonical order")
            for x in b:
                if not 0 <= x < self.carrier.size:
                    raise ValueError(f"position {x} outside carrier")
                if block_of[x] != -1:
                    raise ValueError(f"position {x} occurs in two blocks")
                block_of[x] = i
        if -1 in block_of:
            raise ValueError("blocks do not cover the carrier")
        if [b[0] for b in blocks] != sorted(b[0] for b in blocks):
            raise ValueError("blocks not ordered by least element")
        object.__setattr__(self, "_block_of", tuple(block_of))

    @classmethod
    def from_blocks(cls, carrier: FiniteSet, blocks: Iterable[Iterable[int]]) -> EquivRel:
        normal = sorted(tuple(sorted(b)) for b in blocks)
        return cls(carrier, tuple(normal))

    @classmethod
    def from_labels(cls, carrier: FiniteSet, blocks: Iterable[Iterable[Hashable]]) -> EquivRel:
        return cls.from_blocks(carrier, [[carrier.position(x) for x in b] for b in blocks])

    @classmethod
    def from_block_map(cls, carrier: FiniteSet, key: Sequence) -> EquivRel:
        """Partition whose blocks are the fibres of ``key`` (indexed by position)."""
        groups: dict = {}
        for x, k in enumerate(key):
            groups.setdefault(k, []).append(x)
        return cls.from_blocks(carrier, groups.values())

    def block_of(self, x: int) -> int:
        return self._block_of[x]

    @property
    def block_map(self) -> tuple[int, ...]:
        return self._block_of

    def related(self, x: int, y: int) -> bool:
        return self._block_of[x] == self._block_of[y]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for b in self.blocks:
            yield from itertools.product(b, repeat=2)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        lab = self.carrier.labels
        return "{" + ",".join("{" + ",".join(str(lab[x]) for x in b) + "}" for b in self.blocks) + "}"


@functools.lru_cache(maxsize=None)
def equiv_bottom(X: FiniteSet) -> EquivRel:
    return EquivRel(X, tuple((i,) for i in range(X.size)))


@functools.lru_cache(maxsize=None)
def equiv_top(X: FiniteSet) -> EquivRel:
    return EquivRel(X, (tuple(range(X.size)),) if X.size else ())


def _same_carrier(S: EquivRel, T: EquivRel) -> None:
    if S.carrier != T.carrier:
        raise ValueError(f"carrier mismatch: {S.carrier} vs {T.carrier}")


def equiv_leq(S: EquivRel, T: EquivRel) -> bool:
    """Refinement order: every block of S lies inside a block of T."""
    _same_carrier(S, T)
    t = T.block_map
    return all(len({t[x] for x in b}) == 1 for b in S.blocks)


def equiv_meet(S: EquivRel, T: EquivRel) -> EquivRel:
    _same_carrier(S, T)
    return EquivRel.from_block_map(S.carrier, list(zip(S.block_map, T.block_map)))


def equiv_join(S: EquivRel, T: EquivRel) -> EquivRel:
    _same_carrier(S, T)
    return _closure(S.carrier, itertools.chain(S.pairs(), T.pairs()))


def all_equivs(X: FiniteSet) -> list[EquivRel]:
    """Every equivalence relation on X (Bell(|X|) of them), via restricted growth strings."""
    n = X.size
    out = []

    def grow(prefix: list[int], top: int):
        if len(prefix) == n:
            out.append(EquivRel.from_block_map(X, prefix))
            return
        for k in range(top + 2):
            grow(prefix + [k], max(top, k))

    grow([], -1)
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[max(x, y)] = min(x, y)


def _closure(X: FiniteSet, pairs: Iterable[tuple[int, int]]) -> EquivRel:
    uf = _UnionFind(X.size)
    for a, b in pairs:
        uf.union(a, b)
    return EquivRel.from_block_map(X, [uf.find(x) for x in range(X.size)])


def generated_equiv(X: FiniteSet, pairs: Iterable[tuple[Hashable, Hashable]]) -> EquivRel:
    """Smallest equivalence relation containing the given pairs of elements (labels)."""
    return _closure(X, [(X.position(a), X.position(b)) for a, b in pairs])


def direct_image(f: FiniteFunction, S: EquivRel) -> EquivRel:
    if S.carrier != f.domain:
        raise ValueError(f"relation lives on {S.carrier}, function domain is {f.domain}")
    m = f.mapping
    return _closure(f.codomain, ((m[a], m[b]) for b_ in S.blocks for a, b in zip(b_, b_[1:])))


def inverse_image(f: FiniteFunction, T: EquivRel) -> EquivRel:
    if T.carrier != f.codomain:
        raise ValueError(f"relation lives on {T.carrier}, function codomain is {f.codomain}")
    t = T.block_map
    return EquivRel.from_block_map(f.domain, [t[y] for y in f.mapping])


def kernel_relation(f: FiniteFunction) -> EquivRel:
    return EquivRel.from_block_map(f.domain, f.mapping)


def image_of_top(f: FiniteFunction) -> EquivRel:
    """The relation written f1: direct image of the greatest relation on the domain."""
    return direct_image(f, equiv_top(f.domain))


@dataclass(frozen=True)
class MorphismClass:
    is_z_empty: bool
    is_null: bool

    def __post_init__(self):
        if self.is_z_empty and not self.is_null:
            raise ValueError("a Z-empty morphism is always null")


def is_z_empty(f: FiniteFunction) -> bool:
    return f.domain.size == 0 and f.codomain.size > 0


def classify(f: FiniteFunction) -> MorphismClass:
    z = is_z_empty(f)
    # every empty function (including id on the empty set) and every constant is null
    null = f.domain.size == 0 or len(set(f.mapping)) == 1
    return MorphismClass(is_z_empty=z, is_null=null)
