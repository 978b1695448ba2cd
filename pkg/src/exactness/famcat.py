"""The category Fam(C) of indexed families.

Members can be any objects exposing ``identity()``; morphisms any values with
``domain``/``codomain`` that compose with ``@``.  Both :class:`FiniteSet` and
:class:`~exactness.grppairs.FinGroup` qualify.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Sequence


@dataclass(frozen=True)
class FamObject:
    members: tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))

    @property
    def index_count(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int):
        return self.members[i]

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.members)) + ")"


@dataclass(frozen=True)
class FamMorphism:
    source: FamObject
    target: FamObject
    index_map: tuple[int, ...]
    components: tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, "index_map", tuple(self.index_map))
        object.__setattr__(self, "components", tuple(self.components))
        n = self.source.index_count
        if len(self.index_map) != n or len(self.components) != n:
            raise ValueError(f"family morphism needs {n} indices and components")
        for i, (j, c) in enumerate(zip(self.index_map, self.components)):
            if not 0 <= j < self.target.index_count:
                raise ValueError(f"index {i} maps outside the target family")
            if c.domain != self.source.members[i] or c.codomain != self.target.members[j]:
                raise ValueError(f"component {i} does not run from source[{i}] to target[{j}]")

    def __len__(self) -> int:
        return len(self.components)

    def __str__(self) -> str:
        parts = ", ".join(f"{i}->{j}: {c}" for i, (j, c) in enumerate(zip(self.index_map, self.components)))
        return f"[{parts}]"


def fam_identity(A: FamObject) -> FamMorphism:
    return FamMorphism(A, A, tuple(range(A.index_count)), tuple(m.identity() for m in A.members))


def fam_compose(q: FamMorphism, p: FamMorphism) -> FamMorphism:
    """q after p."""
    if p.target != q.source:
        raise ValueError(f"cannot compose family morphisms: {p.target} != {q.source}")
    index_map = tuple(q.index_map[j] for j in p.index_map)
    components = tuple(q.components[j] @ c for j, c in zip(p.index_map, p.components))
    return FamMorphism(p.source, q.target, index_map, components)


def fam_of(A) -> FamObject:
    return FamObject((A,))


def fam_of_morphism(f) -> FamMorphism:
    return FamMorphism(fam_of(f.domain), fam_of(f.codomain), (0,), (f,))


def fam_equal(p: FamMorphism, q: FamMorphism) -> bool:
    return p == q


def _same_size(a, b) -> bool:
    return len(a) == len(b)


def fam_isomorphic(A: FamObject, B: FamObject, member_iso: Callable[[Any, Any], bool] = _same_size) -> bool:
    """True if some reindexing bijection pairs up isomorphic members.

    The default member test compares cardinalities, which is exact for sets.
    """
    if A.index_count != B.index_count:
        return False
    return any(
        all(member_iso(a, B.members[j]) for a, j in zip(A.members, perm))
        for perm in itertools.permutations(range(B.index_count))
    )


def fam_morphism_isomorphic(p: FamMorphism, q: FamMorphism, member_iso: Callable[[Any, Any], bool] = _same_size) -> bool:
    """Coarse comparison for perturbed representatives: same index shape up to
    relabelling of the source and target index sets, with matching member sizes."""
    if p.source.index_count != q.source.index_count or p.target.index_count != q.target.index_count:
        return False
    for sigma in itertools.permutations(range(p.source.index_count)):
        for tau in itertools.permutations(range(p.target.index_count)):
            if all(
                tau[p.index_map[i]] == q.index_map[sigma[i]]
                and member_iso(p.source.members[i], q.source.members[sigma[i]])
                for i in range(p.source.index_count)
            ) and all(member_iso(p.target.members[j], q.target.members[tau[j]]) for j in range(p.target.index_count)):
                return True
    return False


def families(members: Sequence, max_count: int) -> list[FamObject]:
    """All families of length <= max_count drawn (with repetition) from members."""
    return [FamObject(c) for n in range(max_count + 1) for c in itertools.product(members, repeat=n)]
