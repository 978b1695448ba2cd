"""Exhaustive verification of functoriality, (R-)adjunctions, naturality,
the axioms on in/out families and the Galois connection."""

from __future__ import annotations

import functools
import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from exactness import grppairs as gp
from exactness import setrel as sr
from exactness.famcat import fam_compose, fam_equal, fam_identity, fam_of, fam_of_morphism
from exactness.finset import (
    FiniteFunction,
    FiniteSet,
    all_equivs,
    classify,
    direct_image,
    enumerate_bijections,
    enumerate_functions,
    equiv_bottom,
    equiv_leq,
    equiv_top,
    image_of_top,
    inverse_image,
    is_z_empty,
)

DEFAULT_FAILURE_CAP = 10


@dataclass(frozen=True)
class Failure:
    case: str
    expected: str
    actual: str

    def to_dict(self) -> dict:
        return {"case": self.case, "expected": self.expected, "actual": self.actual}


@dataclass
class VerificationReport:
    suite_name: str
    cases_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0
    info: dict = field(default_factory=dict)
    failure_cap: int = DEFAULT_FAILURE_CAP
    failure_count: int = 0
    _per_cell: Counter = field(default_factory=Counter, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def check(self, ok: bool, case, expected="", actual="", cell=None) -> bool:
        """Count one case; record a failure unless the cell already hit the cap."""
        self.cases_checked += 1
        if not ok:
            self.fail(case, expected, actual, cell)
        return ok

    def fail(self, case, expected="", actual="", cell=None) -> None:
        self.failure_count += 1
        key = cell if cell is not None else case
        self._per_cell[key] += 1
        if self._per_cell[key] <= self.failure_cap:
            self.failures.append(Failure(str(case), str(expected), str(actual)))

    def guarded(self, case, fn: Callable, cell=None):
        """Run fn; an exception becomes a failure and the result is None."""
        try:
            return fn()
        except Exception as exc:  # noqa: BLE001 -- a rule throwing on legal input is a finding
            self.cases_checked += 1
            self.fail(case, "no exception", f"{type(exc).__name__}: {exc}", cell)
            return None

    def merge(self, other: VerificationReport, prefix: str = "") -> VerificationReport:
        out = VerificationReport(
            self.suite_name,
            self.cases_checked + other.cases_checked,
            self.failures + [Failure(prefix + f.case, f.expected, f.actual) for f in other.failures],
            self.elapsed + other.elapsed,
            {**self.info, **other.info},
            self.failure_cap,
            self.failure_count + other.failure_count,
        )
        return out

    def to_dict(self) -> dict:
        d = {
            "name": self.suite_name,
            "cases": self.cases_checked,
            "failures": [f.to_dict() for f in self.failures],
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }
        if self.info:
            d["info"] = self.info
        return d


class _timed:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed += time.perf_counter() - self.t0
        return False


def combine(name: str, parts: Sequence[tuple[str, VerificationReport]], cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    out = VerificationReport(name, failure_cap=cap)
    for label, rep in parts:
        out = out.merge(rep, prefix=f"[{label}] ")
        out.info[label] = {"cases": rep.cases_checked, "failures": rep.failure_count}
    return out


# -- universes -------------------------------------------------------------------


@dataclass
class Universe:
    """A finite full subcategory: listed objects plus a hom enumerator."""

    objects: Sequence[Any]
    hom: Callable[[Any, Any], Sequence[Any]]
    size_caps: dict = field(default_factory=dict)

    def __post_init__(self):
        self.hom = functools.lru_cache(maxsize=None)(self.hom)

    def morphisms(self) -> Iterable:
        for a, b in itertools.product(self.objects, repeat=2):
            yield from self.hom(a, b)

    def composable_pairs(self) -> Iterable[tuple[Any, Any]]:
        """Pairs (f, g) with g after f defined."""
        for a, b, c in itertools.product(self.objects, repeat=3):
            gs = self.hom(b, c)
            for f in self.hom(a, b):
                for g in gs:
                    yield f, g


def set_universe(max_size: int, starred: bool = True) -> Universe:
    objs = [FiniteSet.range(n) for n in range(max_size + 1)]
    return Universe(objs, lambda a, b: sr.hom_set(a, b, starred), {"max_set_size": max_size})


def setrel_universe(max_size: int, starred: bool = True) -> Universe:
    return Universe(sr.rel_objects(max_size), lambda a, b: sr.hom_setrel(a, b, starred), {"max_set_size": max_size})


def grp_universe(groups: Sequence[gp.FinGroup]) -> Universe:
    return Universe(list(groups), gp.hom_grp)


def pair_universe(groups: Sequence[gp.FinGroup]) -> Universe:
    return Universe(gp.pair_objects(groups), gp.hom_pair)


# -- functoriality ---------------------------------------------------------------


def check_functoriality(
    map_obj: Callable,
    map_mor: Callable,
    universe: Universe,
    name: str = "functoriality",
    cap: int = DEFAULT_FAILURE_CAP,
) -> VerificationReport:
    """Identity and composition preservation, with values compared in Fam."""
    rep = VerificationReport(name, failure_cap=cap)
    with _timed(rep):
        cache: dict = {}

        def image(m):
            if m not in cache:
                cache[m] = map_mor(m)
            return cache[m]

        for a in universe.objects:
            ident = a.identity()
            got = rep.guarded(f"identity on {a}", lambda: image(ident), cell=str(a))
            if got is not None:
                want = fam_identity(map_obj(a))
                rep.check(fam_equal(got, want), f"identity on {a}", want, got, cell=str(a))
        for f, g in universe.composable_pairs():
            rep.cases_checked += 1
            try:
                whole = image(g @ f)
                parts = fam_compose(image(g), image(f))
            except Exception as exc:  # noqa: BLE001
                rep.fail(f"g.f with f={f}, g={g}", "no exception", f"{type(exc).__name__}: {exc}", (f.domain, f.codomain, g.codomain))
                continue
            if not fam_equal(whole, parts):
                rep.fail(f"g.f with f={f}, g={g}", parts, whole, (f.domain, f.codomain, g.codomain))
    return rep


def as_r_functor(F_obj: Callable, F_mor: Callable) -> tuple[Callable, Callable]:
    """Compose an ordinary functor with the identity R-functor into Fam."""
    return (lambda a: fam_of(F_obj(a))), (lambda m: fam_of_morphism(F_mor(m)))


# -- adjunctions -----------------------------------------------------------------


@dataclass
class AdjunctionData:
    """A candidate natural bijection hom_left(x, a) ~ hom_right(x, a).

    ``x`` varies contravariantly along ``x_hom(x2, x)`` and ``a`` covariantly
    along ``a_hom(a, a2)``.  ``act_left(f, g, e)`` / ``act_right(f, g, e)``
    transport an element along f: x2 -> x and g: a -> a2.
    """

    name: str
    x_objects: Sequence[Any]
    a_objects: Sequence[Any]
    x_hom: Callable
    a_hom: Callable
    hom_left: Callable
    hom_right: Callable
    forward: Callable  # (x, a, e) -> right element
    backward: Callable  # (x, a, t) -> left element
    act_left: Callable
    act_right: Callable


def check_r_adjunction(data: AdjunctionData, cap: int = DEFAULT_FAILURE_CAP, naturality: bool = True) -> VerificationReport:
    rep = VerificationReport(data.name, failure_cap=cap)
    with _timed(rep):
        left = functools.lru_cache(maxsize=None)(data.hom_left)
        right = functools.lru_cache(maxsize=None)(data.hom_right)
        fwd_cache: dict = {}

        def fwd(x, a, e):
            key = (x, a, e)
            if key not in fwd_cache:
                fwd_cache[key] = data.forward(x, a, e)
            return fwd_cache[key]

        for x, a in itertools.product(data.x_objects, data.a_objects):
            cell = f"x={x}, a={a}"
            ls = rep.guarded(f"left homset at {cell}", lambda: left(x, a), cell=cell)
            rs = rep.guarded(f"right homset at {cell}", lambda: right(x, a), cell=cell)
            if ls is None or rs is None:
                continue
            rset = set(rs)
            rep.check(len(ls) == len(rs), f"homset sizes at {cell}", len(rs), len(ls), cell=cell)
            images = []
            for e in ls:
                case = f"forward then backward on {e} at {cell}"
                t = rep.guarded(case, lambda: fwd(x, a, e), cell=cell)
                if t is None:
                    continue
                images.append(t)
                rep.check(t in rset, f"forward image of {e} lies in the right homset at {cell}", "member", t, cell=cell)
                back = rep.guarded(case, lambda: data.backward(x, a, t), cell=cell)
                if back is not None:
                    rep.check(back == e, case, e, back, cell=cell)
            rep.check(len(set(images)) == len(images), f"forward injective at {cell}", len(images), len(set(images)), cell=cell)
            for t in rs:
                case = f"backward then forward on {t} at {cell}"
                e = rep.guarded(case, lambda: data.backward(x, a, t), cell=cell)
                if e is None:
                    continue
                again = rep.guarded(case, lambda: fwd(x, a, e), cell=cell)
                if again is not None:
                    rep.check(again == t, case, t, again, cell=cell)
        if naturality:
            _check_naturality(data, rep, left, fwd)
    return rep


def _check_naturality(data: AdjunctionData, rep: VerificationReport, left: Callable, fwd: Callable) -> None:
    x_hom = functools.lru_cache(maxsize=None)(data.x_hom)
    a_hom = functools.lru_cache(maxsize=None)(data.a_hom)
    for x2, x in itertools.product(data.x_objects, repeat=2):
        fs = x_hom(x2, x)
        if not fs:
            continue
        for a, a2 in itertools.product(data.a_objects, repeat=2):
            gs = a_hom(a, a2)
            try:
                es = left(x, a)
            except Exception:  # noqa: BLE001 -- already reported by the bijection pass
                continue
            if not gs or not es:
                continue
            cell = f"square x'={x2}, x={x}, a={a}, a'={a2}"
            for f, g in itertools.product(fs, gs):
                for e in es:
                    rep.cases_checked += 1
                    try:
                        top = fwd(x, a, e)
                        lhs = fwd(x2, a2, data.act_left(f, g, e))
                        rhs = data.act_right(f, g, top)
                    except Exception as exc:  # noqa: BLE001
                        rep.fail(f"naturality at f={f}, g={g}, e={e}", "no exception", f"{type(exc).__name__}: {exc}", cell)
                        continue
                    if lhs != rhs:
                        rep.fail(f"naturality at f={f}, g={g}, e={e}", rhs, lhs, cell)


def check_adjunction(data: AdjunctionData, cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    """Ordinary adjunction check: the same engine with plain homsets on both sides."""
    return check_r_adjunction(data, cap)


def as_r_adjunction(data: AdjunctionData) -> AdjunctionData:
    """Present an ordinary adjunction through singleton families: every element
    is tagged with summand 0 on both sides."""
    tag = lambda e: sr.TaggedHom(0, e)  # noqa: E731
    return AdjunctionData(
        name=data.name + " (via singleton families)",
        x_objects=data.x_objects,
        a_objects=data.a_objects,
        x_hom=data.x_hom,
        a_hom=data.a_hom,
        hom_left=lambda x, a: [tag(e) for e in data.hom_left(x, a)],
        hom_right=lambda x, a: [tag(e) for e in data.hom_right(x, a)],
        forward=lambda x, a, e: tag(data.forward(x, a, _untag(e))),
        backward=lambda x, a, t: tag(data.backward(x, a, _untag(t))),
        act_left=lambda f, g, e: tag(data.act_left(f, g, _untag(e))),
        act_right=lambda f, g, t: tag(data.act_right(f, g, _untag(t))),
    )


def _untag(t: sr.TaggedHom):
    if t.block_index != 0:
        raise ValueError(f"singleton family has no summand {t.block_index}")
    return t.map


def corrupt_forward(data: AdjunctionData) -> AdjunctionData:
    """Swap the forward images of the first two elements of the first cell
    with at least two elements."""
    for x, a in itertools.product(data.x_objects, data.a_objects):
        es = data.hom_left(x, a)
        if len(es) >= 2:
            e0, e1, cx, ca = es[0], es[1], x, a
            break
    else:
        raise ValueError("no cell has two elements to swap")
    swap = {e0: e1, e1: e0}

    def forward(x, a, e):
        if x == cx and a == ca and e in swap:
            return data.forward(x, a, swap[e])
        return data.forward(x, a, e)

    return AdjunctionData(**{**data.__dict__, "name": data.name + " [corrupted]", "forward": forward})


# -- the Set chain ---------------------------------------------------------------


def set_chain_adjunctions(max_size: int = 3) -> list[AdjunctionData]:
    sets = [FiniteSet.range(n) for n in range(max_size + 1)]
    rels = sr.rel_objects(max_size)
    set_hom = functools.lru_cache(maxsize=None)(lambda a, b: tuple(sr.hom_set(a, b, True)))
    rel_hom = functools.lru_cache(maxsize=None)(lambda a, b: tuple(sr.hom_setrel(a, b, True)))
    d_mor = functools.lru_cache(maxsize=None)(sr.D_mor)
    c_mor = functools.lru_cache(maxsize=None)(sr.C_mor)

    def d_right(X, A):
        return [
            sr.TaggedHom(j, q)
            for j, L in enumerate(sr.D_obj(A).members)
            for q in set_hom(X, L)
        ]

    def d_act_right(f, g, t):
        # the family {D(g)_i . h . f} indexed by the members of D(g) leaving summand t
        d = d_mor(g)
        fam = [(j, c) for k, (j, c) in enumerate(zip(d.index_map, d.components)) if k == t.block_index]
        if len(fam) != 1:
            raise AssertionError(f"{len(fam)} members of D({g}) compose with summand {t.block_index}")
        j, c = fam[0]
        return sr.TaggedHom(j, c @ t.map @ f)

    m1_d = AdjunctionData(
        name="M1' -| D",
        x_objects=sets,
        a_objects=rels,
        x_hom=set_hom,
        a_hom=rel_hom,
        hom_left=lambda X, A: rel_hom(sr.M1(X), A),
        hom_right=d_right,
        forward=lambda X, A, m: sr.alpha(m),
        backward=sr.alpha_inv,
        act_left=lambda f, g, m: g @ m @ sr.M1_mor(f),
        act_right=d_act_right,
    )
    c_m0 = AdjunctionData(
        name="C -| M0'",
        x_objects=rels,
        a_objects=sets,
        x_hom=rel_hom,
        a_hom=set_hom,
        hom_left=lambda X, A: rel_hom(X, sr.M0(A)),
        hom_right=lambda X, A: [sr.TaggedHom(0, p) for p in set_hom(sr.C_obj(X), A)],
        forward=lambda X, A, m: sr.beta(m),
        backward=sr.beta_inv,
        act_left=lambda g, f, m: sr.M0_mor(f) @ m @ g,
        act_right=lambda g, f, t: sr.TaggedHom(0, f @ t.map @ c_mor(g)),
    )
    m0_f = AdjunctionData(
        name="M0 -| F",
        x_objects=sets,
        a_objects=rels,
        x_hom=set_hom,
        a_hom=rel_hom,
        hom_left=lambda X, A: rel_hom(sr.M0(X), A),
        hom_right=lambda X, A: set_hom(X, sr.form_F_obj(A)),
        forward=lambda X, A, m: sr.form_F(m),
        backward=lambda X, A, h: sr.RelMorphism(sr.M0(X), A, h),
        act_left=lambda f, g, m: g @ m @ sr.M0_mor(f),
        act_right=lambda f, g, h: sr.form_F(g) @ h @ f,
    )
    f_m1 = AdjunctionData(
        name="F -| M1",
        x_objects=rels,
        a_objects=sets,
        x_hom=rel_hom,
        a_hom=set_hom,
        hom_left=lambda X, A: set_hom(sr.form_F_obj(X), A),
        hom_right=lambda X, A: rel_hom(X, sr.M1(A)),
        forward=lambda X, A, h: sr.RelMorphism(X, sr.M1(A), h),
        backward=lambda X, A, m: sr.form_F(m),
        act_left=lambda g, f, h: f @ h @ sr.form_F(g),
        act_right=lambda g, f, m: sr.M1_mor(f) @ m @ g,
    )
    return [c_m0, m0_f, f_m1, m1_d]


def check_middle_homsets(max_size: int = 3, cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    """The middle bijections are identities on underlying functions, so the
    enumerated homsets must coincide as sets of functions."""
    rep = VerificationReport("middle homsets", failure_cap=cap)
    with _timed(rep):
        sets = [FiniteSet.range(n) for n in range(max_size + 1)]
        for X in sets:
            for A in sr.rel_objects(max_size):
                lhs = {m.map for m in sr.hom_setrel(sr.M0(X), A, starred=True)}
                rhs = set(sr.hom_set(X, A.carrier, starred=True))
                rep.check(lhs == rhs, f"hom(M0 {X}, {A}) vs hom({X}, F{A})", len(rhs), len(lhs))
        for X in sr.rel_objects(max_size):
            for A in sets:
                lhs = set(sr.hom_set(X.carrier, A, starred=True))
                rhs = {m.map for m in sr.hom_setrel(X, sr.M1(A), starred=True)}
                rep.check(lhs == rhs, f"hom(F{X}, {A}) vs hom({X}, M1 {A})", len(lhs), len(rhs))
    return rep


# -- the Grp chain ---------------------------------------------------------------


def grp_chain_adjunctions(groups: Sequence[gp.FinGroup], closure: gp.Closure = gp.normal_closure) -> list[AdjunctionData]:
    pairs = gp.pair_objects(groups)
    grp_hom = lambda G, H: gp.hom_grp(G, H)  # noqa: E731
    pair_hom = functools.lru_cache(maxsize=None)(lambda P, Q: tuple(gp.hom_pair(P, Q)))

    def c_forward(P, H, p):
        # hom(C P, H) -> hom(P, M0 H): precompose with the projection
        return gp.PairMorphism(P, gp.grp_M0(H), p @ gp.grp_projection(P, closure))

    def c_backward(P, H, m):
        p = gp.factor_through_projection(m.hom, gp.grp_projection(P, closure))
        if p is None:
            raise ValueError(f"{m} is not constant on cosets of the closure")
        return p

    c_m0 = AdjunctionData(
        name="C -| M0",
        x_objects=pairs,
        a_objects=groups,
        x_hom=pair_hom,
        a_hom=grp_hom,
        hom_left=lambda P, H: gp.hom_grp(gp.grp_C(P, closure), H),
        hom_right=lambda P, H: pair_hom(P, gp.grp_M0(H)),
        forward=c_forward,
        backward=c_backward,
        act_left=lambda g, h, p: h @ p @ gp.grp_C_mor(g, closure),
        act_right=lambda g, h, m: gp.grp_M0_mor(h) @ m @ g,
    )
    m0_f = AdjunctionData(
        name="M0 -| F",
        x_objects=groups,
        a_objects=pairs,
        x_hom=grp_hom,
        a_hom=pair_hom,
        hom_left=lambda G, Q: pair_hom(gp.grp_M0(G), Q),
        hom_right=lambda G, Q: gp.hom_grp(G, gp.grp_F(Q)),
        forward=lambda G, Q, m: gp.grp_F_mor(m),
        backward=lambda G, Q, h: gp.PairMorphism(gp.grp_M0(G), Q, h),
        act_left=lambda f, g, m: g @ m @ gp.grp_M0_mor(f),
        act_right=lambda f, g, h: gp.grp_F_mor(g) @ h @ f,
    )
    f_m1 = AdjunctionData(
        name="F -| M1",
        x_objects=pairs,
        a_objects=groups,
        x_hom=pair_hom,
        a_hom=grp_hom,
        hom_left=lambda P, H: gp.hom_grp(gp.grp_F(P), H),
        hom_right=lambda P, H: pair_hom(P, gp.grp_M1(H)),
        forward=lambda P, H, h: gp.PairMorphism(P, gp.grp_M1(H), h),
        backward=lambda P, H, m: gp.grp_F_mor(m),
        act_left=lambda g, f, h: f @ h @ gp.grp_F_mor(g),
        act_right=lambda g, f, m: gp.grp_M1_mor(f) @ m @ g,
    )

    def d_forward(G, Q, m):
        r = gp.corestrict(m.hom, Q.sub)
        if r is None:
            raise ValueError(f"{m} does not land in {Q.sub}")
        return r

    m1_d = AdjunctionData(
        name="M1 -| D",
        x_objects=groups,
        a_objects=pairs,
        x_hom=grp_hom,
        a_hom=pair_hom,
        hom_left=lambda G, Q: pair_hom(gp.grp_M1(G), Q),
        hom_right=lambda G, Q: gp.hom_grp(G, gp.grp_D(Q)),
        forward=d_forward,
        backward=lambda G, Q, r: gp.PairMorphism(gp.grp_M1(G), Q, gp.inclusion(Q.sub) @ r),
        act_left=lambda f, g, m: g @ m @ gp.grp_M1_mor(f),
        act_right=lambda f, g, r: gp.grp_D_mor(g) @ r @ f,
    )
    return [c_m0, m0_f, f_m1, m1_d]


def find_group(groups: Sequence[gp.FinGroup], name: str) -> gp.FinGroup | None:
    return next((G for G in groups if G.name == name), None)


def check_grp_counts(groups: Sequence[gp.FinGroup], closure: gp.Closure = gp.normal_closure, cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    """Independent enumeration of both sides of the end adjunctions, plus the
    (S3, <transposition>) -> (C2, trivial) count."""
    rep = VerificationReport("grp counts", failure_cap=cap)
    with _timed(rep):
        pairs = gp.pair_objects(groups)
        for P in pairs:
            for H in groups:
                case = f"|hom(C{P}, {H})| = |hom({P}, M0 {H})|"
                n_left = rep.guarded(case, lambda: len(gp.hom_grp(gp.grp_C(P, closure), H)))
                if n_left is not None:
                    n_right = len(gp.hom_pair(P, gp.grp_M0(H)))
                    rep.check(n_left == n_right, case, n_right, n_left)
        for G in groups:
            for Q in pairs:
                n_left = len(gp.hom_pair(gp.grp_M1(G), Q))
                n_right = len(gp.hom_grp(G, gp.grp_D(Q)))
                rep.check(n_left == n_right, f"|hom(M1 {G}, {Q})| = |hom({G}, D{Q})|", n_right, n_left)
        S3, C2 = find_group(groups, "S3"), find_group(groups, "C2")
        if S3 is not None and C2 is not None:
            transposition = next(S for S in gp.subgroups(S3) if len(S) == 2)
            P, Q = gp.PairObject(S3, transposition), gp.PairObject(C2, gp.trivial_subgroup(C2))
            n_pair = len(gp.hom_pair(P, Q))
            n_trivial = len(gp.hom_grp(gp.cyclic(1), C2))
            rep.check(n_pair == 1, f"|hom_pair({P}, {Q})|", 1, n_pair)
            rep.check(n_trivial == 1, f"|hom(C1, {C2})|", 1, n_trivial)
            rep.info["S3_transposition_to_C2_trivial"] = n_pair
            c = rep.guarded("C(S3, <transposition>)", lambda: gp.grp_C(P, closure).order)
            if c is not None:
                rep.info["order_of_C_S3_transposition"] = c
    return rep


def check_chain(
    instance: str,
    max_set_size: int = 3,
    groups: Sequence[gp.FinGroup] | None = None,
    closure: gp.Closure = gp.normal_closure,
    cap: int = DEFAULT_FAILURE_CAP,
) -> VerificationReport:
    """All four adjunctions of one instance ('set' or 'grp'), aggregated."""
    if instance == "set":
        parts = [(d.name, check_r_adjunction(d, cap)) for d in set_chain_adjunctions(max_set_size)]
        parts.append(("middle homsets", check_middle_homsets(max_set_size, cap)))
        return combine("set-chain", parts, cap)
    if instance == "grp":
        groups = gp.corpus() if groups is None else list(groups)
        parts = [(d.name, check_r_adjunction(d, cap)) for d in grp_chain_adjunctions(groups, closure)]
        parts.append(("counts", check_grp_counts(groups, closure, cap)))
        return combine("grp-chain", parts, cap)
    raise ValueError(f"unknown instance {instance!r}")


def identity_closure(G: gp.FinGroup, S: gp.Subgroup) -> gp.Subgroup:
    """Mutation: skip the normal closure."""
    return S


# -- forms -----------------------------------------------------------------------


def check_form(objects: Sequence, hom: Callable, underlying: Callable, with_sub: Callable, name: str, cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    """Faithful: parallel morphisms with equal underlying maps are equal.
    Amnesic: an isomorphism whose underlying map is an identity is an identity.

    ``with_sub(obj)`` yields the objects sharing obj's underlying object.
    """
    rep = VerificationReport(name, failure_cap=cap)
    with _timed(rep):
        for a, b in itertools.product(objects, repeat=2):
            ms = hom(a, b)
            under = [underlying(m) for m in ms]
            rep.check(len(set(under)) == len(set(ms)), f"faithful on hom({a}, {b})", len(set(ms)), len(set(under)))
        for a in objects:
            for b in with_sub(a):
                base = underlying(a.identity())
                there = [m for m in hom(a, b) if underlying(m) == base]
                back = [m for m in hom(b, a) if underlying(m) == base]
                if there and back:
                    rep.check(a == b, f"amnesic: identity-underlain iso {a} ~ {b}", a, b)
                else:
                    rep.cases_checked += 1
    return rep


def check_forms(max_set_size: int, groups: Sequence[gp.FinGroup], cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    rels = sr.rel_objects(max_set_size)
    pairs = gp.pair_objects(groups)
    set_rep = check_form(
        rels,
        lambda a, b: sr.hom_setrel(a, b),
        sr.form_F,
        lambda a: [b for b in rels if b.carrier == a.carrier],
        "F: SetRel -> Set",
        cap,
    )
    grp_rep = check_form(
        pairs,
        gp.hom_pair,
        gp.grp_F_mor,
        lambda P: [Q for Q in pairs if Q.group == P.group],
        "F: pairs -> Grp",
        cap,
    )
    return combine("forms", [(set_rep.suite_name, set_rep), (grp_rep.suite_name, grp_rep)], cap)


def check_grp_not_z(groups: Sequence[gp.FinGroup], cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    rep = VerificationReport("Grp* = Grp", failure_cap=cap)
    with _timed(rep):
        for G, H in itertools.product(groups, repeat=2):
            for h in gp.hom_grp(G, H):
                rep.check(not is_z_empty(h.fn) and not gp.grp_classify(h).is_z_empty, f"{h} is not Z-empty", False, True)
    return rep


# -- the counterexample ----------------------------------------------------------


def counterexample_morphisms() -> tuple[sr.RelMorphism, sr.RelMorphism]:
    """The empty set -> {0} -> {0,1}, with the bottom relation on {0,1}."""
    E, B, C = FiniteSet.range(0), FiniteSet.range(1), FiniteSet.range(2)
    e, b, c = sr.RelObject(E, equiv_top(E)), sr.RelObject(B, equiv_top(B)), sr.RelObject(C, equiv_bottom(C))
    f = sr.RelMorphism(e, b, FiniteFunction(E, B, ()))
    g = sr.RelMorphism(b, c, FiniteFunction(B, C, (0,)))
    return f, g


def reproduce_counterexample(cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    rep = VerificationReport("counterexample", failure_cap=cap)
    with _timed(rep):
        f, g = counterexample_morphisms()
        whole = sr.D_relation(g @ f)
        parts = fam_compose(sr.D_relation(g), sr.D_relation(f))
        rep.check(len(whole) == 2, "|D(g.f)|", 2, len(whole))
        rep.check(len(parts) == 1, "|D(g).D(f)|", 1, len(parts))
        rep.check(not fam_equal(whole, parts), "D(g.f) differs from D(g).D(f)", "different", "equal")
        rep.check(not f.starred, "f is Z-empty", "Z-empty", "starred")
        starred_hom = sr.hom_setrel(f.source, f.target, starred=True)
        rep.check(f not in starred_hom, "f excluded from SetRel*", "excluded", "present")
        rep.info.update({"D(g.f)": len(whole), "D(g).D(f)": len(parts), "sizes": f"{len(whole)} vs {len(parts)}"})
    return rep


# -- Galois connection -----------------------------------------------------------


def check_galois(max_size: int = 3, cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    rep = VerificationReport("galois", failure_cap=cap)
    with _timed(rep):
        sets = [FiniteSet.range(n) for n in range(max_size + 1)]
        rels = {X: all_equivs(X) for X in sets}
        for X, A in itertools.product(sets, repeat=2):
            for f in enumerate_functions(X, A):
                cell = f"f={f}"
                imgs = {S: direct_image(f, S) for S in rels[X]}
                pres = {T: inverse_image(f, T) for T in rels[A]}
                for S, T in itertools.product(rels[X], rels[A]):
                    lhs, rhs = equiv_leq(imgs[S], T), equiv_leq(S, pres[T])
                    rep.check(lhs == rhs, f"fS <= T iff S <= f^-1 T at {f}, S={S}, T={T}", lhs, rhs, cell=cell)
                for S1, S2 in itertools.product(rels[X], repeat=2):
                    if equiv_leq(S1, S2):
                        rep.check(equiv_leq(imgs[S1], imgs[S2]), f"direct image monotone at {f}, {S1} <= {S2}", True, False, cell=cell)
                for T1, T2 in itertools.product(rels[A], repeat=2):
                    if equiv_leq(T1, T2):
                        rep.check(equiv_leq(pres[T1], pres[T2]), f"inverse image monotone at {f}, {T1} <= {T2}", True, False, cell=cell)
                rep.check(imgs[equiv_bottom(X)] == equiv_bottom(A), f"direct image keeps bottom at {f}", equiv_bottom(A), imgs[equiv_bottom(X)], cell=cell)
                rep.check(pres[equiv_top(A)] == equiv_top(X), f"inverse image keeps top at {f}", equiv_top(X), pres[equiv_top(A)], cell=cell)
    return rep


# -- axioms on in/out families ---------------------------------------------------


def sub_iso(a: FiniteFunction, b: FiniteFunction) -> bool:
    """a ~ b as arrows into a common codomain: a = b . w for a bijection w."""
    return a.codomain == b.codomain and any(b @ w == a for w in enumerate_bijections(a.domain, b.domain))


def quot_iso(a: FiniteFunction, b: FiniteFunction) -> bool:
    """a ~ b as arrows out of a common domain: a = w . b for a bijection w."""
    return a.domain == b.domain and any(w @ b == a for w in enumerate_bijections(b.codomain, a.codomain))


def _exists_u_after(f: FiniteFunction, fk: FiniteFunction) -> bool:
    """Brute force: some u with f = fk . u."""
    return any(fk @ u == f for u in enumerate_functions(f.domain, fk.domain))


def _exists_u_before(f: FiniteFunction, gj: FiniteFunction) -> bool:
    """Brute force: some u with f = u . gj."""
    return any(u @ gj == f for u in enumerate_functions(gj.codomain, f.codomain))


@dataclass
class AxiomConfig:
    """The subject of the axiom suite; every field can be swapped for a mutation."""

    in_family: Callable = lambda X: sr.in_family(X).inmorphisms
    out_family: Callable = lambda X: sr.out_family(X).outmorphisms
    is_null: Callable = lambda f: classify(f).is_null
    is_z: Callable = lambda f: classify(f).is_z_empty


def run_axiom_suite(max_size: int = 3, config: AxiomConfig | None = None, cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    cfg = config or AxiomConfig()
    rep = VerificationReport("axioms", failure_cap=cap)
    with _timed(rep):
        sets = [FiniteSet.range(n) for n in range(max_size + 1)]
        for obj in sr.rel_objects(max_size):
            _in_axioms(rep, obj, sets, cfg)
            _out_axioms(rep, obj, sets, cfg)
    return rep


def _in_axioms(rep: VerificationReport, obj: sr.RelObject, sets, cfg: AxiomConfig) -> None:
    X, S = obj.carrier, obj.relation
    fam = list(cfg.in_family(obj))
    rep.check(len(fam) > 0, f"A1 at {obj}", "K nonempty", "K empty", cell=("A1", obj))
    for k, fk in enumerate(fam):
        rep.check(fk.codomain == X and fk.is_injective(), f"A2 at {obj}, f_{k}={fk}", "monomorphism", "not mono", cell=("A2", obj))
        rep.check(equiv_leq(image_of_top(fk), S), f"A4 at {obj}, f_{k}={fk}", f"f_k1 <= {S}", image_of_top(fk), cell=("A4", obj))
    incoming = [f for Y in sets for f in enumerate_functions(Y, X)]
    for f in incoming:
        f1 = image_of_top(f)
        through = [k for k, fk in enumerate(fam) if _exists_u_after(f, fk)]
        if equiv_leq(f1, S):
            rep.check(bool(through), f"A3 at {obj}, f={f}", "factors through some f_k", "no factorization", cell=("A3", obj))
            if not cfg.is_z(f):
                rep.check(len(through) == 1, f"A5 strong at {obj}, f={f}", "exactly one inmorphism", through, cell=("A5 strong", obj))
            if not cfg.is_null(f):
                rep.check(len(through) == 1, f"A5 weak at {obj}, f={f}", "exactly one inmorphism", through, cell=("A5 weak", obj))
        if not cfg.is_z(f):
            own = sr.in_family(sr.RelObject(X, f1)).inmorphisms
            n = sum(_exists_u_after(f, l) for l in own)
            rep.check(n == 1, f"A5 strong (inmorphisms of f1) at {obj}, f={f}", 1, n, cell=("A5 strong", obj))
        for k, fk in enumerate(fam):
            if equiv_leq(f1, image_of_top(fk)) and not cfg.is_null(f):
                rep.check(_exists_u_after(f, fk), f"A7 at {obj}, f={f}, f_{k}={fk}", "factors through f_k", "no factorization", cell=("A7", obj))
    for (k, fk), (j, fj) in itertools.product(enumerate(fam), repeat=2):
        for Y in sets:
            us, vs = enumerate_functions(Y, fk.domain), enumerate_functions(Y, fj.domain)
            premise = any(fk @ u == fj @ v and not cfg.is_z(fk @ u) for u in us for v in vs)
            if premise:
                rep.check(sub_iso(fk, fj), f"A5 at {obj}, f_{k}={fk}, f_{j}={fj}, Y={Y}", "f_k ~ f_j", "not isomorphic", cell=("A5", obj))
            else:
                rep.cases_checked += 1
    for j, fj in enumerate(fam):
        for Y in sets + [fj.domain]:
            for u in enumerate_functions(Y, fj.domain):
                lhs = any(sub_iso(fj @ u, fk) for fk in fam)
                rep.check(lhs == u.is_bijective(), f"A6 at {obj}, f_{j}={fj}, u={u}", f"iso: {u.is_bijective()}", f"some f_k ~ f_j u: {lhs}", cell=("A6", obj))


def _out_axioms(rep: VerificationReport, obj: sr.RelObject, sets, cfg: AxiomConfig) -> None:
    X, S = obj.carrier, obj.relation
    fam = list(cfg.out_family(obj))
    rep.check(len(fam) > 0, f"A1* at {obj}", "J nonempty", "J empty", cell=("A1*", obj))
    for j, gj in enumerate(fam):
        rep.check(gj.domain == X and gj.is_surjective(), f"A2* at {obj}, g_{j}={gj}", "epimorphism", "not epi", cell=("A2*", obj))
        ker = inverse_image(gj, equiv_bottom(gj.codomain))
        rep.check(equiv_leq(S, ker), f"A4* at {obj}, g_{j}={gj}", f"{S} <= g_j^-1 0", ker, cell=("A4*", obj))
    outgoing = [f for Y in sets for f in enumerate_functions(X, Y)]
    for f in outgoing:
        f0 = inverse_image(f, equiv_bottom(f.codomain))
        through = [j for j, gj in enumerate(fam) if _exists_u_before(f, gj)]
        if equiv_leq(S, f0):
            rep.check(bool(through), f"A3* at {obj}, f={f}", "factors through some g_j", "no factorization", cell=("A3*", obj))
            if not cfg.is_z(f):
                rep.check(len(through) == 1, f"A5* strong at {obj}, f={f}", "exactly one outmorphism", through, cell=("A5* strong", obj))
            if not cfg.is_null(f):
                rep.check(len(through) == 1, f"A5* weak at {obj}, f={f}", "exactly one outmorphism", through, cell=("A5* weak", obj))
        for k, gk in enumerate(fam):
            gk0 = inverse_image(gk, equiv_bottom(gk.codomain))
            if equiv_leq(gk0, f0) and not cfg.is_null(f):
                rep.check(_exists_u_before(f, gk), f"A7* at {obj}, f={f}, g_{k}={gk}", "factors through g_k", "no factorization", cell=("A7*", obj))
    for (k, gk), (j, gj) in itertools.product(enumerate(fam), repeat=2):
        for Y in sets:
            us, vs = enumerate_functions(gk.codomain, Y), enumerate_functions(gj.codomain, Y)
            premise = any(u @ gk == v @ gj and not cfg.is_z(u @ gk) for u in us for v in vs)
            if premise:
                rep.check(quot_iso(gk, gj), f"A5* at {obj}, g_{k}={gk}, g_{j}={gj}, Y={Y}", "g_k ~ g_j", "not isomorphic", cell=("A5*", obj))
            else:
                rep.cases_checked += 1
    for j, gj in enumerate(fam):
        for Y in sets + [gj.codomain]:
            for u in enumerate_functions(gj.codomain, Y):
                lhs = any(quot_iso(u @ gj, gk) for gk in fam)
                rep.check(lhs == u.is_bijective(), f"A6* at {obj}, g_{j}={gj}, u={u}", f"iso: {u.is_bijective()}", f"some g_k ~ u g_j: {lhs}", cell=("A6*", obj))


def axiom_mutations() -> dict[str, tuple[str, AxiomConfig]]:
    """For each axiom, a single-point corruption its check must catch."""

    def replace_in(target: sr.RelObject, fam_for: Callable) -> Callable:
        return lambda X: fam_for(X) if X == target else sr.in_family(X).inmorphisms

    def replace_out(target: sr.RelObject, fam_for: Callable) -> Callable:
        return lambda X: fam_for(X) if X == target else sr.out_family(X).outmorphisms

    X2 = FiniteSet.range(2)
    top2 = sr.RelObject(X2, equiv_top(X2))
    bot2 = sr.RelObject(X2, equiv_bottom(X2))
    empty = sr.RelObject(FiniteSet.range(0), equiv_bottom(FiniteSet.range(0)))
    incl0 = FiniteFunction(FiniteSet((0,)), X2, (0,))
    r_top2 = FiniteFunction(X2, FiniteSet.range(1), (0, 0))
    r_bot2 = FiniteFunction(X2, FiniteSet.range(2), (0, 1))
    never = lambda f: False  # noqa: E731

    return {
        "A1": ("empty in-family on ({0,1}, top)", AxiomConfig(in_family=replace_in(top2, lambda X: ()))),
        "A2": ("non-injective inmorphism {0,1} -> {0,1}", AxiomConfig(in_family=replace_in(top2, lambda X: (FiniteFunction(X2, X2, (0, 0)),)))),
        "A3": ("block {1} dropped from ({0,1}, bottom)", AxiomConfig(in_family=replace_in(bot2, lambda X: sr.in_family(X).inmorphisms[:1]))),
        "A4": ("identity used as sole inmorphism of ({0,1}, bottom)", AxiomConfig(in_family=replace_in(bot2, lambda X: (X2.identity(),)))),
        "A5": ("extra overlapping inmorphism {0} -> {0,1} on ({0,1}, top)", AxiomConfig(in_family=replace_in(top2, lambda X: (X2.identity(), incl0)))),
        "A6": ("extra overlapping inmorphism {0} -> {0,1} on ({0,1}, top)", AxiomConfig(in_family=replace_in(top2, lambda X: (X2.identity(), incl0)))),
        "A7": ("null class emptied", AxiomConfig(is_null=never)),
        "A1*": ("empty out-family on ({0,1}, bottom)", AxiomConfig(out_family=replace_out(bot2, lambda X: ()))),
        "A2*": ("non-surjective outmorphism on ({0,1}, top)", AxiomConfig(out_family=replace_out(top2, lambda X: (FiniteFunction(X2, FiniteSet.range(2), (0, 0)),)))),
        "A3*": ("outmorphism of top used for ({0,1}, bottom)", AxiomConfig(out_family=replace_out(bot2, lambda X: (r_top2,)))),
        "A4*": ("outmorphism of bottom used for ({0,1}, top)", AxiomConfig(out_family=replace_out(top2, lambda X: (r_bot2,)))),
        "A5*": ("extra outmorphism of top on ({0,1}, bottom)", AxiomConfig(out_family=replace_out(bot2, lambda X: (r_bot2, r_top2)))),
        "A6*": ("extra outmorphism of top on ({0,1}, bottom)", AxiomConfig(out_family=replace_out(bot2, lambda X: (r_bot2, r_top2)))),
        "A7*": (
            "null class emptied and empty carrier given outmorphism {} -> {0}",
            AxiomConfig(
                out_family=replace_out(empty, lambda X: (FiniteFunction(FiniteSet.range(0), FiniteSet.range(1), ()),)),
                is_null=never,
            ),
        ),
    }


def failing_axioms(report: VerificationReport) -> set[str]:
    return {f.case.split(" at ", 1)[0] for f in report.failures}


# -- functoriality suite -----------------------------------------------------------


def functoriality_suite(max_set_size: int = 3, groups: Sequence[gp.FinGroup] | None = None, cap: int = DEFAULT_FAILURE_CAP) -> VerificationReport:
    groups = gp.corpus() if groups is None else list(groups)
    starred = setrel_universe(max_set_size, starred=True)
    parts = [
        ("D on SetRel*", check_functoriality(sr.D_obj, sr.D_mor, starred, "D on SetRel*", cap)),
        ("C on SetRel*", check_functoriality(*as_r_functor(sr.C_obj, sr.C_mor), starred, "C on SetRel*", cap)),
        ("F on SetRel*", check_functoriality(*as_r_functor(sr.form_F_obj, sr.form_F), starred, "F on SetRel*", cap)),
        ("M0 on Set*", check_functoriality(*as_r_functor(sr.M0, sr.M0_mor), set_universe(max_set_size), "M0 on Set*", cap)),
        ("M1 on Set*", check_functoriality(*as_r_functor(sr.M1, sr.M1_mor), set_universe(max_set_size), "M1 on Set*", cap)),
    ]
    pairs, grps = pair_universe(groups), grp_universe(groups)
    parts += [
        ("grp C", check_functoriality(*as_r_functor(gp.grp_C, gp.grp_C_mor), pairs, "grp C", cap)),
        ("grp D", check_functoriality(*as_r_functor(gp.grp_D, gp.grp_D_mor), pairs, "grp D", cap)),
        ("grp F", check_functoriality(*as_r_functor(gp.grp_F, gp.grp_F_mor), pairs, "grp F", cap)),
        ("grp M0", check_functoriality(*as_r_functor(gp.grp_M0, gp.grp_M0_mor), grps, "grp M0", cap)),
        ("grp M1", check_functoriality(*as_r_functor(gp.grp_M1, gp.grp_M1_mor), grps, "grp M1", cap)),
    ]
    # D read as a relation must break on unstarred SetRel: the check passes when a failure is found
    unstarred = check_functoriality(sr.D_obj, sr.D_relation, setrel_universe(max_set_size, starred=False), "D on SetRel", cap)
    neg = VerificationReport("D on SetRel (expected non-functorial)", failure_cap=cap)
    witness = unstarred.failures[0].case if unstarred.failures else "none"
    neg.check(max_set_size < 2 or not unstarred.passed, "D on unstarred SetRel is not functorial", "at least one failure", f"{unstarred.failure_count} failures")
    neg.info["D on SetRel witness"] = witness
    neg.elapsed = unstarred.elapsed
    parts.append(("D on SetRel (negative)", neg))
    parts.append(("forms", check_forms(max_set_size, groups, cap)))
    parts.append(("Grp* = Grp", check_grp_not_z(groups, cap)))
    return combine("functoriality", parts, cap)
