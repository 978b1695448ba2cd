import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exactness import setrel as sr
from exactness.famcat import fam_compose, fam_equal, fam_identity
from exactness.finset import (
    FiniteFunction,
    FiniteSet,
    direct_image,
    enumerate_bijections,
    enumerate_functions,
    equiv_bottom,
    equiv_leq,
    equiv_top,
    is_z_empty,
)

E, X1, X2, X3 = (FiniteSet.range(n) for n in range(4))
OBJECTS = sr.rel_objects(3)


def top(X):
    return sr.RelObject(X, equiv_top(X))


def bottom(X):
    return sr.RelObject(X, equiv_bottom(X))


# -- morphisms and homsets ---------------------------------------------------------


def test_is_rel_morphism_extremes():
    for f in enumerate_functions(X2, X3):
        assert sr.is_rel_morphism(f, equiv_bottom(X2), equiv_bottom(X3))
        assert sr.is_rel_morphism(f, equiv_top(X2), equiv_top(X3))
    empty = FiniteFunction(E, FiniteSet(("a",)), ())
    assert sr.is_rel_morphism(empty, equiv_bottom(E), equiv_bottom(FiniteSet(("a",))))
    assert not sr.is_rel_morphism(empty, equiv_bottom(E), equiv_bottom(FiniteSet(("a",))), starred=True)


def test_hom_setrel_counts():
    assert len(sr.hom_setrel(top(X2), bottom(X2))) == 2
    assert len(sr.hom_setrel(bottom(X2), bottom(X2))) == 4
    assert len(sr.hom_setrel(bottom(E), top(X1), starred=True)) == 0
    assert len(sr.hom_setrel(bottom(E), top(X1), starred=False)) == 1


@pytest.mark.parametrize("X, A", list(itertools.product(OBJECTS, repeat=2)), ids=str)
def test_hom_setrel_matches_filter(X, A):
    # oracle: keep f with fS <= T, computed by the public image operation
    want = [f for f in enumerate_functions(X.carrier, A.carrier) if equiv_leq(direct_image(f, X.relation), A.relation)]
    assert [m.map for m in sr.hom_setrel(X, A)] == want
    starred = [f for f in want if not is_z_empty(f)]
    assert [m.map for m in sr.hom_setrel(X, A, starred=True)] == starred


def test_rel_morphism_rejects_bad_map():
    with pytest.raises(ValueError):
        sr.RelMorphism(top(X2), bottom(X2), X2.identity())


def test_rel_objects_count():
    # Bell numbers 1 + 1 + 2 + 5
    assert len(OBJECTS) == 9


# -- form and middle functors ----------------------------------------------------


def test_form_and_middle_objects():
    X = FiniteSet((0, 1))
    assert sr.form_F_obj(top(X)) == X
    assert sr.form_F(top(X).identity()) == X.identity()
    assert sr.M0(X).relation.blocks == ((0,), (1,))
    assert sr.M1(X).relation.blocks == ((0, 1),)
    assert sr.M0(E) == sr.M1(E) and sr.M0(E).relation.blocks == ()


def test_form_preserves_composites():
    for f, g in itertools.product(sr.hom_setrel(bottom(X2), top(X3)), sr.hom_setrel(top(X3), top(X2))):
        assert sr.form_F(g @ f) == sr.form_F(g) @ sr.form_F(f)


def test_middle_functors_on_all_functions():
    for f in enumerate_functions(X2, X3):
        assert sr.M0_mor(f).map == f and sr.M1_mor(f).map == f


# -- in/out families -------------------------------------------------------------


def test_in_family_examples():
    X = sr.rel_object(X3, [[0, 1], [2]])
    fam = sr.in_family(X)
    assert [l.domain.labels for l in fam.inmorphisms] == [(0, 1), (2,)]
    assert [l.mapping for l in fam.inmorphisms] == [(0, 1), (2,)]
    (whole,) = sr.in_family(top(X3)).inmorphisms
    assert whole.is_identity()
    (empty,) = sr.in_family(bottom(E)).inmorphisms
    assert empty == E.identity()


def test_out_family_examples():
    (r,) = sr.out_family(sr.rel_object(X3, [[0, 1], [2]])).outmorphisms
    assert r.codomain.size == 2 and r.is_surjective()
    (r,) = sr.out_family(bottom(X3)).outmorphisms
    assert r.is_bijective()
    (r,) = sr.out_family(bottom(E)).outmorphisms
    assert r == E.identity()


@pytest.mark.parametrize("X", OBJECTS, ids=str)
def test_families_are_mono_and_epi(X):
    for l in sr.in_family(X).inmorphisms:
        assert l.is_injective()
    (r,) = sr.out_family(X).outmorphisms
    assert r.is_surjective()
    assert sr.recover_families(X) == (sr.out_family(X), sr.in_family(X))


def test_recovered_families_special_cases():
    out, _ = sr.recover_families(bottom(X3))
    assert out.outmorphisms[0].is_bijective()
    _, inn = sr.recover_families(top(X2))
    assert len(inn) == 1 and inn.inmorphisms[0].domain.labels == X2.labels


# -- D and C ---------------------------------------------------------------------


def test_D_obj_examples():
    assert sr.D_obj(top(X3)).members == (X3,)
    assert [m.labels for m in sr.D_obj(sr.rel_object(X3, [[0, 1], [2]])).members] == [(0, 1), (2,)]
    assert [m.labels for m in sr.D_obj(bottom(X2)).members] == [(0,), (1,)]


def test_D_mor_swap():
    ab = FiniteSet(("a", "b"))
    swap = sr.RelMorphism(bottom(X2), bottom(ab), FiniteFunction(X2, ab, (1, 0)))
    d = sr.D_mor(swap)
    assert d.index_map == (1, 0)
    assert [(c.domain.labels, c.codomain.labels) for c in d.components] == [((0,), ("b",)), ((1,), ("a",))]


def test_D_mor_constant():
    abc = FiniteSet(("a", "b", "c"))
    A = sr.rel_object(abc, [["a", "b"], ["c"]])
    f = sr.RelMorphism(top(X2), A, FiniteFunction(X2, abc, (2, 2)))
    d = sr.D_mor(f)
    assert d.index_map == (1,)
    (c,) = d.components
    assert c.domain.labels == (0, 1) and c.codomain.labels == ("c",)


@pytest.mark.parametrize("X", OBJECTS, ids=str)
def test_D_identity(X):
    assert fam_equal(sr.D_mor(X.identity()), fam_identity(sr.D_obj(X)))


def test_D_and_C_reject_z_empty():
    f = sr.RelMorphism(bottom(E), top(X1), FiniteFunction(E, X1, ()))
    with pytest.raises(sr.UndefinedOnZEmpty):
        sr.D_mor(f)
    with pytest.raises(sr.UndefinedOnZEmpty):
        sr.C_mor(f)


def test_D_relation_counterexample():
    f = sr.RelMorphism(bottom(E), bottom(X1), FiniteFunction(E, X1, ()))
    g = sr.RelMorphism(bottom(X1), bottom(X2), FiniteFunction(X1, X2, (0,)))
    whole = sr.D_relation(g @ f)
    parts = fam_compose(sr.D_mor(g), sr.D_relation(f))
    assert len(whole) == 2 and len(parts) == 1
    assert not fam_equal(whole, parts)


def test_C_obj_examples():
    assert enumerate_bijections(sr.C_obj(bottom(X3)), X3)
    assert sr.C_obj(top(X3)).size == 1
    assert sr.C_obj(sr.rel_object(X3, [[0, 1], [2]])).size == 2


@given(st.sampled_from(OBJECTS), st.sampled_from(OBJECTS), st.data())
def test_C_mor_commutes_with_projections(X, A, data):
    homs = sr.hom_setrel(X, A, starred=True)
    if not homs:
        return
    f = data.draw(st.sampled_from(homs))
    (r_s,) = sr.out_family(X).outmorphisms
    (r_t,) = sr.out_family(A).outmorphisms
    assert r_t @ f.map == sr.C_mor(f) @ r_s


# -- alpha and beta --------------------------------------------------------------


def test_alpha_examples():
    x = FiniteSet(("x",))
    m = sr.RelMorphism(sr.M1(x), bottom(X2), FiniteFunction(x, X2, (1,)))
    t = sr.alpha(m)
    assert t.block_index == 1 and t.map.codomain.labels == (1,) and t.map("x") == 1
    const = sr.RelMorphism(sr.M1(X2), top(X3), FiniteFunction(X2, X3, (2, 2)))
    assert sr.alpha(const) == sr.TaggedHom(0, const.map)
    A = sr.rel_object(X3, [[0], [1, 2]])
    assert sr.alpha(sr.RelMorphism(sr.M1(X2), A, FiniteFunction(X2, X3, (2, 2)))).block_index == 1


def test_alpha_inv_example():
    x = FiniteSet(("x",))
    t = sr.TaggedHom(0, FiniteFunction(x, FiniteSet((0,)), (0,)))
    m = sr.alpha_inv(x, bottom(X2), t)
    assert m.map("x") == 0


@pytest.mark.parametrize("X", [E, X1, X2, X3], ids=str)
def test_alpha_round_trips(X):
    for A in OBJECTS:
        for m in sr.hom_setrel(sr.M1(X), A, starred=True):
            assert sr.alpha_inv(X, A, sr.alpha(m)) == m
        for j, L in enumerate(sr.D_obj(A).members):
            for q in sr.hom_set(X, L, starred=True):
                t = sr.TaggedHom(j, q)
                assert sr.alpha(sr.alpha_inv(X, A, t)) == t


def test_beta_examples():
    ab = FiniteSet(("a", "b"))
    m = sr.RelMorphism(bottom(X3), sr.M0(X3), X3.identity())
    p = sr.beta(m).map
    assert p.is_bijective()
    const = sr.RelMorphism(top(X2), sr.M0(ab), FiniteFunction(X2, ab, (1, 1)))
    assert sr.beta(const).map.mapping == (1,)
    S = sr.rel_object(X3, [[0, 1], [2]])
    t = sr.beta(sr.RelMorphism(S, sr.M0(ab), FiniteFunction(X3, ab, (0, 0, 1))))
    assert t == sr.TaggedHom(0, FiniteFunction(FiniteSet.range(2), ab, (0, 1)))


@pytest.mark.parametrize("A", [E, X1, X2, X3], ids=str)
def test_beta_round_trips(A):
    for X in OBJECTS:
        for m in sr.hom_setrel(X, sr.M0(A), starred=True):
            assert sr.beta_inv(X, A, sr.beta(m)) == m
        for p in sr.hom_set(sr.C_obj(X), A, starred=True):
            assert sr.beta(sr.beta_inv(X, A, sr.TaggedHom(0, p))).map == p


def test_bijection_inputs_validated():
    with pytest.raises(ValueError):
        sr.alpha(bottom(X2).identity())
    with pytest.raises(ValueError):
        sr.beta(top(X2).identity())
    with pytest.raises(ValueError):
        sr.alpha_inv(X1, bottom(X2), sr.TaggedHom(5, X1.identity()))
    with pytest.raises(ValueError):
        sr.beta_inv(top(X2), X1, sr.TaggedHom(1, X1.identity()))


# -- form properties --------------------------------------------------------------


@pytest.mark.parametrize("X, A", list(itertools.product(OBJECTS, repeat=2)), ids=str)
def test_form_faithful(X, A):
    maps = [sr.form_F(m) for m in sr.hom_setrel(X, A)]
    assert len(set(maps)) == len(maps)


def test_form_amnesic():
    for X, Y in itertools.product(OBJECTS, repeat=2):
        if X.carrier != Y.carrier:
            continue
        ident = X.carrier.identity()
        there = sr.is_rel_morphism(ident, X.relation, Y.relation)
        back = sr.is_rel_morphism(ident, Y.relation, X.relation)
        if there and back:
            assert X == Y
