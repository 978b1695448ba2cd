import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import as_pairs, closure_pairs
from exactness.finset import (
    EquivRel,
    FiniteFunction,
    FiniteSet,
    MorphismClass,
    all_equivs,
    classify,
    compose,
    direct_image,
    enumerate_functions,
    equiv_bottom,
    equiv_join,
    equiv_leq,
    equiv_meet,
    equiv_top,
    generated_equiv,
    inverse_image,
    kernel_relation,
)

SETS = [FiniteSet.range(n) for n in range(4)]
SET_PAIRS = list(itertools.product(SETS, SETS))


def fn(X, A, values):
    return FiniteFunction.from_dict(X, A, dict(zip(X, values)))


# -- enumerate_functions / compose ---------------------------------------------------


def test_enumerate_singleton_codomain():
    assert len(enumerate_functions(FiniteSet.range(2), FiniteSet(("a",)))) == 1


def test_enumerate_empty_domain(ab):
    fs = enumerate_functions(FiniteSet(()), ab)
    assert len(fs) == 1 and fs[0].mapping == ()


def test_enumerate_two_by_two(ab):
    fs = enumerate_functions(FiniteSet.range(2), ab)
    brute = {(f(0), f(1)) for f in fs}
    assert len(fs) == 4 and brute == set(itertools.product("ab", repeat=2))


@pytest.mark.parametrize("X, A", SET_PAIRS)
def test_enumerate_counts_and_order(X, A):
    fs = enumerate_functions(X, A)
    assert len(fs) == A.size**X.size
    assert len(set(fs)) == len(fs)
    assert [f.mapping for f in fs] == sorted(f.mapping for f in fs)


def test_compose_identities(ab):
    X = FiniteSet.range(2)
    f = fn(X, ab, "ab")
    assert compose(ab.identity(), f) == f
    assert compose(f, X.identity()) == f


def test_compose_pointwise(ab):
    X = FiniteSet.range(2)
    f = fn(X, ab, "ab")
    g = fn(ab, X, [1, 1])
    assert compose(g, f) == fn(X, X, [1, 1])


def test_compose_mismatch(ab):
    X = FiniteSet.range(2)
    with pytest.raises(ValueError):
        compose(X.identity(), ab.identity())


def test_compose_associative():
    for A, B, C, D in itertools.product(SETS[1:3], repeat=4):
        for f, g, h in itertools.product(enumerate_functions(A, B), enumerate_functions(B, C), enumerate_functions(C, D)):
            assert h @ (g @ f) == (h @ g) @ f


def test_function_validation():
    with pytest.raises(ValueError):
        FiniteFunction(FiniteSet.range(2), FiniteSet.range(1), (0, 1))
    with pytest.raises(ValueError):
        FiniteFunction(FiniteSet.range(2), FiniteSet.range(2), (0,))
    with pytest.raises(ValueError):
        FiniteSet((1, 1))


# -- the lattice of equivalence relations --------------------------------------------


def test_bottom_and_top(abc):
    X = FiniteSet.range(3)
    assert equiv_bottom(X).blocks == ((0,), (1,), (2,))
    assert equiv_top(X).blocks == ((0, 1, 2),)
    E = FiniteSet(())
    assert equiv_bottom(E).blocks == () == equiv_top(E).blocks
    x = FiniteSet(("x",))
    assert equiv_bottom(x) == equiv_top(x) and equiv_top(x).blocks == ((0,),)


@pytest.mark.parametrize("n, bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15)])
def test_all_equivs_bell(n, bell):
    rels = all_equivs(FiniteSet.range(n))
    assert len(rels) == len(set(rels)) == bell


def test_canonical_form_unique():
    X = FiniteSet.range(4)
    a = EquivRel.from_blocks(X, [[3, 1], [2], [0]])
    b = EquivRel.from_blocks(X, [[0], [1, 3], [2]])
    assert a == b and a.blocks == ((0,), (1, 3), (2,))
    with pytest.raises(ValueError):
        EquivRel(X, ((1, 3), (0,), (2,)))
    with pytest.raises(ValueError):
        EquivRel.from_blocks(X, [[0, 1], [1, 2], [3]])
    with pytest.raises(ValueError):
        EquivRel.from_blocks(X, [[0, 1]])


@given(st.lists(st.integers(0, 4), min_size=0, max_size=5))
def test_canonicalization_idempotent(key):
    X = FiniteSet.range(len(key))
    S = EquivRel.from_block_map(X, key)
    assert EquivRel.from_blocks(X, reversed(S.blocks)) == S
    assert EquivRel.from_blocks(X, S.blocks) == S


def test_leq_bounds_and_example():
    X = FiniteSet.range(3)
    for S in all_equivs(X):
        assert equiv_leq(equiv_bottom(X), S)
        assert equiv_leq(S, equiv_top(X))
    S = EquivRel.from_blocks(X, [[0, 1], [2]])
    T = EquivRel.from_blocks(X, [[0], [1, 2]])
    assert not equiv_leq(S, T)
    with pytest.raises(ValueError):
        equiv_leq(S, equiv_top(FiniteSet.range(2)))


@pytest.mark.parametrize("n", range(5))
def test_leq_is_pair_inclusion(n):
    X = FiniteSet.range(n)
    for S, T in itertools.product(all_equivs(X), repeat=2):
        assert equiv_leq(S, T) == (as_pairs(S) <= as_pairs(T))
        assert as_pairs(equiv_meet(S, T)) == as_pairs(S) & as_pairs(T)
        assert as_pairs(equiv_join(S, T)) == closure_pairs(n, as_pairs(S) | as_pairs(T))


def test_generated_equiv_examples():
    X = FiniteSet.range(3)
    assert generated_equiv(X, []) == equiv_bottom(X)
    assert generated_equiv(X, [(0, 1), (1, 2)]) == equiv_top(X)
    assert generated_equiv(X, [(0, 0)]) == equiv_bottom(X)
    with pytest.raises(ValueError):
        generated_equiv(X, [(0, 7)])


@given(st.integers(0, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=6))))
def test_generated_equiv_matches_iterated_closure(case):
    n, pairs = case
    if n == 0:
        pairs = []
    X = FiniteSet.range(n)
    assert as_pairs(generated_equiv(X, pairs)) == closure_pairs(n, pairs)


# -- images --------------------------------------------------------------------------


def test_direct_image_examples(ab):
    X = FiniteSet.range(3)
    f = fn(X, ab, "abb")
    S = EquivRel.from_blocks(X, [[0, 1], [2]])
    assert direct_image(f, S) == equiv_top(ab)
    assert direct_image(X.identity(), S) == S
    assert direct_image(f, equiv_bottom(X)) == equiv_bottom(ab)
    with pytest.raises(ValueError):
        direct_image(f, equiv_bottom(ab))


def test_inverse_image_examples(ab):
    X = FiniteSet.range(3)
    const = fn(X, ab, "aaa")
    assert inverse_image(const, equiv_bottom(ab)) == equiv_top(X)
    T = EquivRel.from_labels(ab, [["a"], ["b"]])
    assert inverse_image(ab.identity(), T) == T
    f = fn(X, ab, "abb")
    assert inverse_image(f, equiv_bottom(ab)) == EquivRel.from_blocks(X, [[0], [1, 2]])


def test_kernel_examples(ab):
    X = FiniteSet.range(3)
    assert kernel_relation(fn(X, FiniteSet.range(3), [2, 0, 1])) == equiv_bottom(X)
    assert kernel_relation(fn(X, ab, "bbb")) == equiv_top(X)
    assert kernel_relation(fn(X, ab, "abb")) == EquivRel.from_blocks(X, [[0], [1, 2]])


@pytest.mark.parametrize("X, A", SET_PAIRS)
def test_images_against_pair_oracles(X, A):
    for f in enumerate_functions(X, A):
        m = f.mapping
        for S in all_equivs(X):
            image_pairs = {(m[a], m[b]) for a, b in as_pairs(S)}
            assert as_pairs(direct_image(f, S)) == closure_pairs(A.size, image_pairs)
        for T in all_equivs(A):
            want = {(a, b) for a in range(X.size) for b in range(X.size) if (m[a], m[b]) in as_pairs(T)}
            assert as_pairs(inverse_image(f, T)) == want
        assert kernel_relation(f) == inverse_image(f, equiv_bottom(A))


@pytest.mark.parametrize("X, A", SET_PAIRS)
def test_galois_connection(X, A):
    for f in enumerate_functions(X, A):
        for S, T in itertools.product(all_equivs(X), all_equivs(A)):
            assert equiv_leq(direct_image(f, S), T) == equiv_leq(S, inverse_image(f, T))


# -- classification ------------------------------------------------------------------


def test_classify_examples():
    E, a, ab = FiniteSet(()), FiniteSet(("a",)), FiniteSet(("a", "b"))
    assert classify(FiniteFunction(E, a, ())) == MorphismClass(is_z_empty=True, is_null=True)
    assert classify(E.identity()) == MorphismClass(is_z_empty=False, is_null=True)
    assert classify(fn(FiniteSet.range(2), ab, "ab")) == MorphismClass(False, False)
    assert classify(fn(FiniteSet.range(2), ab, "bb")) == MorphismClass(False, True)


def test_morphism_class_invariant():
    with pytest.raises(ValueError):
        MorphismClass(is_z_empty=True, is_null=False)


@pytest.mark.parametrize("X, A", SET_PAIRS)
def test_null_class_has_trivial_f1(X, A):
    # N and Z sit inside {f : f1 = 0}
    for f in enumerate_functions(X, A):
        c = classify(f)
        if c.is_null:
            assert direct_image(f, equiv_top(X)) == equiv_bottom(A)
        assert c.is_z_empty == (X.size == 0 and A.size > 0)
