from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncres.bbw import (
    cohomology,
    cohomology_of_irreducible,
    euler_char,
    ext_table,
    pushforward,
    relative_ext_vanishes,
)
from ncres.varieties import (
    FlagVariety,
    IrreducibleBundle,
    ProductVariety,
    canonical_bundle,
    parse_bundle,
    parse_variety,
    twist_irreducible,
)

from oracles import product_line_cohomology, projective_space_cohomology


def coh(variety, text):
    X = parse_variety(variety)
    return cohomology(X, parse_bundle(text, X)).total_dims()


def test_fixtures():
    assert coh("P2", "O(-3)") == {2: 1}
    assert coh("P1", "O(-3)") == {1: 2}
    assert coh("Gr(2,4)", "S[2](U1*)") == {0: 10}
    assert coh("Gr(2,4)", "U1") == {}
    assert coh("P1xP1", "O(1,-2)") == {1: 2}
    assert coh("Gr(2,4)", "dual(U1*) * U1*") == {0: 1}


def test_weights_reported_as_gl_representations():
    X = parse_variety("P1")
    t = cohomology(X, parse_bundle("O(-3)", X))
    assert t.entries == {1: {((-1, -2),): 1}}


def test_ext_and_euler():
    X = parse_variety("P1")
    assert ext_table(X, parse_bundle("O(2)", X), parse_bundle("O", X)).total_dims() == {1: 1}
    for k in range(-5, 6):
        assert euler_char(X, parse_bundle(f"O({k})", X)) == k + 1


def test_pushforward_steps():
    fl = FlagVariety(3, (1, 2))
    trivial = IrreducibleBundle((((0,), (0,), (0,)),))
    res = pushforward(fl, 0, trivial)
    assert res == {0: {IrreducibleBundle((((0, 0), (0,)),)): 1}}
    with pytest.raises(IndexError):
        pushforward(fl, 2, trivial)


def test_relative_vanishing():
    fl = FlagVariety(4, (1, 2))
    X = ProductVariety.of(fl)
    ok, w = relative_ext_vanishes(fl, 0, parse_bundle("O", X), parse_bundle("O", X))
    assert not ok and w.degree == 0
    ok, w = relative_ext_vanishes(fl, 0, parse_bundle("U1*", X), parse_bundle("O", X))
    assert ok and w is None


@pytest.mark.parametrize("n", range(1, 11))
def test_projective_space_against_binomials(n):
    X = parse_variety(f"P{n}")
    for k in range(-n - 4, 5):
        assert coh(f"P{n}", f"O({k})") == projective_space_cohomology(n, k), k


# --- property tests --------------------------------------------------------


@st.composite
def flags(draw, max_n=7, max_steps=3):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, min(max_steps, n - 1)))
    steps = tuple(sorted(draw(st.sets(st.integers(1, n - 1), min_size=k, max_size=k))))
    return FlagVariety(n, steps)


@st.composite
def bundles_on(draw, flag, lo=-3, hi=3):
    blocks = []
    for size in flag.block_sizes:
        xs = draw(st.lists(st.integers(lo, hi), min_size=size, max_size=size))
        blocks.append(tuple(sorted(xs, reverse=True)))
    return IrreducibleBundle((tuple(blocks),))


@st.composite
def flag_and_bundle(draw, max_n=7, max_steps=3):
    f = draw(flags(max_n, max_steps))
    return f, draw(bundles_on(f))


@settings(max_examples=500, deadline=None)
@given(flag_and_bundle())
def test_pushforward_order_independence(fb):
    flag, e = fb
    X = ProductVariety.of(flag)
    results = {cohomology_of_irreducible(X, e, (order,)) for order in permutations(range(flag.picard_rank))}
    assert len(results) == 1


@settings(max_examples=500, deadline=None)
@given(flag_and_bundle(max_n=6))
def test_serre_duality(fb):
    flag, e = fb
    X = ProductVariety.of(flag)
    _, K = canonical_bundle(X)
    dual_twisted = twist_irreducible(X, e.dual(), K.coeffs)
    a = cohomology(X, {e: 1}).dims
    b = cohomology(X, {dual_twisted: 1}).dims
    dim = X.dimension
    assert a == {dim - i: v for i, v in b.items()}


@settings(max_examples=500, deadline=None)
@given(st.integers(1, 10), st.data())
def test_projective_vanishing_band(n, data):
    k = data.draw(st.integers(-n, -1))
    assert coh(f"P{n}", f"O({k})") == {}
    k = data.draw(st.integers(-n - 8, 8))
    assert coh(f"P{n}", f"O({k})") == projective_space_cohomology(n, k)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 4), st.integers(-7, 4)), min_size=1, max_size=3))
def test_kuenneth_on_products_of_projective_spaces(data):
    ns = [n for n, _ in data]
    ks = [k for _, k in data]
    X = parse_variety("x".join(f"P{n}" for n in ns))
    e = parse_bundle("O(" + ",".join(map(str, ks)) + ")", X)
    assert cohomology(X, e).total_dims() == product_line_cohomology(ns, ks)


@settings(max_examples=200, deadline=None)
@given(flag_and_bundle(max_n=5, max_steps=2))
def test_cohomology_in_at_most_one_degree(fb):
    flag, e = fb
    X = ProductVariety.of(flag)
    assert len(cohomology(X, {e: 1}).dims) <= 1
