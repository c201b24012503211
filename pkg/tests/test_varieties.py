import pytest

from ncres.varieties import (
    BlockRef,
    BundleSyntaxError,
    Dual,
    FlagVariety,
    IrreducibleBundle,
    LineBundleClass,
    Plethysm,
    ProductVariety,
    Schur,
    Tensor,
    TwistArityError,
    Twist,
    UnknownBlockError,
    canonical_bundle,
    k0_rank,
    line_bundle_class_of,
    normalize,
    parse_bundle,
    parse_variety,
    rank,
)


def V(text):
    return parse_variety(text)


def test_parse_variety_forms():
    assert V("P2").factors == (FlagVariety(3, (1,)),)
    assert V("Gr(2,4)").factors == (FlagVariety(4, (2,)),)
    assert V("Fl(2,4;6)").factors == (FlagVariety(6, (2, 4)),)
    X = V("P1xGr(2,5)")
    assert [str(f) for f in X.factors] == ["P1", "Gr(2,5)"]
    assert X.picard_rank == 2
    assert X.dimension == 1 + 6


@pytest.mark.parametrize("bad", ["P0", "Q3", "Gr(2,4", "Fl(4,2;6)", ""])
def test_parse_variety_rejects(bad):
    with pytest.raises(ValueError):
        parse_variety(bad)


def test_line_bundle_convention():
    X = V("P2")
    (e,) = normalize(parse_bundle("O(-3)", X), X)
    assert e == IrreducibleBundle((((3,), (0, 0)),))
    assert line_bundle_class_of(X, e) == LineBundleClass((-3,))


def test_parse_round_trip_and_errors():
    X = V("Fl(1,3;4)")
    e = parse_bundle("S[2,1](Q1) * U2* + dual(O(1,-1))", X)
    assert parse_bundle(str(e), X) == e
    with pytest.raises(TwistArityError):
        parse_bundle("O(1)", X)
    with pytest.raises(UnknownBlockError):
        parse_bundle("U4", X)
    with pytest.raises(BundleSyntaxError) as info:
        parse_bundle("O(1,2", X)
    assert info.value.position == 5
    with pytest.raises(BundleSyntaxError):
        parse_bundle("S[2](O(1,0))", X)


def test_star_disambiguation():
    X = V("Gr(2,4)")
    assert parse_bundle("U1*", X) == BlockRef(0, 0, True)
    assert parse_bundle("U1*O(1)", X) == Tensor(BlockRef(0, 0, False), Twist((1,)))
    assert parse_bundle("U1**O(1)", X) == Tensor(BlockRef(0, 0, True), Twist((1,)))


def test_normalize_end_of_tautological():
    X = V("Gr(2,4)")
    d = normalize(parse_bundle("dual(U) * U", X), X)
    assert sum(d.values()) == 2
    assert rank(parse_bundle("dual(U) * U", X), X) == 4


def test_normalize_plethysm_on_block():
    X = V("Gr(2,6)")
    d = normalize(Plethysm("wedge2", 2, BlockRef(0, 1, False)), X)
    assert rank(Plethysm("wedge2", 2, BlockRef(0, 1, False)), X) == 21
    assert len(d) == 2


def test_factor_index():
    X = V("P1xP1")
    e = parse_bundle("U1@2", X)
    assert e == BlockRef(1, 0, False)
    with pytest.raises(UnknownBlockError):
        parse_bundle("U1@3", X)


def test_canonical_bundles():
    assert canonical_bundle(V("P3"))[1] == LineBundleClass((-4,))
    assert canonical_bundle(V("Gr(2,5)"))[1] == LineBundleClass((-5,))
    assert canonical_bundle(V("Gr(2,4)"))[1] == LineBundleClass((-4,))
    assert canonical_bundle(V("Fl(2,4;6)"))[1] == LineBundleClass((-4, -4))
    assert canonical_bundle(V("Fl(1,2;3)"))[1] == LineBundleClass((-2, -2))
    assert canonical_bundle(V("P1xP2"))[1] == LineBundleClass((-2, -3))


def test_canonical_matches_det_of_cotangent_on_grassmannians():
    # K_Gr(k,n) = O(-n)
    for n in range(2, 8):
        for k in range(1, n):
            assert canonical_bundle(V(f"Gr({k},{n})"))[1] == LineBundleClass((-n,))


def test_k0_rank():
    assert k0_rank(V("Gr(2,5)")) == 10
    assert k0_rank(V("P2xP2")) == 9
    assert k0_rank(V("Fl(2,4;6)")) == 90


def test_schur_of_dual_block():
    X = V("Gr(2,4)")
    (e,) = normalize(Schur((2,), BlockRef(0, 0, True)), X)
    assert e.weights == (((0, -2), (0, 0)),)
    assert normalize(Dual(Schur((2,), BlockRef(0, 0, False))), X) == {e: 1}


def test_product_variety_requires_factors():
    with pytest.raises(ValueError):
        ProductVariety(())
