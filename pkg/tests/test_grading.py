import pytest

from app.core.exceptions import AlgebraError
from app.features.equiv.service import complete_presentation
from app.features.freealg.models import Polynomial
from app.features.freealg.service import pair_decode_poly
from app.features.grading.service import (
    build_mprime,
    even_part_presentation,
    mprime_cardinality_bound,
    pair_generator_map,
    split_by_parity,
)
from app.features.ncgb.models import MembershipVerdict
from app.features.ncgb.service import complete_truncated, ideal_member, reduce_poly
from app.features.presio.service import expand_schemas, format_polynomial, parse_presentation

A0_RELATIONS = {"y12^2", "y21*y12", "y21^2", "y21*y22", "y22*y12"}


@pytest.fixture
def base():
    return parse_presentation("gens x y; odd x y; rel x^2; rel y*x*y;")


def test_split_by_parity():
    p = parse_presentation("gens x y; rel x^2 + y; rel y*x*y - x*y;")
    split = split_by_parity(p.relations, p.parity_or_odd())
    assert [format_polynomial(r.value, p.names) for r in split.m0] == ["x^2", "x*y"]
    assert [format_polynomial(r.value, p.names) for r in split.m1] == ["y", "y*x*y"]


def test_split_respects_declared_parity():
    p = parse_presentation("gens x y; odd x; even y; rel x*y + y;")
    split = split_by_parity(p.relations, p.parity)
    assert [format_polynomial(r.value, p.names) for r in split.even] == ["y"]
    assert [format_polynomial(r.value, p.names) for r in split.odd] == ["x*y"]


def test_mprime_cardinality(base):
    split = split_by_parity(base.relations, base.parity)
    mprime = build_mprime(split, base.m)
    assert len(mprime) == 9
    assert mprime_cardinality_bound(split, base.m) == 9
    assert len({r.value for r in mprime}) == 9

    rs = complete_presentation(base, 6)
    for r in mprime:
        assert ideal_member(r.value, rs) is MembershipVerdict.MEMBER


def test_mprime_elements_are_even(base):
    split = split_by_parity(base.relations, base.parity)
    for r in build_mprime(split, base.m):
        assert all(len(w) % 2 == 0 for w in r.value.words())


def test_even_generators_rejected():
    p = parse_presentation("gens x y; odd x; even y; rel x^2;")
    with pytest.raises(AlgebraError, match="the even-part construction requires odd generators"):
        even_part_presentation(p, 4)


def test_splitting_preserves_the_ideal(load_fixture):
    p = expand_schemas(load_fixture("example1.fpa"), 8)
    split = split_by_parity(p.relations, p.parity)
    parts = [r.value for r in split.even + split.odd]
    order = p.default_order()
    original = complete_truncated(p.relation_polys(), order, 8)
    splitted = complete_truncated(parts, order, 8)
    for q in parts:
        assert reduce_poly(q, original).is_zero()
    for q in p.relation_polys():
        assert reduce_poly(q, splitted).is_zero()


def test_raw_even_part_of_example(load_fixture):
    out = even_part_presentation(load_fixture("example1.fpa"), 8)
    assert out.names == ["y11", "y12", "y21", "y22"]
    assert Polynomial.monomial((1,)) in out.relation_polys()


def test_even_part_of_example_simplified(load_fixture):
    out = even_part_presentation(load_fixture("example1.fpa"), 8, simplify=True)
    assert out.names == ["y12", "y21", "y22"]
    assert {format_polynomial(r.value, out.names) for r in out.relations} == A0_RELATIONS


def test_even_part_relations_decode_into_the_ideal(load_fixture):
    source = load_fixture("example1.fpa")
    out = even_part_presentation(source, 8)
    rs = complete_presentation(source, 8)
    for r in out.relations:
        assert ideal_member(pair_decode_poly(r.value, source.m), rs) is MembershipVerdict.MEMBER


def test_even_part_of_free_algebra():
    out = even_part_presentation(parse_presentation("gens x y;"), 4)
    assert out.m == 4
    assert out.relations == ()


def test_pair_generator_map(load_fixture):
    source = load_fixture("example1.fpa")
    out = even_part_presentation(source, 8, simplify=True)
    images = pair_generator_map(source, out)
    assert images == {
        1: Polynomial.monomial((1, 2)),
        2: Polynomial.monomial((2, 1)),
        3: Polynomial.monomial((2, 2)),
    }
    with pytest.raises(AlgebraError):
        pair_generator_map(source, parse_presentation("gens z;"))


def test_declared_odd_parity_is_accepted():
    p = parse_presentation("gens x; odd x; rel x^3;")
    out = even_part_presentation(p, 6)
    assert out.names == ["y11"]
    assert out.relation_polys() == [Polynomial.monomial((1, 1))]
