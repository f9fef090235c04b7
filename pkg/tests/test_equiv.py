import pytest

from app.core.exceptions import AlgebraError, PresentationError, TruncationError
from app.features.equiv.models import GeneratorMap
from app.features.equiv.schemas import EquivalenceVerdict
from app.features.equiv.service import (
    check_generator_map,
    compare_hilbert,
    complete_presentation,
    identity_map,
    schema_independence,
)
from app.features.equiv.tietze import TietzeSimplifier, tietze_simplify
from app.features.grading.service import even_part_presentation, pair_generator_map
from app.features.ncgb.service import hilbert_profile
from app.features.presio.service import format_polynomial, parse_generator_map, parse_presentation

EXAMPLE_MAP = "a=x*y, b=y^2, c=y*x"


def profile(p, d):
    return hilbert_profile(complete_presentation(p, d), d).dims


@pytest.fixture
def example_even(load_fixture):
    return even_part_presentation(load_fixture("example1.fpa"), 8, simplify=True)


def test_even_part_dimensions_match(load_fixture, example_even):
    report = compare_hilbert(load_fixture("example1.fpa"), example_even, 6, ratio=2)
    assert report.verdict is EquivalenceVerdict.CONSISTENT
    assert [row.right for row in report.dims] == [1, 3, 4, 4, 4, 4, 4]
    assert report.dims[1].left == 3 and report.dims[2].left == 4
    assert report.mismatch_degree is None


def test_free_algebras_match_under_pairing():
    free2 = parse_presentation("gens x y;")
    free4 = parse_presentation("gens a b c d;")
    assert compare_hilbert(free2, free4, 3, ratio=2).verdict is EquivalenceVerdict.CONSISTENT


def test_dropped_relation_mismatch(example_even):
    polys = [q for q in example_even.relation_polys() if format_polynomial(q, example_even.names) != "y21*y12"]
    weaker = example_even.with_relations(polys)
    report = compare_hilbert(example_even, weaker, 4)
    assert report.verdict is EquivalenceVerdict.MISMATCH
    assert report.mismatch_degree == 2
    assert (report.dims[2].left, report.dims[2].right) == (4, 5)


def test_compare_is_symmetric_in_verdict(load_fixture):
    free2, comm2 = load_fixture("free2.fpa"), load_fixture("comm2.fpa")
    assert compare_hilbert(free2, comm2, 3).verdict is compare_hilbert(comm2, free2, 3).verdict


def test_inhomogeneous_is_inconclusive(load_fixture):
    mat2 = load_fixture("mat2.fpa")
    assert compare_hilbert(mat2, mat2, 3).verdict is EquivalenceVerdict.INCONCLUSIVE


def test_compare_rejects_bad_ratio(load_fixture):
    with pytest.raises(AlgebraError):
        compare_hilbert(load_fixture("free2.fpa"), load_fixture("free2.fpa"), 2, ratio=0)


def test_example_generator_map(load_fixture):
    a0, ex1 = load_fixture("example1_a0.fpa"), load_fixture("example1.fpa")
    gm = GeneratorMap(a0, ex1, parse_generator_map(EXAMPLE_MAP, a0, ex1))
    report = check_generator_map(a0, ex1, gm, 12)
    assert report.verdict is EquivalenceVerdict.CONSISTENT
    assert len(report.relations) == 5
    assert all(check.verdict == "member" for check in report.relations)


def test_bad_generator_map_is_a_mismatch(load_fixture):
    a0, ex1 = load_fixture("example1_a0.fpa"), load_fixture("example1.fpa")
    gm = GeneratorMap(a0, ex1, parse_generator_map("a=x, b=y, c=y", a0, ex1))
    report = check_generator_map(a0, ex1, gm, 6)
    assert report.verdict is EquivalenceVerdict.MISMATCH
    assert report.relations[0].verdict == "member"
    assert "non-member-up-to-degree" in {check.verdict for check in report.relations}


def test_encoding_map_is_consistent(load_fixture, example_even):
    ex1 = load_fixture("example1.fpa")
    gm = GeneratorMap(example_even, ex1, pair_generator_map(ex1, example_even))
    assert check_generator_map(example_even, ex1, gm, 8).verdict is EquivalenceVerdict.CONSISTENT


def test_identity_map(load_fixture):
    comm2 = load_fixture("comm2.fpa")
    report = check_generator_map(comm2, comm2, identity_map(comm2, comm2), 4)
    assert report.verdict is EquivalenceVerdict.CONSISTENT


def test_generator_map_validation(load_fixture):
    a0, ex1 = load_fixture("example1_a0.fpa"), load_fixture("example1.fpa")
    with pytest.raises(PresentationError, match="has no image"):
        GeneratorMap(a0, ex1, parse_generator_map("a=x", a0, ex1))


def test_image_degree_above_truncation(load_fixture):
    a0, ex1 = load_fixture("example1_a0.fpa"), load_fixture("example1.fpa")
    gm = GeneratorMap(a0, ex1, parse_generator_map("a=x^3, b=y, c=y", a0, ex1))
    with pytest.raises(TruncationError):
        check_generator_map(a0, ex1, gm, 5)


def test_tietze_eliminates_a_linear_generator():
    out = tietze_simplify(parse_presentation("gens g h; rel g - h;"), 4)
    assert out.names == ["h"]
    assert out.relations == ()


def test_tietze_keeps_a_minimal_presentation(load_fixture):
    a0 = load_fixture("example1_a0.fpa")
    out = tietze_simplify(a0, 4)
    assert out.names == a0.names
    assert set(out.relations) == set(a0.relations)


def test_tietze_result_records_eliminations():
    result = TietzeSimplifier(4).run(parse_presentation("gens g h k; rel k; rel g - h^2;"))
    assert result.presentation.names == ["h"]
    assert set(result.eliminated) == {"g", "k"}
    assert format_polynomial(result.eliminated["g"], ["h"]) == "h^2"
    assert result.eliminated["k"].is_zero()


def test_tietze_protected_generator_survives():
    out = tietze_simplify(parse_presentation("gens g h; rel g - h;"), 4, protected=["h"])
    assert out.names == ["h"]
    out = tietze_simplify(parse_presentation("gens g h; rel g;"), 4, protected=["g"])
    assert out.names == ["g", "h"]


def test_raw_even_part_simplifies_to_five_relations(load_fixture, example_even):
    raw = even_part_presentation(load_fixture("example1.fpa"), 8)
    out = tietze_simplify(raw, 4)
    assert out.names == example_even.names
    assert set(out.relations) == set(example_even.relations)


@pytest.mark.parametrize("fixture, bound", [("example1.fpa", 8), ("example1_a0.fpa", 6), ("comm2.fpa", 5)])
def test_tietze_preserves_hilbert_profiles(load_fixture, fixture, bound):
    p = load_fixture(fixture)
    out = tietze_simplify(p, bound)
    assert profile(out, bound) == profile(p, bound)


def test_tietze_preserves_the_even_part_profile(load_fixture, example_even):
    raw = even_part_presentation(load_fixture("example1.fpa"), 8)
    assert profile(raw, 4) == profile(example_even, 4)


def test_schema_independence_evidence(load_fixture):
    (report,) = schema_independence(load_fixture("example1.fpa"), 5)
    assert report.verdict is EquivalenceVerdict.CONSISTENT
    assert [c.parameter for c in report.instances] == [1, 2, 3, 4, 5]
    assert [c.truncation for c in report.instances] == [7, 9, 11, 13, 15]
    assert all(c.verdict == "non-member-up-to-degree" for c in report.instances)


def test_schema_independence_detects_redundant_schema():
    p = parse_presentation("gens x y; rel x*y; schema x*y^i = 0 for i >= 1;")
    (report,) = schema_independence(p, 3)
    assert report.verdict is EquivalenceVerdict.MISMATCH
