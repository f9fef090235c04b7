from fractions import Fraction

import pytest

from app.core.exceptions import ParseError, PresentationError
from app.features.freealg.models import Parity, Polynomial
from app.features.peirce.models import PeirceType, Side
from app.features.presio.service import (
    expand_schemas,
    format_polynomial,
    load_presentation,
    parse_generator_map,
    parse_polynomial,
    parse_presentation,
    print_canonical,
)

FIXTURE_NAMES = ["example1.fpa", "example1_a0.fpa", "mat2.fpa", "free2.fpa", "comm2.fpa", "fsum.fpa"]


def test_parse_example1(load_fixture):
    p = load_fixture("example1.fpa")
    assert p.names == ["x", "y"]
    assert p.parity == {1: Parity.ODD, 2: Parity.ODD}
    assert [r.value for r in p.relations] == [Polynomial.monomial((1, 1)), Polynomial.monomial((2, 1, 2))]
    schema = p.schemas[0]
    assert schema.lower == 1
    assert schema.word_at(1) == (1, 2, 2, 2, 1)
    assert schema.degree_at(2) == 7


def test_canonical_print_example1(load_fixture):
    assert print_canonical(load_fixture("example1.fpa")) == (
        "gens x y;\n"
        "odd x y;\n"
        "rel x^2;\n"
        "rel y*x*y;\n"
        "schema x*y^(2*i+1)*x = 0 for i >= 1;\n"
    )


def test_canonical_print_mat2(load_fixture):
    text = print_canonical(load_fixture("mat2.fpa"))
    assert "idempotent e;\n" in text
    assert "rel e^2 - e;\n" in text
    assert "rel b*a + e - 1;\n" in text
    assert text.endswith("witness e: 1 = e + b*e*a;\nwitness f: 1 = f + a*f*b;\n")


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_canonical_round_trip(load_fixture, name):
    p = load_fixture(name)
    text = print_canonical(p)
    assert parse_presentation(text) == p
    assert print_canonical(parse_presentation(text)) == text


def test_witness_terms(load_fixture):
    p = load_fixture("mat2.fpa")
    e, a, b = (Polynomial.generator(k) for k in (1, 2, 3))
    assert p.idempotent == "e"
    assert p.witnesses[Side.E].terms == ((Polynomial.one(), Polynomial.one()), (b, a))
    assert p.witnesses[Side.F].terms == ((Polynomial.one(), Polynomial.one()), (a, b))


def test_comments_and_equations():
    p = parse_presentation("# two generators\ngens u v;  # trailing\nrel u*v = v*u;\n")
    assert p.relation_polys() == [Polynomial({(2, 1): 1, (1, 2): -1})]


def test_type_statement():
    p = parse_presentation("gens e a; type e ee; type a ef;")
    assert p.peirce_types == {1: PeirceType.EE, 2: PeirceType.EF}
    assert "type a ef;" in print_canonical(p)


@pytest.mark.parametrize("text, message, line", [
    ("gens x y;\nrel x*z;", "undeclared generator z", 2),
    ("gens x x;", "duplicate name x", 1),
    ("gens x;\n\nrel x = x;", "relation is the zero polynomial", 3),
    ("gens x y;\nschema x*y^(0*i+1) = 0 for i >= 1;", "malformed schema exponent", 2),
    ("gens x;\nrel x^i;", "parameter outside a schema", 2),
    ("gens e a;\nwitness e: 1 = e;", "before the idempotent", 2),
    ("gens e a;\nidempotent e;\nwitness e: 1 = a;", "sandwiched", 3),
    ("gens x y;\nodd x;", "parity assignment is not total", 1),
    ("gens x;\nrel 1/0*x;", "zero denominator in 1/0", 2),
])
def test_validation_errors(text, message, line):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert message in info.value.detail
    assert info.value.line == line
    assert info.value.detail.startswith(f"line {line}, column ")


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        parse_presentation("gens x y;\nrel x^;")
    assert "syntax error" in info.value.detail
    assert info.value.line == 2
    assert info.value.exit_code == 2


def test_load_missing_file():
    with pytest.raises(PresentationError, match="cannot read"):
        load_presentation("does/not/exist.fpa")


def test_expand_schemas(load_fixture):
    p = load_fixture("example1.fpa")
    assert len(expand_schemas(p, 4).relations) == 2
    expanded = expand_schemas(p, 8)
    assert expanded.schemas == ()
    assert expanded.relation_polys()[2:] == [
        Polynomial.monomial((1, 2, 2, 2, 1)),
        Polynomial.monomial((1, 2, 2, 2, 2, 2, 1)),
    ]
    with pytest.raises(PresentationError):
        expand_schemas(p, 0)


def test_parse_polynomial(load_fixture):
    p = load_fixture("example1.fpa")
    assert parse_polynomial("x*y^3*x", p) == Polynomial.monomial((1, 2, 2, 2, 1))
    assert parse_polynomial("2*(x + y)^2 - 1/2", p) == Polynomial(
        {(1, 1): 2, (1, 2): 2, (2, 1): 2, (2, 2): 2, (): Fraction(-1, 2)}
    )


def test_parse_generator_map(load_fixture):
    a0, ex1 = load_fixture("example1_a0.fpa"), load_fixture("example1.fpa")
    images = parse_generator_map("a=x*y, b=y^2, c=y*x", a0, ex1)
    assert images == {
        1: Polynomial.monomial((1, 2)),
        2: Polynomial.monomial((2, 2)),
        3: Polynomial.monomial((2, 1)),
    }
    with pytest.raises(PresentationError, match="undeclared generator d"):
        parse_generator_map("d=x", a0, ex1)


def test_format_polynomial():
    p = Polynomial({(1, 2): 2, (): -1, (2,): Fraction(1, 2)})
    assert format_polynomial(p, ["x", "y"]) == "2*x*y + 1/2*y - 1"
    assert format_polynomial(Polynomial.zero(), ["x"]) == "0"
    assert format_polynomial(-Polynomial.monomial((1, 1, 2)), ["x", "y"]) == "-x^2*y"
