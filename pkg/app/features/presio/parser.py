"""
pyparsing grammar for the .fpa presentation format.

    gens x y;
    odd x y;
    rel x^2 = 0;
    rel y*x*y;
    schema x*y^(2*i+1)*x = 0 for i >= 1;
    idempotent e;
    witness e: 1 = e + b*e*a;
    type a_ef ef;

The grammar only builds a small syntax tree; name resolution and validation
happen in app.features.presio.service.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import pyparsing as pp

from app.core.exceptions import ParseError

KEYWORDS = ("gens", "odd", "even", "rel", "schema", "for", "idempotent", "witness", "type")


@dataclass(frozen=True)
class Affine:
    coeff: int
    const: int
    params: Tuple[str, ...] = ()

    def __add__(self, other: "Affine") -> "Affine":
        return Affine(self.coeff + other.coeff, self.const + other.const, tuple(dict.fromkeys(self.params + other.params)))

    def negated(self) -> "Affine":
        return Affine(-self.coeff, -self.const, self.params)

    @property
    def is_one(self) -> bool:
        return self.coeff == 0 and self.const == 1


@dataclass(frozen=True)
class GenFactor:
    name: str
    exponent: Affine
    loc: int


@dataclass(frozen=True)
class ParenFactor:
    expr: "PolyExpr"
    power: int
    loc: int


Factor = Union[GenFactor, ParenFactor]


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    factors: Tuple[Factor, ...]
    loc: int


@dataclass(frozen=True)
class PolyExpr:
    terms: Tuple[Term, ...]
    loc: int


@dataclass(frozen=True)
class Statement:
    kind: str
    loc: int
    names: Tuple[str, ...] = ()
    lhs: Optional[PolyExpr] = None
    rhs: Optional[PolyExpr] = None
    parameter: Optional[str] = None
    lower: Optional[int] = None


class PresentationGrammar:
    def __init__(self):
        SEMI = pp.Suppress(";")
        STAR = pp.Suppress("*")
        LPAR, RPAR = pp.Suppress("("), pp.Suppress(")")
        CARET = pp.Suppress("^")
        EQ = pp.Suppress("=")
        COLON = pp.Suppress(":")

        reserved = pp.MatchFirst([pp.Keyword(k) for k in KEYWORDS])
        name = ~reserved + pp.Word(pp.alphas, pp.alphanums + "_")
        sign = pp.one_of("+ -")
        signed_int = pp.Regex(r"-?\d+").set_parse_action(lambda t: int(t[0]))
        plain_int = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
        rational = pp.Regex(r"\d+(/\d+)?").set_parse_action(self._rational)

        # exponents: 3 | i | (2*i+1)
        affine_atom = (
            (pp.Word(pp.nums) + pp.Opt(STAR) + name).set_parse_action(lambda t: Affine(int(t[0]), 0, (t[1],)))
            | pp.Word(pp.nums).set_parse_action(lambda t: Affine(0, int(t[0])))
            | name.copy().set_parse_action(lambda t: Affine(1, 0, (t[0],)))
        )
        affine = (pp.Opt(sign) + affine_atom + pp.ZeroOrMore(sign + affine_atom)).set_parse_action(self._affine)
        exponent = (
            pp.Word(pp.nums).set_parse_action(lambda t: Affine(0, int(t[0])))
            | (LPAR + affine + RPAR)
            | name.copy().set_parse_action(lambda t: Affine(1, 0, (t[0],)))
        )

        polyexpr = pp.Forward()
        gen_factor = (name + pp.Opt(CARET + exponent)).set_parse_action(self._gen_factor)
        paren_factor = (LPAR + polyexpr + RPAR + pp.Opt(CARET + plain_int)).set_parse_action(self._paren_factor)
        factor = gen_factor | paren_factor
        product = factor + pp.ZeroOrMore(STAR + factor)
        term = ((rational + pp.Opt(STAR) + product) | rational | product).set_parse_action(self._term)
        polyexpr <<= (pp.Opt(sign) + term + pp.ZeroOrMore(sign + term)).set_parse_action(self._polyexpr)

        gens_stmt = (pp.Keyword("gens") - pp.OneOrMore(name) + SEMI).set_parse_action(self._names_stmt)
        parity_stmt = ((pp.Keyword("odd") | pp.Keyword("even")) - pp.OneOrMore(name) + SEMI).set_parse_action(self._names_stmt)
        rel_stmt = (pp.Keyword("rel") - polyexpr + pp.Opt(EQ + polyexpr) + SEMI).set_parse_action(self._rel_stmt)
        schema_stmt = (
            pp.Keyword("schema") - polyexpr + EQ + pp.Suppress(pp.Literal("0")) + pp.Suppress(pp.Keyword("for"))
            + name + pp.Suppress(">=") + signed_int + SEMI
        ).set_parse_action(self._schema_stmt)
        idempotent_stmt = (pp.Keyword("idempotent") - name + SEMI).set_parse_action(self._names_stmt)
        witness_stmt = (
            pp.Keyword("witness") - (pp.Keyword("e") | pp.Keyword("f")) + COLON + pp.Suppress(pp.Literal("1")) + EQ
            + polyexpr + SEMI
        ).set_parse_action(self._witness_stmt)
        side_type = pp.Keyword("ee") | pp.Keyword("ef") | pp.Keyword("fe") | pp.Keyword("ff")
        type_stmt = (pp.Keyword("type") - name + side_type + SEMI).set_parse_action(self._names_stmt)

        statement = gens_stmt | parity_stmt | rel_stmt | schema_stmt | idempotent_stmt | witness_stmt | type_stmt
        self.document = pp.ZeroOrMore(statement)
        self.document.ignore(pp.python_style_comment)
        self.polynomial = polyexpr.copy()
        self.polynomial.ignore(pp.python_style_comment)

    # parse actions
    @staticmethod
    def _rational(s, loc, toks):
        _, _, den = toks[0].partition("/")
        if den and int(den) == 0:
            raise pp.ParseFatalException(s, loc, f"zero denominator in {toks[0]}")
        return Fraction(toks[0])

    @staticmethod
    def _affine(toks):
        total = Affine(0, 0)
        negative = False
        for tok in toks:
            if isinstance(tok, str):
                negative = tok == "-"
                continue
            total = total + (tok.negated() if negative else tok)
            negative = False
        return total

    @staticmethod
    def _gen_factor(s, loc, toks):
        exponent = toks[1] if len(toks) > 1 else Affine(0, 1)
        return GenFactor(toks[0], exponent, loc)

    @staticmethod
    def _paren_factor(s, loc, toks):
        power = toks[1] if len(toks) > 1 else 1
        return ParenFactor(toks[0], power, loc)

    @staticmethod
    def _term(s, loc, toks):
        coeff = Fraction(1)
        factors: List[Factor] = []
        for tok in toks:
            if isinstance(tok, Fraction):
                coeff *= tok
            else:
                factors.append(tok)
        return Term(coeff, tuple(factors), loc)

    @staticmethod
    def _polyexpr(s, loc, toks):
        terms: List[Term] = []
        negative = False
        for tok in toks:
            if isinstance(tok, str):
                negative = tok == "-"
                continue
            terms.append(Term(-tok.coeff if negative else tok.coeff, tok.factors, tok.loc))
            negative = False
        return PolyExpr(tuple(terms), loc)

    @staticmethod
    def _names_stmt(s, loc, toks):
        return Statement(kind=toks[0], loc=loc, names=tuple(toks[1:]))

    @staticmethod
    def _rel_stmt(s, loc, toks):
        rhs = toks[2] if len(toks) > 2 else None
        return Statement(kind="rel", loc=loc, lhs=toks[1], rhs=rhs)

    @staticmethod
    def _schema_stmt(s, loc, toks):
        return Statement(kind="schema", loc=loc, lhs=toks[1], parameter=toks[2], lower=toks[3])

    @staticmethod
    def _witness_stmt(s, loc, toks):
        return Statement(kind="witness", loc=loc, names=(toks[1],), lhs=toks[2])

    # entry points
    def parse_document(self, text: str) -> List[Statement]:
        try:
            return list(self.document.parse_string(text, parse_all=True))
        except pp.ParseBaseException as exc:
            raise ParseError(f"syntax error: {exc.msg}", exc.lineno, exc.col) from exc

    def parse_polynomial(self, text: str) -> PolyExpr:
        try:
            return self.polynomial.parse_string(text, parse_all=True)[0]
        except pp.ParseBaseException as exc:
            raise ParseError(f"syntax error: {exc.msg}", exc.lineno, exc.col) from exc


_grammar = None

def get_grammar() -> PresentationGrammar:
    global _grammar
    if _grammar is None:
        _grammar = PresentationGrammar()
    return _grammar
