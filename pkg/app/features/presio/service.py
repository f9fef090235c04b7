import logging
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

import pyparsing as pp

from app.core.exceptions import ParseError, PresentationError
from app.features.freealg.models import MonomialOrder, Parity, Polynomial, Word
from app.features.peirce.models import PeirceType, Side, WitnessDecomposition
from app.features.presio.models import AffineExponent, Presentation, Relation, RelationSchema
from app.features.presio.parser import Affine, GenFactor, ParenFactor, PolyExpr, Statement, Term, get_grammar

logger = logging.getLogger(__name__)

F_SYMBOL = "f"


class PresentationBuilder:
    """Resolves names in a parsed .fpa document and validates it into a Presentation."""

    def __init__(self, text: str):
        self.text = text
        self.names: List[str] = []
        self.index: Dict[str, int] = {}
        self.parity: Dict[int, Parity] = {}
        self.relations: List[Relation] = []
        self.schemas: List[RelationSchema] = []
        self.idempotent: Optional[str] = None
        self.witnesses: Dict[Side, WitnessDecomposition] = {}
        self.peirce_types: Dict[int, PeirceType] = {}

    def error(self, detail: str, loc: int) -> ParseError:
        return ParseError(detail, pp.lineno(loc, self.text), pp.col(loc, self.text))

    def build(self, statements: Sequence[Statement]) -> Presentation:
        for stmt in statements:
            handler = getattr(self, f"_on_{stmt.kind}")
            handler(stmt)

        parity = None
        if self.parity:
            missing = [n for n in self.names if self.index[n] not in self.parity]
            if missing:
                raise self.error(f"parity assignment is not total (missing {', '.join(missing)})", 0)
            parity = dict(self.parity)

        try:
            return Presentation.free(
                self.names,
                relations=tuple(self.relations),
                parity=parity,
                schemas=tuple(self.schemas),
                idempotent=self.idempotent,
                witnesses=dict(self.witnesses),
                peirce_types=dict(self.peirce_types),
            )
        except PresentationError as e:
            raise self.error(e.detail, 0) from e

    # statements
    def _on_gens(self, stmt: Statement):
        for name in stmt.names:
            if name in self.index:
                raise self.error(f"duplicate name {name}", stmt.loc)
            self.names.append(name)
            self.index[name] = len(self.names)

    def _on_odd(self, stmt: Statement):
        self._assign_parity(stmt, Parity.ODD)

    def _on_even(self, stmt: Statement):
        self._assign_parity(stmt, Parity.EVEN)

    def _assign_parity(self, stmt: Statement, parity: Parity):
        for name in stmt.names:
            gid = self._lookup(name, stmt.loc)
            if self.parity.get(gid, parity) is not parity:
                raise self.error(f"conflicting parity for {name}", stmt.loc)
            self.parity[gid] = parity

    def _on_rel(self, stmt: Statement):
        p = self.evaluate(stmt.lhs)
        if stmt.rhs is not None:
            p = p - self.evaluate(stmt.rhs)
        if p.is_zero():
            raise self.error("relation is the zero polynomial", stmt.loc)
        self.relations.append(Relation.of(p, MonomialOrder.default(len(self.names))))

    def _on_schema(self, stmt: Statement):
        expr = stmt.lhs
        if len(expr.terms) != 1 or expr.terms[0].coeff == 0:
            raise self.error("malformed schema: a schema is a single monomial", stmt.loc)
        factors: List[Tuple[int, AffineExponent]] = []
        for factor in expr.terms[0].factors:
            if not isinstance(factor, GenFactor):
                raise self.error("malformed schema: parenthesized factor", factor.loc)
            exp = factor.exponent
            if any(param != stmt.parameter for param in exp.params):
                raise self.error(f"malformed schema exponent: unknown parameter in {factor.name}", factor.loc)
            factors.append((self._lookup(factor.name, factor.loc), AffineExponent(exp.coeff, exp.const)))

        schema = RelationSchema(tuple(factors), stmt.parameter, stmt.lower)
        if schema.slope() <= 0:
            raise self.error("malformed schema exponent: degree must grow with the parameter", stmt.loc)
        if any(exp.at(stmt.lower) < 0 for _, exp in factors):
            raise self.error("malformed schema exponent: negative exponent at the lower bound", stmt.loc)
        if schema.degree_at(stmt.lower) == 0:
            raise self.error("malformed schema: instance is the unit", stmt.loc)
        self.schemas.append(schema)

    def _on_idempotent(self, stmt: Statement):
        name = stmt.names[0]
        self._lookup(name, stmt.loc)
        self.idempotent = name

    def _on_witness(self, stmt: Statement):
        if self.idempotent is None:
            raise self.error("witness given before the idempotent statement", stmt.loc)
        side = Side(stmt.names[0])
        symbol = self.idempotent if side is Side.E else F_SYMBOL
        terms = []
        for term in stmt.lhs.terms:
            split = self._split_at(term, symbol)
            if split is None:
                raise self.error(f"witness term does not contain the sandwiched {symbol}", term.loc)
            left, right = split
            u = Polynomial.constant(term.coeff)
            for factor in left:
                u = u * self._factor(factor, witness=True)
            v = Polynomial.one()
            for factor in right:
                v = v * self._factor(factor, witness=True)
            terms.append((u, v))
        try:
            self.witnesses[side] = WitnessDecomposition.build(side, terms)
        except PresentationError as e:
            raise self.error(e.detail, stmt.loc) from e

    def _on_type(self, stmt: Statement):
        name, kind = stmt.names
        self.peirce_types[self._lookup(name, stmt.loc)] = PeirceType(kind)

    # expressions
    @staticmethod
    def _split_at(term: Term, symbol: str):
        for k, factor in enumerate(term.factors):
            if isinstance(factor, GenFactor) and factor.name == symbol and factor.exponent.is_one:
                return term.factors[:k], term.factors[k + 1:]
        return None

    def _lookup(self, name: str, loc: int) -> int:
        if name not in self.index:
            raise self.error(f"undeclared generator {name}", loc)
        return self.index[name]

    def evaluate(self, expr: PolyExpr, witness: bool = False) -> Polynomial:
        result = Polynomial.zero()
        for term in expr.terms:
            t = Polynomial.constant(term.coeff)
            for factor in term.factors:
                t = t * self._factor(factor, witness)
            result = result + t
        return result

    def _factor(self, factor, witness: bool) -> Polynomial:
        if isinstance(factor, ParenFactor):
            return self.evaluate(factor.expr, witness) ** factor.power
        exp: Affine = factor.exponent
        if exp.params:
            raise self.error(f"malformed schema exponent: parameter outside a schema ({factor.name})", factor.loc)
        if exp.const < 0:
            raise self.error(f"negative exponent on {factor.name}", factor.loc)
        if witness and factor.name == F_SYMBOL and F_SYMBOL not in self.index:
            e = Polynomial.generator(self.index[self.idempotent])
            return (Polynomial.one() - e) ** exp.const
        return Polynomial.generator(self._lookup(factor.name, factor.loc)) ** exp.const


def parse_presentation(text: str) -> Presentation:
    statements = get_grammar().parse_document(text)
    presentation = PresentationBuilder(text).build(statements)
    logger.debug(
        f"Parsed presentation: {presentation.m} generators, {len(presentation.relations)} relations, "
        f"{len(presentation.schemas)} schemas"
    )
    return presentation


def parse_polynomial(text: str, presentation: Presentation) -> Polynomial:
    """Parse a polynomial over the generators of `presentation`."""
    expr = get_grammar().parse_polynomial(text)
    builder = PresentationBuilder(text)
    builder.names = presentation.names
    builder.index = {name: k for k, name in enumerate(presentation.names, start=1)}
    builder.idempotent = presentation.idempotent
    return builder.evaluate(expr)


def parse_generator_map(text: str, source: Presentation, target: Presentation) -> Dict[int, Polynomial]:
    """'a=x*y, b=y^2' -> {id(a): xy, id(b): yy}."""
    images: Dict[int, Polynomial] = {}
    for item in filter(None, (chunk.strip() for chunk in text.split(","))):
        name, sep, expr = item.partition("=")
        if not sep:
            raise ParseError(f"map entry '{item}' has no '='", 1, 1)
        gid = source.index_of(name.strip())
        if gid in images:
            raise PresentationError(f"generator {name.strip()} mapped twice")
        images[gid] = parse_polynomial(expr, target)
    return images


# printing
def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    pieces = []
    k = 0
    while k < len(w):
        run = 1
        while k + run < len(w) and w[k + run] == w[k]:
            run += 1
        name = names[w[k] - 1]
        pieces.append(name if run == 1 else f"{name}^{run}")
        k += run
    return "*".join(pieces)


def _signed_terms(p: Polynomial, names: Sequence[str], order: MonomialOrder) -> List[Tuple[bool, str]]:
    out = []
    for w in order.sorted_desc(p.words()):
        c = p.coefficient(w)
        a = abs(c)
        if not w:
            body = str(a)
        elif a == 1:
            body = format_word(w, names)
        else:
            body = f"{a}*{format_word(w, names)}"
        out.append((c < 0, body))
    return out


def _join(terms: List[Tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    negative, body = terms[0]
    text = ("-" if negative else "") + body
    for negative, body in terms[1:]:
        text += f" {'-' if negative else '+'} {body}"
    return text


def format_polynomial(p: Polynomial, names: Sequence[str], order: Optional[MonomialOrder] = None) -> str:
    order = order or MonomialOrder.default(len(names))
    return _join(_signed_terms(p, names, order))


def _format_exponent(exp: AffineExponent, parameter: str) -> str:
    if not exp.is_parametric:
        return "" if exp.const == 1 else f"^{exp.const}"
    text = parameter if exp.coeff == 1 else f"{exp.coeff}*{parameter}"
    if exp.const > 0:
        text += f"+{exp.const}"
    elif exp.const < 0:
        text += f"-{-exp.const}"
    return f"^({text})"


def format_schema(schema: RelationSchema, names: Sequence[str]) -> str:
    body = "*".join(names[g - 1] + _format_exponent(exp, schema.parameter) for g, exp in schema.factors)
    return f"schema {body} = 0 for {schema.parameter} >= {schema.lower};"


def _witness_factor(p: Polynomial, names: Sequence[str]) -> Optional[str]:
    if p == 1:
        return None
    if p.is_monomial():
        return format_polynomial(p, names)
    return f"({format_polynomial(p, names)})"


def format_witness(witness: WitnessDecomposition, names: Sequence[str], idempotent: str) -> str:
    symbol = idempotent if witness.side is Side.E else F_SYMBOL
    terms: List[Tuple[bool, str]] = []
    for u, v in witness.terms:
        negative = False
        if u.is_monomial():
            (w, c), = u.items()
            negative = c < 0
            lead = "" if abs(c) == 1 else f"{abs(c)}*"
            pieces = [format_word(w, names)] if w else []
        else:
            lead = ""
            pieces = [f"({format_polynomial(u, names)})"]
        pieces.append(symbol)
        right = _witness_factor(v, names)
        if right:
            pieces.append(right)
        terms.append((negative, lead + "*".join(pieces)))
    return f"witness {witness.side.value}: 1 = {_join(terms)};"


def print_canonical(p: Presentation) -> str:
    names = p.names
    lines = []
    if names:
        lines.append(f"gens {' '.join(names)};")
    if p.parity is not None:
        for parity in (Parity.ODD, Parity.EVEN):
            chosen = [g.name for g in p.generators if p.parity[g.id] is parity]
            if chosen:
                lines.append(f"{parity.value} {' '.join(chosen)};")
    for gid in sorted(p.peirce_types):
        lines.append(f"type {p.name_of(gid)} {p.peirce_types[gid].value};")
    if p.idempotent is not None:
        lines.append(f"idempotent {p.idempotent};")
    order = p.default_order()
    for r in p.relations:
        lines.append(f"rel {format_polynomial(r.value, names, order)};")
    for schema in p.schemas:
        lines.append(format_schema(schema, names))
    for side in (Side.E, Side.F):
        if side in p.witnesses:
            lines.append(format_witness(p.witnesses[side], names, p.idempotent))
    return "\n".join(lines) + "\n" if lines else ""


def expand_schemas(p: Presentation, max_deg: int) -> Presentation:
    """Replace schemas by their instances of degree <= max_deg (increasing parameter)."""
    if max_deg < 1:
        raise PresentationError("max_deg must be at least 1")
    relations = list(p.relations)
    present = set(relations)
    for schema in p.schemas:
        for i, rel in schema.instances_up_to(max_deg):
            if rel not in present:
                present.add(rel)
                relations.append(rel)
                logger.debug(f"Schema instance {schema.parameter}={i}: degree {rel.degree}")
    return replace(p, relations=tuple(relations), schemas=())


def load_presentation(path: str) -> Presentation:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise PresentationError(f"cannot read {path}: {e.strerror}") from e
    return parse_presentation(text)
