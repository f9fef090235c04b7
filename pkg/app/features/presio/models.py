from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.exceptions import PresentationError
from app.features.freealg.models import (
    Generator,
    MonomialOrder,
    Parity,
    ParityAssignment,
    Polynomial,
    Word,
)
from app.features.peirce.models import PeirceType, Side, WitnessDecomposition


@dataclass(frozen=True)
class Relation:
    """value = 0, stored monic under the declaration-order deglex."""
    value: Polynomial

    @classmethod
    def of(cls, p: Polynomial, order: MonomialOrder) -> "Relation":
        if p.is_zero():
            raise PresentationError("relation is the zero polynomial")
        return cls(p.monic(order))

    @property
    def degree(self) -> int:
        return int(self.value.degree)


@dataclass(frozen=True)
class AffineExponent:
    """coeff * i + const; coeff == 0 for plain integer exponents."""
    coeff: int
    const: int

    def at(self, i: int) -> int:
        return self.coeff * i + self.const

    @property
    def is_parametric(self) -> bool:
        return self.coeff != 0


@dataclass(frozen=True)
class RelationSchema:
    """A monomial family g1^(a1*i+b1) * ... * gk^(ak*i+bk) = 0 for i >= lower."""
    factors: Tuple[Tuple[int, AffineExponent], ...]
    parameter: str
    lower: int

    def degree_at(self, i: int) -> int:
        return sum(exp.at(i) for _, exp in self.factors)

    def slope(self) -> int:
        return sum(exp.coeff for _, exp in self.factors)

    def word_at(self, i: int) -> Word:
        w: List[int] = []
        for g, exp in self.factors:
            w.extend([g] * exp.at(i))
        return tuple(w)

    def instantiate(self, i: int) -> Relation:
        return Relation(Polynomial.monomial(self.word_at(i)))

    def instances_up_to(self, max_deg: int) -> List[Tuple[int, Relation]]:
        out = []
        i = self.lower
        while self.degree_at(i) <= max_deg:
            out.append((i, self.instantiate(i)))
            i += 1
        return out


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[Generator, ...]
    relations: Tuple[Relation, ...] = ()
    parity: Optional[ParityAssignment] = None
    schemas: Tuple[RelationSchema, ...] = ()
    idempotent: Optional[str] = None
    witnesses: Dict[Side, WitnessDecomposition] = field(default_factory=dict)
    peirce_types: Dict[int, PeirceType] = field(default_factory=dict)

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError("duplicate generator name")
        if [g.id for g in self.generators] != list(range(1, len(names) + 1)):
            raise PresentationError("generator ids must be dense 1..m")
        m = len(names)
        for r in self.relations:
            if any(a < 1 or a > m for a in r.value.letters()):
                raise PresentationError("relation mentions an undeclared generator")
        if self.idempotent is not None and self.idempotent not in names:
            raise PresentationError(f"undeclared idempotent {self.idempotent}")

    @classmethod
    def free(cls, names: Sequence[str], **kwargs) -> "Presentation":
        gens = tuple(Generator(k, n) for k, n in enumerate(names, start=1))
        return cls(gens, **kwargs)

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def index_of(self, name: str) -> int:
        for g in self.generators:
            if g.name == name:
                return g.id
        raise PresentationError(f"undeclared generator {name}")

    def name_of(self, gid: int) -> str:
        return self.generators[gid - 1].name

    def default_order(self) -> MonomialOrder:
        return MonomialOrder.default(self.m)

    def order_from_names(self, precedence: Optional[Sequence[str]]) -> MonomialOrder:
        if not precedence:
            return self.default_order()
        return MonomialOrder(tuple(self.index_of(n) for n in precedence))

    def relation_polys(self) -> List[Polynomial]:
        return [r.value for r in self.relations]

    def with_relations(self, polys: Sequence[Polynomial]) -> "Presentation":
        order = self.default_order()
        rels: List[Relation] = []
        seen = set()
        for p in polys:
            if p.is_zero():
                continue
            r = Relation.of(p, order)
            if r not in seen:
                seen.add(r)
                rels.append(r)
        return replace(self, relations=tuple(rels))

    def parity_or_odd(self) -> ParityAssignment:
        if self.parity is None:
            return {g.id: Parity.ODD for g in self.generators}
        return self.parity

    def is_homogeneous(self) -> bool:
        return all(r.value.is_homogeneous() for r in self.relations)

    def max_relation_degree(self) -> int:
        return max((r.degree for r in self.relations), default=0)
