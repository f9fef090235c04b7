"""
Deterministic Tietze simplification of presentations.

Moves, applied until nothing changes:
  1. relations are made monic; zero relations and repeats are dropped
  2. a relation g (a lone generator) deletes g and every word containing it
  3. a relation c*g + Q with g absent from Q eliminates g := -Q/c
  4. a generator whose normal form differs from itself gets the relation g - NF(g)
Finally relations that follow from the others (up to the degree bound) are dropped.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set

from app.features.freealg.models import MonomialOrder, Polynomial
from app.features.ncgb.service import complete_truncated, reduce_poly
from app.features.peirce.models import WitnessDecomposition
from app.features.presio.models import Presentation, Relation
from app.features.presio.service import expand_schemas

logger = logging.getLogger(__name__)


@dataclass
class TietzeResult:
    presentation: Presentation
    # input generator id -> expression over surviving input ids (0 for deleted generators)
    substitution: Dict[int, Polynomial] = field(default_factory=dict)
    # surviving input id -> output id
    renumbering: Dict[int, int] = field(default_factory=dict)
    source_names: Dict[int, str] = field(default_factory=dict, repr=False)

    def transport(self, p: Polynomial) -> Polynomial:
        """Rewrite a polynomial over the input generators in the output generators."""
        return p.substitute(self.substitution).rename(self.renumbering)

    @property
    def eliminated(self) -> Dict[str, Polynomial]:
        """Eliminated generator (by name) -> its expression over the output generators."""
        return {self.source_names[g]: self.transport(p) for g, p in sorted(self.substitution.items())}


class TietzeSimplifier:
    def __init__(self, max_deg: int, protected: Sequence[str] = ()):
        self.max_deg = max_deg
        self.protected = set(protected)

    def run(self, p: Presentation) -> TietzeResult:
        if p.schemas:
            p = expand_schemas(p, self.max_deg)
        order = p.default_order()
        alive: List[int] = [g.id for g in p.generators]
        frozen: Set[int] = {g.id for g in p.generators if g.name in self.protected}
        relations = self._normalize(p.relation_polys(), order)
        substitution: Dict[int, Polynomial] = {}

        def eliminate(g: int, image: Polynomial):
            nonlocal relations
            for k in list(substitution):
                substitution[k] = substitution[k].substitute({g: image})
            substitution[g] = image
            alive.remove(g)
            relations = self._normalize([r.substitute({g: image}) for r in relations], order)
            logger.debug(f"Tietze: {p.name_of(g)} := {image!r}")

        while True:
            g = self._lone_generator(relations, frozen)
            if g is not None:
                eliminate(g, Polynomial.zero())
                continue
            candidate = self._substitution_candidate(relations, alive, frozen)
            if candidate is not None:
                eliminate(*candidate)
                continue
            extended = self._extend(relations, alive, frozen, order)
            if extended is None:
                break
            relations = extended

        relations = self._drop_redundant(relations, order)
        return self._assemble(p, alive, relations, substitution)

    @staticmethod
    def _normalize(polys: Sequence[Polynomial], order: MonomialOrder) -> List[Polynomial]:
        out: List[Polynomial] = []
        seen = set()
        for q in polys:
            if q.is_zero():
                continue
            q = q.monic(order)
            if q not in seen:
                seen.add(q)
                out.append(q)
        return out

    @staticmethod
    def _lone_generator(relations: Sequence[Polynomial], frozen: Set[int]) -> Optional[int]:
        for r in relations:
            if r.is_monomial():
                (w, _), = r.items()
                if len(w) == 1 and w[0] not in frozen:
                    return w[0]
        return None

    def _substitution_candidate(self, relations, alive, frozen):
        for g in alive:
            if g in frozen:
                continue
            for r in relations:
                c = r.coefficient((g,))
                if not c or any(g in w for w in r.words() if w != (g,)):
                    continue
                image = (Polynomial.generator(g) - r.scale(1 / c))
                if image.degree > self.max_deg:
                    continue
                blown = any(q.substitute({g: image}).degree > self.max_deg for q in relations if q is not r)
                if blown:
                    logger.debug(f"Tietze: eliminating generator {g} would exceed degree {self.max_deg}")
                    continue
                return g, image
        return None

    def _bound(self, relations: Sequence[Polynomial]) -> int:
        return max([self.max_deg] + [int(r.degree) for r in relations])

    def _extend(self, relations, alive, frozen, order) -> Optional[List[Polynomial]]:
        if not relations:
            return None
        rs = complete_truncated(relations, order, self._bound(relations))
        present = set(relations)
        added = []
        for g in alive:
            if g in frozen:
                continue
            gen = Polynomial.generator(g)
            nf = reduce_poly(gen, rs)
            if nf != gen:
                consequence = (gen - nf).monic(order)
                if consequence not in present:
                    added.append(consequence)
        if not added:
            return None
        logger.debug(f"Tietze: {len(added)} generator consequences added")
        return self._normalize(list(relations) + added, order)

    def _drop_redundant(self, relations: List[Polynomial], order: MonomialOrder) -> List[Polynomial]:
        kept = list(relations)
        for r in sorted(relations, key=lambda q: order.key(q.leading_term(order)[0]), reverse=True):
            others = [q for q in kept if q is not r]
            if len(others) == len(kept):
                continue
            if not others:
                break
            rs = complete_truncated(others, order, self._bound(kept))
            if reduce_poly(r, rs).is_zero():
                kept = others
        return kept

    def _assemble(self, p: Presentation, alive, relations, substitution) -> TietzeResult:
        renumbering = {g: k for k, g in enumerate(alive, start=1)}
        names = [p.name_of(g) for g in alive]
        new_order = MonomialOrder.default(len(alive))
        moved = [r.rename(renumbering) for r in relations]
        moved.sort(key=lambda q: new_order.key(q.leading_term(new_order)[0]))

        def transport(q: Polynomial) -> Polynomial:
            return q.substitute(substitution).rename(renumbering)

        witnesses = {}
        for side, w in p.witnesses.items():
            terms = [(transport(u), transport(v)) for u, v in w.terms]
            if any(u and v for u, v in terms):
                witnesses[side] = WitnessDecomposition.build(side, terms)
        out = Presentation.free(
            names,
            relations=tuple(Relation.of(q, new_order) for q in moved),
            parity={renumbering[g]: p.parity[g] for g in alive} if p.parity is not None else None,
            idempotent=p.idempotent if p.idempotent in names else None,
            witnesses=witnesses,
            peirce_types={renumbering[g]: t for g, t in p.peirce_types.items() if g in renumbering},
        )
        if out.m != p.m or len(out.relations) != len(p.relations):
            logger.info(
                f"Tietze: {p.m} -> {out.m} generators, {len(p.relations)} -> {len(out.relations)} relations"
            )
        return TietzeResult(out, dict(substitution), renumbering, {g.id: g.name for g in p.generators})


def tietze_simplify(p: Presentation, max_deg: int, protected: Sequence[str] = ()) -> Presentation:
    return TietzeSimplifier(max_deg, protected).run(p).presentation
