import logging
from typing import Dict, List, Optional, Sequence

from app.core.exceptions import AlgebraError
from app.features.equiv.tietze import tietze_simplify
from app.features.freealg.models import MonomialOrder, PairIndex, Parity, ParityAssignment, Polynomial
from app.features.freealg.service import pair_encode_poly, pair_names
from app.features.grading.models import SplitRelations
from app.features.presio.models import Presentation, Relation
from app.features.presio.service import expand_schemas

logger = logging.getLogger(__name__)


def split_by_parity(rels: Sequence[Relation], pa: ParityAssignment) -> SplitRelations:
    order = MonomialOrder.default(len(pa))
    even: List[Relation] = []
    odd: List[Relation] = []
    for r in rels:
        even_part, odd_part = r.value.parity_parts(pa)
        if even_part:
            even.append(Relation.of(even_part, order))
        if odd_part:
            odd.append(Relation.of(odd_part, order))
    return SplitRelations(tuple(even), tuple(odd))


def _require_odd(pa: Optional[ParityAssignment]):
    if pa is not None and any(parity is Parity.EVEN for parity in pa.values()):
        raise AlgebraError("the even-part construction requires odd generators")


def build_mprime(split: SplitRelations, m: int, pa: Optional[ParityAssignment] = None) -> List[Relation]:
    """{a} + {x_i b} + {b x_i} + {x_i a x_j} for a in M0, b in M1; monic, duplicates removed."""
    _require_odd(pa)
    order = MonomialOrder.default(m)
    letters = [(g,) for g in range(1, m + 1)]
    candidates: List[Polynomial] = [a.value for a in split.even]
    candidates += [b.value.mul_words(x, ()) for b in split.odd for x in letters]
    candidates += [b.value.mul_words((), x) for b in split.odd for x in letters]
    candidates += [a.value.mul_words(x, y) for a in split.even for x in letters for y in letters]

    out: List[Relation] = []
    seen = set()
    for p in candidates:
        r = Relation.of(p, order)
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def mprime_cardinality_bound(split: SplitRelations, m: int) -> int:
    return len(split.even) * (1 + m * m) + 2 * m * len(split.odd)


def even_part_presentation(p: Presentation, max_deg: int, simplify: bool = False) -> Presentation:
    """Presentation of the even part A0 on the m^2 pair generators y_ij = x_i x_j."""
    _require_odd(p.parity)
    expanded = expand_schemas(p, max_deg)
    split = split_by_parity(expanded.relations, expanded.parity_or_odd())
    mprime = build_mprime(split, p.m)
    logger.info(
        f"M': {len(split.even)} even and {len(split.odd)} odd relations give {len(mprime)} elements "
        f"(bound {mprime_cardinality_bound(split, p.m)})"
    )

    encoded = [pair_encode_poly(r.value, p.m) for r in mprime]
    out = Presentation.free(pair_names(p.names)).with_relations(encoded)
    if simplify:
        out = tietze_simplify(out, max(out.max_relation_degree(), max_deg // 2))
    logger.info(f"Even part: {out.m} generators, {len(out.relations)} relations")
    return out


def pair_generator_map(source: Presentation, pair_presentation: Presentation) -> Dict[int, Polynomial]:
    """The encoding map y_ij -> x_i x_j from the generators of a pair presentation into `source`."""
    ids = {name: k for k, name in enumerate(pair_names(source.names), start=1)}
    images: Dict[int, Polynomial] = {}
    for g in pair_presentation.generators:
        if g.name not in ids:
            raise AlgebraError(f"{g.name} is not a pair generator of the source presentation")
        pair = PairIndex.from_id(ids[g.name], source.m)
        images[g.id] = Polynomial.monomial((pair.i, pair.j))
    return images
