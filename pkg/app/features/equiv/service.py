import logging
from typing import List, Optional

from app.core.exceptions import AlgebraError, TruncationError
from app.features.equiv.models import GeneratorMap
from app.features.equiv.schemas import (
    DegreeComparison,
    EquivalenceReport,
    EquivalenceVerdict,
    IndependenceReport,
    RelationCheck,
    SchemaInstanceCheck,
)
from app.features.freealg.models import MonomialOrder, Polynomial
from app.features.ncgb.models import MembershipVerdict, RewriteSystem
from app.features.ncgb.service import complete_truncated, hilbert_profile, ideal_member
from app.features.presio.models import Presentation
from app.features.presio.service import expand_schemas, format_polynomial, format_schema

logger = logging.getLogger(__name__)


def complete_presentation(p: Presentation, max_deg: int, order: Optional[MonomialOrder] = None,
                          trace: bool = False) -> RewriteSystem:
    """Expand schemas to max_deg and complete the relations, never truncating below a relation's degree."""
    expanded = expand_schemas(p, max_deg) if p.schemas else p
    bound = max(max_deg, expanded.max_relation_degree())
    return complete_truncated(expanded.relation_polys(), order or p.default_order(), bound, trace=trace)


def compare_hilbert(p1: Presentation, p2: Presentation, max_d: int, ratio: int = 1) -> EquivalenceReport:
    """dims(p2)[d] against dims(p1)[ratio * d] for d = 0..max_d."""
    if ratio < 1:
        raise AlgebraError("ratio must be at least 1")
    if max_d < 0:
        raise AlgebraError("max_d must be non-negative")
    rs1 = complete_presentation(p1, ratio * max_d)
    rs2 = complete_presentation(p2, max_d)
    h1 = hilbert_profile(rs1, ratio * max_d)
    h2 = hilbert_profile(rs2, max_d)

    rows = [
        DegreeComparison(degree=d, left=h1[ratio * d], right=h2[d], matches=h1[ratio * d] == h2[d])
        for d in range(max_d + 1)
    ]
    mismatch = next((row.degree for row in rows if not row.matches), None)
    exact = h1.exact and h2.exact and p1.is_homogeneous() and p2.is_homogeneous()
    if not exact:
        verdict = EquivalenceVerdict.INCONCLUSIVE
    elif mismatch is None:
        verdict = EquivalenceVerdict.CONSISTENT
    else:
        verdict = EquivalenceVerdict.MISMATCH
    logger.info(f"Hilbert comparison up to degree {max_d} (ratio {ratio}): {verdict.value}")
    return EquivalenceReport(
        degree_bound=max_d, ratio=ratio, dims=rows, verdict=verdict, mismatch_degree=mismatch, exact=exact
    )


def check_generator_map(src: Presentation, dst: Presentation, gm: GeneratorMap, max_deg: int) -> EquivalenceReport:
    """Does gm send every relation of src into the ideal of dst (up to max_deg)?"""
    source = expand_schemas(src, max_deg) if src.schemas else src
    rs = complete_presentation(dst, max_deg)

    checks: List[RelationCheck] = []
    verdicts = []
    for r in source.relations:
        image = gm.apply(r.value)
        if image.degree > rs.truncation_degree:
            raise TruncationError(
                f"image of {format_polynomial(r.value, src.names)} has degree {int(image.degree)}, "
                f"above the truncation {rs.truncation_degree}"
            )
        verdict = ideal_member(image, rs)
        verdicts.append(verdict)
        checks.append(RelationCheck(
            relation=format_polynomial(r.value, src.names),
            image=format_polynomial(image, dst.names),
            verdict=verdict.value,
        ))

    if all(v is MembershipVerdict.MEMBER for v in verdicts):
        overall = EquivalenceVerdict.CONSISTENT
    elif any(v is MembershipVerdict.NON_MEMBER for v in verdicts):
        overall = EquivalenceVerdict.MISMATCH
    else:
        overall = EquivalenceVerdict.INCONCLUSIVE
    return EquivalenceReport(degree_bound=max_deg, relations=checks, verdict=overall, exact=rs.exact)


def schema_independence(p: Presentation, count: int) -> List[IndependenceReport]:
    """
    Finite evidence that a relation schema cannot be cut off: the i-th instance is not a
    consequence of the plain relations and the earlier instances, checked at truncation
    degree(instance) + 2.
    """
    reports = []
    plain = [r.value for r in p.relations]
    for schema in p.schemas:
        checks: List[SchemaInstanceCheck] = []
        earlier = []
        for i in range(schema.lower, schema.lower + count):
            instance = schema.instantiate(i).value
            truncation = schema.degree_at(i) + 2
            rs = complete_truncated(plain + earlier, p.default_order(), max([truncation] + [int(q.degree) for q in plain + earlier]))
            verdict = ideal_member(instance, rs)
            checks.append(SchemaInstanceCheck(
                parameter=i,
                instance=format_polynomial(instance, p.names),
                truncation=truncation,
                verdict=verdict.value,
            ))
            earlier.append(instance)

        if all(c.verdict == MembershipVerdict.NON_MEMBER.value for c in checks):
            overall = EquivalenceVerdict.CONSISTENT
        elif any(c.verdict == MembershipVerdict.MEMBER.value for c in checks):
            overall = EquivalenceVerdict.MISMATCH
        else:
            overall = EquivalenceVerdict.INCONCLUSIVE
        reports.append(IndependenceReport(schema_text=format_schema(schema, p.names), instances=checks, verdict=overall))
    return reports


def identity_map(p: Presentation, target: Presentation) -> GeneratorMap:
    images = {g.id: Polynomial.generator(target.index_of(g.name)) for g in p.generators}
    return GeneratorMap(p, target, images)
