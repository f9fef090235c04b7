"""
The Peirce component eAe of an algebra with a full idempotent e.

    peirce_homogenize        split every generator into its four Peirce components
    build_odd_generating_set rewrite everything in odd generators using the witnesses
    even part (pair coding)  present A0 = eAe + fAf on pair generators
    f_Y = 0                  cut off the fAf summand
"""
import logging
from dataclasses import replace
from typing import Callable, Dict, List, Optional

from app.core.config import get_settings
from app.core.exceptions import PipelineError, PresentationError, TruncationError
from app.features.equiv.service import complete_presentation
from app.features.equiv.tietze import TietzeSimplifier, tietze_simplify
from app.features.freealg.models import Parity, Polynomial
from app.features.freealg.service import pair_encode_poly
from app.features.grading.service import even_part_presentation
from app.features.ncgb.models import MembershipVerdict, RewriteSystem
from app.features.ncgb.service import ideal_member, reduce_poly
from app.features.peirce.models import (
    HomogenizedPresentation,
    IdempotentSpec,
    OddGeneratingSet,
    PeirceResult,
    PeirceType,
    Side,
    WitnessDecomposition,
    WitnessVerdict,
)
from app.features.presio.models import Presentation, Relation
from app.features.presio.service import expand_schemas

logger = logging.getLogger(__name__)

COMPONENT_TYPES = (PeirceType.EE, PeirceType.EF, PeirceType.FE, PeirceType.FF)


def _idempotent_relation(e: Polynomial) -> Polynomial:
    return e * e - e


def _require_idempotent_relation(p: Presentation, spec: IdempotentSpec, rs: Optional[RewriteSystem] = None):
    e = Polynomial.generator(p.index_of(spec.name))
    idem = _idempotent_relation(e)
    if Relation.of(idem, p.default_order()) in p.relations:
        return
    rs = rs or complete_presentation(p, max(2, p.max_relation_degree()))
    if reduce_poly(idem, rs):
        raise PresentationError(f"missing idempotent relation {spec.name}^2 - {spec.name}")


def witness_expression(w: WitnessDecomposition, e: Polynomial) -> Polynomial:
    """sum u * s * v with s = e on side E and s = 1 - e on side F."""
    s = e if w.side is Side.E else Polynomial.one() - e
    total = Polynomial.zero()
    for u, v in w.terms:
        total = total + u * s * v
    return total


def verify_witnesses(p: Presentation, spec: IdempotentSpec, w_e: Optional[WitnessDecomposition],
                     w_f: Optional[WitnessDecomposition], max_deg: int) -> WitnessVerdict:
    for side, w in ((Side.E, w_e), (Side.F, w_f)):
        if w is None:
            raise PresentationError(f"witness {side.value} is missing")
        for u, v in w.terms:
            if any(a > p.m for a in u.letters() | v.letters()):
                raise PresentationError(f"witness {side.value} mentions an undeclared generator")

    rs = complete_presentation(p, max_deg)
    _require_idempotent_relation(p, spec, rs)
    e = Polynomial.generator(p.index_of(spec.name))

    verified = True
    for w in (w_e, w_f):
        defect = Polynomial.one() - witness_expression(w, e)
        if defect.degree > rs.truncation_degree:
            raise TruncationError(f"witness {w.side.value} has degree {int(defect.degree)}, above the truncation")
        if reduce_poly(defect, rs):
            logger.info(f"Witness {w.side.value} does not reduce to 1 up to degree {rs.truncation_degree}")
            verified = False
    return WitnessVerdict.VERIFIED if verified else WitnessVerdict.INCONCLUSIVE


def component_name(name: str, kind: PeirceType) -> str:
    return f"{name}_{kind.value}"


def peirce_homogenize(p: Presentation, spec: IdempotentSpec) -> HomogenizedPresentation:
    """Replace each generator g != e by g_ee + g_ef + g_fe + g_ff and add the typing relations."""
    _require_idempotent_relation(p, spec)
    eid = p.index_of(spec.name)

    names = [spec.name]
    types: Dict[int, PeirceType] = {1: PeirceType.EE}
    image_by_id: Dict[int, Polynomial] = {eid: Polynomial.generator(1)}
    for g in p.generators:
        if g.id == eid:
            continue
        image = Polynomial.zero()
        for kind in COMPONENT_TYPES:
            names.append(component_name(g.name, kind))
            types[len(names)] = kind
            image = image + Polynomial.generator(len(names))
        image_by_id[g.id] = image

    e = Polynomial.generator(1)
    relations = [r.value.substitute(image_by_id) for r in p.relations]
    relations.append(_idempotent_relation(e))
    for gid, kind in types.items():
        if gid == 1:
            continue
        z = Polynomial.generator(gid)
        relations.append(e * z - z if kind.left is Side.E else e * z)
        relations.append(z * e - z if kind.right is Side.E else z * e)

    witnesses = {
        side: WitnessDecomposition.build(side, [(u.substitute(image_by_id), v.substitute(image_by_id)) for u, v in w.terms])
        for side, w in p.witnesses.items()
    }
    hp = Presentation.free(
        names,
        parity={gid: Parity.ODD if kind.is_odd else Parity.EVEN for gid, kind in types.items()},
        idempotent=spec.name,
        witnesses=witnesses,
        peirce_types=types,
    ).with_relations(relations)
    images = {p.name_of(gid): image for gid, image in image_by_id.items()}
    logger.info(f"Homogenized: {hp.m} typed generators, {len(hp.relations)} relations")
    return HomogenizedPresentation(hp, spec.name, p.names, images)


def _omega_type(prefix: str) -> PeirceType:
    return {"lam": PeirceType.EF, "rho": PeirceType.FE, "mu": PeirceType.FE,
            "nu": PeirceType.EF, "sigma": PeirceType.FE}[prefix]


def build_odd_generating_set(hp: HomogenizedPresentation, w_e: WitnessDecomposition, w_f: WitnessDecomposition,
                             max_deg: int, rs: Optional[RewriteSystem] = None) -> OddGeneratingSet:
    P = hp.presentation
    rs = rs or complete_presentation(P, max_deg)
    e = Polynomial.generator(P.index_of(hp.idempotent))
    f = Polynomial.one() - e
    to_hp = hp.image_map()

    def lift(q: Polynomial) -> Polynomial:
        return q.substitute(to_hp)

    names: List[str] = []
    definitions: Dict[str, Polynomial] = {}
    types: Dict[str, PeirceType] = {}

    def add(name: str, definition: Polynomial, kind: PeirceType):
        if definition.degree > max_deg:
            raise TruncationError(f"degree bound {max_deg} is too small for the expression of {name}")
        names.append(name)
        definitions[name] = definition
        types[name] = kind

    kinds = P.peirce_types
    mismatched = [g for g in P.generators if kinds[g.id].is_odd]
    ee = [g for g in P.generators if kinds[g.id] is PeirceType.EE]
    ff = [g for g in P.generators if kinds[g.id] is PeirceType.FF]

    for g in mismatched:
        add(g.name, Polynomial.generator(g.id), kinds[g.id])
    for z in ee:
        for j, (s, _) in enumerate(w_f.terms, start=1):
            add(f"lam_{z.name}_{j}", Polynomial.generator(z.id) * lift(s) * f, _omega_type("lam"))
    for j, (_, t) in enumerate(w_f.terms, start=1):
        add(f"rho_{j}", f * lift(t) * e, _omega_type("rho"))
    for z in ff:
        for i, (u, _) in enumerate(w_e.terms, start=1):
            add(f"mu_{z.name}_{i}", Polynomial.generator(z.id) * lift(u) * e, _omega_type("mu"))
    for i, (_, v) in enumerate(w_e.terms, start=1):
        add(f"nu_{i}", e * lift(v) * f, _omega_type("nu"))
    for i, (u, _) in enumerate(w_e.terms, start=1):
        add(f"sigma_{i}", f * lift(u) * e, _omega_type("sigma"))

    omega_id = {name: k for k, name in enumerate(names, start=1)}

    def gen(name: str) -> Polynomial:
        return Polynomial.generator(omega_id[name])

    factor: Dict[int, Polynomial] = {}
    for g in mismatched:
        factor[g.id] = gen(g.name)
    for z in ee:
        factor[z.id] = _sum(gen(f"lam_{z.name}_{j}") * gen(f"rho_{j}") for j in range(1, len(w_f.terms) + 1))
    for z in ff:
        factor[z.id] = _sum(gen(f"mu_{z.name}_{i}") * gen(f"nu_{i}") for i in range(1, len(w_e.terms) + 1))

    relations = [r.value.substitute(factor) for r in P.relations]
    # any representative of the defining element works, so use its normal form
    relations += [gen(name) - reduce_poly(definitions[name], rs).substitute(factor) for name in names]
    split: List[Polynomial] = []
    for r in relations:
        split.extend(r.parity_parts())

    omega = Presentation.free(
        names,
        parity={k: Parity.ODD for k in range(1, len(names) + 1)},
        peirce_types={omega_id[name]: kind for name, kind in types.items()},
    ).with_relations(split)
    logger.info(f"Odd generating set: {omega.m} generators, {len(omega.relations)} relations")
    return OddGeneratingSet(
        presentation=omega,
        definitions=definitions,
        lam_rho=[(f"lam_{hp.idempotent}_{j}", f"rho_{j}") for j in range(1, len(w_f.terms) + 1)],
        sigma_nu=[(f"sigma_{i}", f"nu_{i}") for i in range(1, len(w_e.terms) + 1)],
    )


def _sum(polys) -> Polynomial:
    total = Polynomial.zero()
    for q in polys:
        total = total + q
    return total


class PeirceService:
    def __init__(self, max_deg: int, simplify: bool = False, override_witnesses: bool = False,
                 prune_stages: Optional[bool] = None):
        self.max_deg = max_deg
        self.simplify = simplify
        self.override_witnesses = override_witnesses
        self.prune_stages = get_settings().PEIRCE_PRUNE_STAGES if prune_stages is None else prune_stages

    def run(self, p: Presentation) -> PeirceResult:
        if p.idempotent is None:
            raise PresentationError("no idempotent designated")
        spec = IdempotentSpec(p.idempotent)
        w_e, w_f = p.witnesses.get(Side.E), p.witnesses.get(Side.F)
        if p.schemas:
            p = expand_schemas(p, self.max_deg)

        warnings: List[str] = []
        rs = complete_presentation(p, self.max_deg)
        if rs.degenerate:
            logger.warning("Input presents the zero algebra")
            warnings.append("presented algebra is degenerate (1 = 0)")

        verdict = verify_witnesses(p, spec, w_e, w_f, self.max_deg)
        if verdict is not WitnessVerdict.VERIFIED:
            if not self.override_witnesses:
                raise PipelineError(
                    f"fullness witnesses are {verdict.value} at degree {self.max_deg}; refusing to continue"
                )
            warnings.append(f"witnesses {verdict.value}; continuing on override")

        hp = peirce_homogenize(p, spec)
        if self.prune_stages:
            hp = self._prune_homogenized(hp)
        odd = build_odd_generating_set(hp, w_e, w_f, self.max_deg)

        omega = odd.presentation
        transport: Callable[[Polynomial], Polynomial] = lambda q: q
        if self.prune_stages:
            pruned = TietzeSimplifier(self.max_deg).run(omega)
            omega, transport = pruned.presentation, pruned.transport

        def expression(pairs) -> Polynomial:
            ids = odd.presentation.index_of
            return _sum(
                transport(Polynomial.generator(ids(left))) * transport(Polynomial.generator(ids(right)))
                for left, right in pairs
            )

        rs_omega = complete_presentation(omega, self.max_deg)
        f_y = pair_encode_poly(reduce_poly(expression(odd.sigma_nu), rs_omega), omega.m)
        e_y = pair_encode_poly(reduce_poly(expression(odd.lam_rho), rs_omega), omega.m)

        y = even_part_presentation(omega, self.max_deg, simplify=False)
        out = y.with_relations(y.relation_polys() + [f_y])
        y_bound = max(self.max_deg // 2, out.max_relation_degree(), 1)
        unit = ideal_member(e_y - Polynomial.one(), complete_presentation(out, y_bound))
        if unit is not MembershipVerdict.MEMBER:
            warnings.append(f"e_Y - 1 is {unit.value} at degree {y_bound}")
        if self.simplify:
            out = tietze_simplify(out, y_bound)

        logger.info(f"Peirce component: {out.m} generators, {len(out.relations)} relations")
        return PeirceResult(
            presentation=out,
            witness_verdict=verdict.value,
            omega=list(odd.presentation.names),
            unit_verdict=unit.value,
            degenerate=rs.degenerate,
            warnings=warnings,
        )

    def _prune_homogenized(self, hp: HomogenizedPresentation) -> HomogenizedPresentation:
        result = TietzeSimplifier(self.max_deg, protected=[hp.idempotent]).run(hp.presentation)
        images = {name: result.transport(image) for name, image in hp.images.items()}
        return HomogenizedPresentation(result.presentation, hp.idempotent, hp.source_names, images)


def peirce_component_presentation(p: Presentation, spec: IdempotentSpec, w_e: WitnessDecomposition,
                                  w_f: WitnessDecomposition, max_deg: int, simplify: bool = False,
                                  override_witnesses: bool = False) -> Presentation:
    source = replace(p, idempotent=spec.name, witnesses={Side.E: w_e, Side.F: w_f})
    return PeirceService(max_deg, simplify, override_witnesses).run(source).presentation
