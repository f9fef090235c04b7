import json
import logging
from dataclasses import replace
from functools import singledispatch
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from app.core.exceptions import FpaError, PresentationError
from app.features.cli.schemas import (
    EvidenceReport,
    GbReport,
    HilbertReport,
    MemberReport,
    MprimeReport,
    OutputFormat,
    ParseReport,
    PeirceReport,
    PresentationReport,
    RunConfig,
)
from app.features.equiv.models import GeneratorMap
from app.features.equiv.schemas import EquivalenceReport, EquivalenceVerdict
from app.features.equiv.service import (
    check_generator_map,
    compare_hilbert,
    complete_presentation,
    schema_independence,
)
from app.features.equiv.tietze import TietzeSimplifier
from app.features.grading.service import build_mprime, even_part_presentation, mprime_cardinality_bound, split_by_parity
from app.features.ncgb.models import MembershipVerdict
from app.features.ncgb.service import confluence_certificate, hilbert_profile, ideal_member, reduce_poly
from app.features.peirce.service import PeirceService
from app.features.presio.models import Presentation
from app.features.presio.service import (
    expand_schemas,
    format_polynomial,
    format_word,
    load_presentation,
    parse_generator_map,
    parse_polynomial,
    print_canonical,
)

logger = logging.getLogger(__name__)

HOMOGENIZATION_NOTE = (
    "generators are split into Peirce components g_ee + g_ef + g_fe + g_ff; "
    "this typing step is a constructive choice, not part of the underlying theorem"
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def build_config(**kwargs) -> RunConfig:
    try:
        return RunConfig(**kwargs)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        raise FpaError(f"invalid arguments: {problems}") from e


class CliService:
    """One handler per subcommand; each returns (report, exit code)."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.handlers: Dict[str, Callable[[], Tuple[BaseModel, int]]] = {
            "parse": self.parse,
            "gb": self.gb,
            "hilbert": self.hilbert,
            "member": self.member,
            "even-part": self.even_part,
            "peirce": self.peirce,
            "verify-equiv": self.verify_equiv,
            "check-map": self.check_map,
            "simplify": self.simplify,
            "mprime": self.mprime,
            "evidence": self.evidence,
        }

    def dispatch(self) -> Tuple[BaseModel, int]:
        handler = self.handlers.get(self.cfg.subcommand)
        if handler is None:
            raise FpaError(f"unknown subcommand {self.cfg.subcommand}")
        logger.info(f"Running {self.cfg.subcommand} on {', '.join(self.cfg.inputs)} (max_deg {self.cfg.max_deg})")
        return handler()

    def _load(self, k: int = 0) -> Presentation:
        return load_presentation(self.cfg.inputs[k])

    def _order(self, p: Presentation):
        return p.order_from_names(self.cfg.precedence)

    def parse(self):
        p = self._load()
        report = ParseReport(
            canonical=print_canonical(p), generators=p.m, relations=len(p.relations), schemas=len(p.schemas)
        )
        return report, EXIT_OK

    def gb(self):
        p = self._load()
        rs = complete_presentation(p, self.cfg.max_deg, self._order(p))
        rules = [
            f"{format_word(r.lhs, p.names)} -> {format_polynomial(r.rhs, p.names, rs.order)}" for r in rs.rules
        ]
        failures = [format_word(w, p.names) for w in confluence_certificate(rs)]
        report = GbReport(
            rules=rules,
            degree_bound=rs.truncation_degree,
            complete=rs.complete_up_to_degree,
            exact=rs.exact,
            degenerate=rs.degenerate,
            confluence_failures=failures,
        )
        if failures:
            return report, EXIT_MISMATCH
        return report, EXIT_OK if rs.complete_up_to_degree else EXIT_INCONCLUSIVE

    def hilbert(self):
        p = self._load()
        max_d = self.cfg.max_d if self.cfg.max_d is not None else self.cfg.max_deg
        rs = complete_presentation(p, max(self.cfg.max_deg, max_d), self._order(p))
        profile = hilbert_profile(rs, max_d)
        report = HilbertReport(dims=list(profile.dims), exact=profile.exact, degree_bound=rs.truncation_degree)
        return report, EXIT_OK if profile.exact else EXIT_INCONCLUSIVE

    def member(self):
        if self.cfg.element is None:
            raise FpaError("member needs --element")
        p = self._load()
        if not self.cfg.expand_schemas:
            # the finitely many plain relations only
            p = replace(p, schemas=())
        element = parse_polynomial(self.cfg.element, p)
        rs = complete_presentation(p, max(self.cfg.max_deg, int(element.degree) if element else 0), self._order(p))
        verdict = ideal_member(element, rs)
        report = MemberReport(
            element=format_polynomial(element, p.names, rs.order),
            normal_form=format_polynomial(reduce_poly(element, rs), p.names, rs.order),
            degree_bound=rs.truncation_degree,
            verdict=verdict.value,
        )
        codes = {
            MembershipVerdict.MEMBER: EXIT_OK,
            MembershipVerdict.NON_MEMBER: EXIT_MISMATCH,
            MembershipVerdict.UNKNOWN: EXIT_INCONCLUSIVE,
        }
        return report, codes[verdict]

    def even_part(self):
        out = even_part_presentation(self._load(), self.cfg.max_deg, simplify=self.cfg.simplify)
        return _presentation_report(out), EXIT_OK

    def peirce(self):
        result = PeirceService(
            self.cfg.max_deg, simplify=self.cfg.simplify, override_witnesses=self.cfg.override_witnesses
        ).run(self._load())
        out = result.presentation
        report = PeirceReport(
            presentation=print_canonical(out),
            generators=out.m,
            relations=len(out.relations),
            witness_verdict=result.witness_verdict,
            omega=result.omega,
            unit_verdict=result.unit_verdict,
            degenerate=result.degenerate,
            warnings=result.warnings,
            notes=[HOMOGENIZATION_NOTE],
        )
        return report, EXIT_OK if result.unit_verdict == MembershipVerdict.MEMBER.value else EXIT_INCONCLUSIVE

    def verify_equiv(self):
        if len(self.cfg.inputs) != 2:
            raise FpaError("verify-equiv needs two presentations")
        ratio = self.cfg.ratio
        max_d = self.cfg.max_d if self.cfg.max_d is not None else self.cfg.max_deg // ratio
        report = compare_hilbert(self._load(0), self._load(1), max_d, ratio)
        return report, _verdict_code(report.verdict)

    def check_map(self):
        if len(self.cfg.inputs) != 2:
            raise FpaError("check-map needs a source and a target presentation")
        if not self.cfg.generator_map:
            raise FpaError("check-map needs --map")
        src, dst = self._load(0), self._load(1)
        gm = GeneratorMap(src, dst, parse_generator_map(self.cfg.generator_map, src, dst))
        report = check_generator_map(src, dst, gm, self.cfg.max_deg)
        return report, _verdict_code(report.verdict)

    def simplify(self):
        result = TietzeSimplifier(self.cfg.max_deg).run(self._load())
        out = result.presentation
        eliminated = [
            f"{name} = {format_polynomial(image, out.names)}" for name, image in result.eliminated.items()
        ]
        return _presentation_report(out, eliminated), EXIT_OK

    def mprime(self):
        p = expand_schemas(self._load(), self.cfg.max_deg)
        split = split_by_parity(p.relations, p.parity_or_odd())
        mprime = build_mprime(split, p.m, p.parity)
        report = MprimeReport(
            even=[format_polynomial(r.value, p.names) for r in split.even],
            odd=[format_polynomial(r.value, p.names) for r in split.odd],
            mprime=[format_polynomial(r.value, p.names) for r in mprime],
            bound=mprime_cardinality_bound(split, p.m),
        )
        return report, EXIT_OK

    def evidence(self):
        p = self._load()
        if not p.schemas:
            raise PresentationError("presentation has no relation schemas")
        reports = schema_independence(p, self.cfg.count)
        verdicts = {r.verdict for r in reports}
        if verdicts == {EquivalenceVerdict.CONSISTENT}:
            overall = EquivalenceVerdict.CONSISTENT
        elif EquivalenceVerdict.MISMATCH in verdicts:
            overall = EquivalenceVerdict.MISMATCH
        else:
            overall = EquivalenceVerdict.INCONCLUSIVE
        return EvidenceReport(schemas=reports, verdict=overall.value), _verdict_code(overall)


def _presentation_report(p: Presentation, eliminated: Optional[List[str]] = None) -> PresentationReport:
    return PresentationReport(
        presentation=print_canonical(p), generators=p.m, relations=len(p.relations), eliminated=eliminated or []
    )


def _verdict_code(verdict: EquivalenceVerdict) -> int:
    return {
        EquivalenceVerdict.CONSISTENT: EXIT_OK,
        EquivalenceVerdict.MISMATCH: EXIT_MISMATCH,
        EquivalenceVerdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[verdict]


def dispatch(cfg: RunConfig) -> Tuple[BaseModel, int]:
    return CliService(cfg).dispatch()


# rendering
def _stringify(value):
    """JSON numbers are emitted as decimal strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {k: _stringify(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_stringify(v) for v in value]
    return value


def render_json(report: BaseModel) -> str:
    return json.dumps(_stringify(report.model_dump(mode="json")), sort_keys=True, indent=2) + "\n"


def _lines(title: str, items: List[str]) -> List[str]:
    if not items:
        return []
    return [f"{title}:"] + [f"  {item}" for item in items]


@singledispatch
def render_text(report: BaseModel) -> str:
    return "\n".join(f"{key}: {value}" for key, value in report.model_dump(mode="json").items()) + "\n"


@render_text.register
def _(report: ParseReport) -> str:
    return report.canonical


@render_text.register
def _(report: GbReport) -> str:
    lines = [f"{len(report.rules)} rules (truncation {report.degree_bound})"]
    lines += [f"  {rule}" for rule in report.rules]
    lines.append(f"complete: {str(report.complete).lower()}")
    lines.append(f"degenerate: {str(report.degenerate).lower()}")
    lines += _lines("confluence failures", report.confluence_failures)
    return "\n".join(lines) + "\n"


@render_text.register
def _(report: HilbertReport) -> str:
    lines = ["degree  dim"] + [f"{d:>6}  {dim}" for d, dim in enumerate(report.dims)]
    lines.append(f"exact: {str(report.exact).lower()}")
    return "\n".join(lines) + "\n"


@render_text.register
def _(report: MemberReport) -> str:
    return (
        f"element: {report.element}\n"
        f"normal form: {report.normal_form}\n"
        f"verdict: {report.verdict} (truncation {report.degree_bound})\n"
    )


@render_text.register
def _(report: PresentationReport) -> str:
    lines = [report.presentation.rstrip("\n")] if report.presentation else []
    lines.append(f"# {report.generators} generators, {report.relations} relations")
    lines += [f"# {line}" for line in _lines("eliminated", report.eliminated)]
    return "\n".join(lines) + "\n"


@render_text.register
def _(report: PeirceReport) -> str:
    lines = [report.presentation.rstrip("\n")] if report.presentation else []
    lines.append(f"# {report.generators} generators, {report.relations} relations")
    lines.append(f"# witnesses: {report.witness_verdict}")
    lines.append(f"# odd generators: {' '.join(report.omega)}")
    lines.append(f"# e_Y - 1: {report.unit_verdict}")
    lines += [f"# warning: {w}" for w in report.warnings]
    lines += [f"# note: {n}" for n in report.notes]
    return "\n".join(lines) + "\n"


@render_text.register
def _(report: MprimeReport) -> str:
    lines = _lines("M0", report.even) + _lines("M1", report.odd)
    lines += _lines(f"M' ({len(report.mprime)} elements, bound {report.bound})", report.mprime)
    return "\n".join(lines) + "\n"


@render_text.register
def _(report: EquivalenceReport) -> str:
    lines = []
    if report.dims:
        lines.append(f"{'degree':>6}  {'left':>8}  {'right':>8}")
        for row in report.dims:
            mark = "" if row.matches else "  <-"
            lines.append(f"{row.degree:>6}  {row.left:>8}  {row.right:>8}{mark}")
    for check in report.relations:
        lines.append(f"{check.relation} -> {check.image}: {check.verdict}")
    verdict = report.verdict.value
    if report.mismatch_degree is not None and report.verdict is EquivalenceVerdict.MISMATCH:
        verdict += f" at degree {report.mismatch_degree}"
    lines.append(f"verdict: {verdict}")
    return "\n".join(lines) + "\n"


@render_text.register
def _(report: EvidenceReport) -> str:
    lines = []
    for schema in report.schemas:
        lines.append(schema.schema_text)
        for inst in schema.instances:
            lines.append(f"  instance {inst.parameter}: {inst.instance} (truncation {inst.truncation}): {inst.verdict}")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def emit_report(report: BaseModel, fmt: OutputFormat, output: Optional[str] = None) -> str:
    text = render_json(report) if fmt is OutputFormat.JSON else render_text(report)
    if output:
        try:
            with open(output, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as e:
            raise FpaError(f"cannot write {output}: {e.strerror}") from e
    return text
