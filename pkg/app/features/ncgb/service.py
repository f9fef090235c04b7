"""
Degree-truncated noncommutative Groebner bases.

Completion is Buchberger's procedure on the free algebra: rules are oriented
by deglex, overlaps are processed in increasing degree, and any S-polynomial
whose overlap word is longer than the truncation degree is dropped. For
homogeneous input that makes the result exact in every degree up to the bound.
"""
import heapq
import logging
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.core.exceptions import AlgebraError, TruncationError
from app.features.freealg.models import EMPTY_WORD, MonomialOrder, Polynomial, Word
from app.features.ncgb.automaton import NormalWordAutomaton
from app.features.ncgb.models import (
    Derivation,
    HilbertVector,
    MembershipVerdict,
    RewriteRule,
    RewriteSystem,
)
from app.features.presio.models import Relation

logger = logging.getLogger(__name__)

# (word, position of lhs1, position of lhs2) inside the overlap word
Overlap = Tuple[Word, int, int]


# derivation bookkeeping
def shift_derivation(d: Derivation, u: Word, v: Word, c=1) -> Derivation:
    """Derivation of c * u * q * v given the derivation d of q."""
    c = Fraction(c)
    return {(u + left, k, right + v): c * coeff for (left, k, right), coeff in d.items()}


def add_derivation(d1: Derivation, d2: Derivation, c=1) -> Derivation:
    out = dict(d1)
    c = Fraction(c)
    for key, coeff in d2.items():
        value = out.get(key, 0) + c * coeff
        if value:
            out[key] = value
        else:
            out.pop(key, None)
    return out


def expand_derivation(d: Derivation, inputs: Sequence[Polynomial]) -> Polynomial:
    """sum of c * u * inputs[k] * v."""
    result = Polynomial.zero()
    for (u, k, v), coeff in d.items():
        result = result.combine(inputs[k].mul_words(u, v), coeff)
    return result


# reduction
class _Reducer:
    """Leftmost-match lookup of rule left-hand sides inside words."""

    def __init__(self, rules: Iterable[RewriteRule]):
        self.index: Dict[Word, RewriteRule] = {r.lhs: r for r in rules}
        self.lengths = sorted({len(lhs) for lhs in self.index})

    def find(self, w: Word) -> Optional[Tuple[int, RewriteRule]]:
        if EMPTY_WORD in self.index:
            return 0, self.index[EMPTY_WORD]
        for start in range(len(w)):
            for length in self.lengths:
                if start + length > len(w):
                    break
                rule = self.index.get(w[start:start + length])
                if rule is not None:
                    return start, rule
        return None

    def contains_lhs(self, w: Word) -> bool:
        return self.find(w) is not None


def _reduce(p: Polynomial, reducer: _Reducer, order: MonomialOrder,
            derivations: Optional[Dict[Word, Derivation]] = None) -> Tuple[Polynomial, Derivation]:
    """Normal form of p and, if `derivations` is given, the combination p - NF(p)."""
    work: Dict[Word, Fraction] = dict(p.items())
    heap = [(_desc_key(order, w), w) for w in work]
    heapq.heapify(heap)
    done: Dict[Word, Fraction] = {}
    trace: Derivation = {}

    while heap:
        _, w = heapq.heappop(heap)
        c = work.pop(w, None)
        if c is None:
            continue
        hit = reducer.find(w)
        if hit is None:
            done[w] = c
            continue
        start, rule = hit
        u, v = w[:start], w[start + len(rule.lhs):]
        for w2, c2 in rule.rhs.items():
            nw = u + w2 + v
            value = work.get(nw, 0) + c * c2
            if value:
                if nw not in work:
                    heapq.heappush(heap, (_desc_key(order, nw), nw))
                work[nw] = value
            else:
                work.pop(nw, None)
        if derivations is not None:
            trace = add_derivation(trace, shift_derivation(derivations[rule.lhs], u, v, c))

    return Polynomial(done), trace


def _desc_key(order: MonomialOrder, w: Word):
    length, ranks = order.key(w)
    return -length, tuple(-r for r in ranks)


def reduce_poly(p: Polynomial, rs: RewriteSystem) -> Polynomial:
    nf, _ = _reduce(p, _Reducer(rs.rules), rs.order)
    return nf


def reduce_traced(p: Polynomial, rs: RewriteSystem) -> Tuple[Polynomial, Derivation]:
    """(NF(p), d) with p - NF(p) = expand_derivation(d, rs.inputs)."""
    if rs.derivations is None:
        raise AlgebraError("rewrite system was completed without trace")
    derivations = {r.lhs: d for r, d in zip(rs.rules, rs.derivations)}
    return _reduce(p, _Reducer(rs.rules), rs.order, derivations)


# overlaps
def _overlaps(a: Word, b: Word) -> List[Overlap]:
    found: List[Overlap] = []
    for k in range(1, min(len(a), len(b))):
        if a[len(a) - k:] == b[:k]:
            found.append((a + b[k:], 0, len(a) - k))
    if a != b and len(b) <= len(a):
        for start in range(len(a) - len(b) + 1):
            if a[start:start + len(b)] == b:
                found.append((a, 0, start))
    return found


def find_overlaps(r1: RewriteRule, r2: RewriteRule, order: Optional[MonomialOrder] = None) -> List[Word]:
    words = list(dict.fromkeys(w for w, _, _ in _overlaps(r1.lhs, r2.lhs)))
    if order is not None:
        words.sort(key=order.key)
    else:
        words.sort(key=lambda w: (len(w), w))
    return words


def s_polynomial(r1: RewriteRule, r2: RewriteRule, overlap: Overlap) -> Polynomial:
    w, p1, p2 = overlap
    left = r1.polynomial().mul_words(w[:p1], w[p1 + len(r1.lhs):])
    right = r2.polynomial().mul_words(w[:p2], w[p2 + len(r2.lhs):])
    return left - right


# completion
class TruncatedCompletion:
    """Buchberger completion up to a degree bound; one instance per run."""

    def __init__(self, order: MonomialOrder, max_deg: int, trace: bool = False):
        self.order = order
        self.max_deg = max_deg
        self.trace = trace
        self.rules: Dict[Word, RewriteRule] = {}
        self.derivations: Dict[Word, Derivation] = {}
        self.pending: List[Tuple[Polynomial, Derivation]] = []
        self.pairs: list = []
        self.discarded = False
        self.degenerate = False
        self.processed = 0

    def _reducer(self) -> _Reducer:
        return _Reducer(self.rules.values())

    def _reduce(self, p: Polynomial) -> Tuple[Polynomial, Derivation]:
        return _reduce(p, self._reducer(), self.order, self.derivations if self.trace else None)

    def add_polynomial(self, p: Polynomial, d: Derivation):
        nf, used = self._reduce(p)
        if nf.is_zero():
            return
        d = add_derivation(d, used, -1) if self.trace else {}
        lhs, c = nf.leading_term(self.order)
        nf = nf.scale(1 / c)
        d = shift_derivation(d, EMPTY_WORD, EMPTY_WORD, 1 / c) if self.trace else {}

        if not lhs:
            logger.warning("Unit lies in the ideal: presented algebra is degenerate")
            self.degenerate = True
            self.rules = {EMPTY_WORD: RewriteRule(EMPTY_WORD, Polynomial.zero())}
            self.derivations = {EMPTY_WORD: d}
            self.pending.clear()
            self.pairs.clear()
            return

        rule = RewriteRule(lhs, Polynomial.monomial(lhs) - nf)
        single = _Reducer([rule])

        # rules whose lhs contains the new lhs go back to the queue
        for old_lhs in [w for w in self.rules if single.contains_lhs(w)]:
            old = self.rules.pop(old_lhs)
            self.pending.append((old.polynomial(), self.derivations.pop(old_lhs, {})))

        self.rules[lhs] = rule
        self.derivations[lhs] = d

        # keep right-hand sides normal
        for other_lhs, other in list(self.rules.items()):
            if other_lhs == lhs or not any(single.contains_lhs(w) for w in other.rhs.words()):
                continue
            rhs_nf, used = _reduce(other.rhs, self._reducer(), self.order,
                                   self.derivations if self.trace else None)
            self.rules[other_lhs] = RewriteRule(other_lhs, rhs_nf)
            if self.trace:
                self.derivations[other_lhs] = add_derivation(self.derivations[other_lhs], used)

        for other_lhs in list(self.rules):
            self._queue_pairs(lhs, other_lhs)
            if other_lhs != lhs:
                self._queue_pairs(other_lhs, lhs)

    def _queue_pairs(self, lhs1: Word, lhs2: Word):
        for overlap in _overlaps(lhs1, lhs2):
            w = overlap[0]
            key = (self.order.key(w), self.order.key(lhs1), self.order.key(lhs2), overlap[1], overlap[2])
            heapq.heappush(self.pairs, (key, overlap, lhs1, lhs2))

    def _process_pair(self, overlap: Overlap, lhs1: Word, lhs2: Word):
        r1, r2 = self.rules.get(lhs1), self.rules.get(lhs2)
        if r1 is None or r2 is None:
            return
        w, p1, p2 = overlap
        if len(w) > self.max_deg:
            self.discarded = True
            return
        self.processed += 1
        s = s_polynomial(r1, r2, overlap)
        d: Derivation = {}
        if self.trace:
            d = add_derivation(
                shift_derivation(self.derivations[lhs1], w[:p1], w[p1 + len(lhs1):]),
                shift_derivation(self.derivations[lhs2], w[:p2], w[p2 + len(lhs2):]),
                -1,
            )
        self.add_polynomial(s, d)

    def run(self, inputs: Sequence[Polynomial]) -> RewriteSystem:
        homogeneous = all(p.is_homogeneous() for p in inputs)
        too_big = [p for p in inputs if p.degree > self.max_deg]
        if too_big:
            raise TruncationError(
                f"degree bound {self.max_deg} is below the relation degree {int(max(p.degree for p in too_big))}"
            )

        indexed = sorted(
            ((k, p) for k, p in enumerate(inputs) if p),
            key=lambda kp: self.order.key(kp[1].leading_term(self.order)[0]),
        )
        for k, p in indexed:
            self.add_polynomial(p, {(EMPTY_WORD, k, EMPTY_WORD): Fraction(1)} if self.trace else {})
            if self.degenerate:
                break

        while not self.degenerate and (self.pending or self.pairs):
            if self.pending:
                p, d = self.pending.pop(0)
                self.add_polynomial(p, d)
                continue
            _, overlap, lhs1, lhs2 = heapq.heappop(self.pairs)
            self._process_pair(overlap, lhs1, lhs2)

        self._interreduce()
        ordered = sorted(self.rules.values(), key=lambda r: self.order.key(r.lhs))
        complete = self.degenerate or homogeneous or not self.discarded
        if not complete:
            logger.warning(f"Completion truncated at degree {self.max_deg}; inhomogeneous input, verdicts are heuristic")
        logger.debug(f"Completion finished: {len(ordered)} rules, {self.processed} S-polynomials reduced")
        return RewriteSystem(
            rules=tuple(ordered),
            order=self.order,
            truncation_degree=self.max_deg,
            complete_up_to_degree=complete,
            homogeneous=homogeneous,
            degenerate=self.degenerate,
            inputs=tuple(inputs),
            derivations=tuple(self.derivations[r.lhs] for r in ordered) if self.trace else None,
        )

    def _interreduce(self):
        reducer = self._reducer()
        for lhs, rule in list(self.rules.items()):
            rhs_nf, used = _reduce(rule.rhs, reducer, self.order, self.derivations if self.trace else None)
            if rhs_nf != rule.rhs:
                self.rules[lhs] = RewriteRule(lhs, rhs_nf)
                if self.trace:
                    self.derivations[lhs] = add_derivation(self.derivations[lhs], used)


def complete_truncated(rels: Sequence[Polynomial], order: MonomialOrder, max_deg: int,
                       trace: bool = False) -> RewriteSystem:
    polys = [r.value if isinstance(r, Relation) else r for r in rels]
    return TruncatedCompletion(order, max_deg, trace).run(polys)


def confluence_certificate(rs: RewriteSystem) -> List[Word]:
    """Overlap words up to the truncation degree whose S-polynomial does not reduce to 0."""
    failing: List[Word] = []
    reducer = _Reducer(rs.rules)
    for r1 in rs.rules:
        for r2 in rs.rules:
            for overlap in _overlaps(r1.lhs, r2.lhs):
                if len(overlap[0]) > rs.truncation_degree:
                    continue
                nf, _ = _reduce(s_polynomial(r1, r2, overlap), reducer, rs.order)
                if nf:
                    failing.append(overlap[0])
    return list(dict.fromkeys(failing))


# queries
def ideal_member(p: Polynomial, rs: RewriteSystem) -> MembershipVerdict:
    if p.degree > rs.truncation_degree:
        raise TruncationError("degree exceeds truncation")
    if reduce_poly(p, rs).is_zero():
        return MembershipVerdict.MEMBER
    if rs.complete_up_to_degree and rs.homogeneous:
        return MembershipVerdict.NON_MEMBER
    return MembershipVerdict.UNKNOWN


def _check_degree(rs: RewriteSystem, d: int):
    if d < 0:
        raise AlgebraError(f"degree {d} is negative")
    if d > rs.truncation_degree:
        raise TruncationError(f"degree {d} exceeds truncation {rs.truncation_degree}")


def count_normal_words(rs: RewriteSystem, d: int) -> int:
    _check_degree(rs, d)
    if rs.degenerate:
        return 0
    m = rs.generator_count
    forbidden = {r.lhs for r in rs.rules}
    if not forbidden:
        return m ** d
    lengths = sorted({len(w) for w in forbidden})
    window = max(lengths) - 1

    states: Dict[Word, int] = {EMPTY_WORD: 1}
    for _ in range(d):
        nxt: Dict[Word, int] = defaultdict(int)
        for suffix, count in states.items():
            for a in range(1, m + 1):
                ext = suffix + (a,)
                if any(k <= len(ext) and ext[len(ext) - k:] in forbidden for k in lengths):
                    continue
                nxt[ext[-window:] if window else EMPTY_WORD] += count
        states = nxt
    return sum(states.values())


def normal_word_automaton(rs: RewriteSystem) -> NormalWordAutomaton:
    if not rs.is_monomial:
        raise AlgebraError("monomial fast path requires monomial rules")
    return NormalWordAutomaton([r.lhs for r in rs.rules], rs.generator_count)


def hilbert_profile(rs: RewriteSystem, max_d: int) -> HilbertVector:
    _check_degree(rs, max_d)
    if rs.is_monomial:
        dims = normal_word_automaton(rs).path_counts(max_d)
    else:
        dims = [count_normal_words(rs, d) for d in range(max_d + 1)]
    return HilbertVector(tuple(dims), rs.exact)


def normal_words(rs: RewriteSystem, d: int) -> List[Word]:
    """All normal words of length d, in increasing order."""
    _check_degree(rs, d)
    if rs.degenerate:
        return []
    reducer = _Reducer(rs.rules)
    words: List[Word] = [EMPTY_WORD]
    for _ in range(d):
        words = [w + (a,) for w in words for a in range(1, rs.generator_count + 1) if not reducer.contains_lhs(w + (a,))]
    return sorted(words, key=rs.order.key)
