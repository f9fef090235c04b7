from typing import List, Sequence, Tuple

from app.core.exceptions import AlgebraError
from app.features.freealg.models import (
    EMPTY_WORD,
    MonomialOrder,
    Ordering,
    PairIndex,
    Parity,
    ParityAssignment,
    Polynomial,
    Scalar,
    ScalarLike,
    Word,
)


def compare_words(w1: Word, w2: Word, order: MonomialOrder) -> Ordering:
    return order.compare(w1, w2)


def poly_combine(p: Polynomial, q: Polynomial, c: ScalarLike) -> Polynomial:
    """p + c*q"""
    return p.combine(q, c)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def leading_term(p: Polynomial, order: MonomialOrder) -> Tuple[Word, Scalar]:
    return p.leading_term(order)


def word_parity(w: Word, parity: ParityAssignment = None) -> Parity:
    if parity is None:
        odd = len(w) % 2
    else:
        odd = sum(1 for a in w if parity[a] is Parity.ODD) % 2
    return Parity.ODD if odd else Parity.EVEN


def all_odd(m: int) -> ParityAssignment:
    return {g: Parity.ODD for g in range(1, m + 1)}


def pair_encode(w: Word, m: int) -> Word:
    """x_i1 x_i2 ... x_i(2k-1) x_i(2k)  ->  y_(i1,i2) ... y_(i(2k-1),i(2k)), paired left to right."""
    if len(w) % 2:
        raise AlgebraError("odd word not encodable")
    return tuple(PairIndex(w[k], w[k + 1]).id(m) for k in range(0, len(w), 2))


def pair_decode(v: Word, m: int) -> Word:
    out: List[int] = []
    for k in v:
        pair = PairIndex.from_id(k, m)
        out.append(pair.i)
        out.append(pair.j)
    return tuple(out)


def pair_encode_poly(p: Polynomial, m: int) -> Polynomial:
    return Polynomial({pair_encode(w, m): c for w, c in p.items()})


def pair_decode_poly(p: Polynomial, m: int) -> Polynomial:
    return Polynomial({pair_decode(v, m): c for v, c in p.items()})


def pair_names(names: Sequence[str]) -> List[str]:
    """Names y{i}{j} of the m^2 pair generators, in pair-id order."""
    m = len(names)
    sep = "_" if m > 9 else ""
    return [f"y{i}{sep}{j}" for i in range(1, m + 1) for j in range(1, m + 1)]


def words_of_length(m: int, d: int) -> List[Word]:
    words: List[Word] = [EMPTY_WORD]
    for _ in range(d):
        words = [w + (a,) for w in words for a in range(1, m + 1)]
    return words

