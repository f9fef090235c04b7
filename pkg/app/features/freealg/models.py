"""
Values of the free unital associative algebra F<X> over the rationals.

Words are tuples of 1-based generator ids; the empty tuple is the unit.
Polynomials are sparse maps Word -> Fraction and never store a zero
coefficient. Everything here is immutable once built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from app.core.exceptions import AlgebraError

Word = Tuple[int, ...]
Scalar = Fraction
ScalarLike = Union[Fraction, int]

EMPTY_WORD: Word = ()
NO_DEGREE = -math.inf  # degree of the zero polynomial


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


# Total map generator id -> parity
ParityAssignment = Dict[int, Parity]


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Generator:
    id: int
    name: str


@dataclass(frozen=True)
class PairIndex:
    """The even-subalgebra generator y_ij standing for x_i x_j."""
    i: int
    j: int

    def id(self, m: int) -> int:
        return (self.i - 1) * m + self.j

    @classmethod
    def from_id(cls, k: int, m: int) -> "PairIndex":
        i, j = divmod(k - 1, m)
        return cls(i + 1, j + 1)


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-lexicographic order; `precedence` lists generator ids smallest first."""
    precedence: Tuple[int, ...]
    kind: str = "deglex"
    _rank: Dict[int, int] = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if sorted(self.precedence) != list(range(1, len(self.precedence) + 1)):
            raise AlgebraError(f"precedence {self.precedence} is not a permutation of the generators")
        object.__setattr__(self, "_rank", {g: r for r, g in enumerate(self.precedence)})

    @classmethod
    def default(cls, m: int) -> "MonomialOrder":
        return cls(tuple(range(1, m + 1)))

    @property
    def generator_count(self) -> int:
        return len(self.precedence)

    def key(self, w: Word) -> Tuple[int, Tuple[int, ...]]:
        rank = self._rank
        return len(w), tuple(rank[a] for a in w)

    def compare(self, w1: Word, w2: Word) -> Ordering:
        k1, k2 = self.key(w1), self.key(w2)
        if k1 < k2:
            return Ordering.LESS
        if k1 > k2:
            return Ordering.GREATER
        return Ordering.EQUAL

    def max_word(self, words: Iterable[Word]) -> Word:
        return max(words, key=self.key)

    def sorted_desc(self, words: Iterable[Word]) -> list:
        return sorted(words, key=self.key, reverse=True)


def _as_scalar(c: ScalarLike) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """Element of F<X>: a finite map Word -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Word, ScalarLike]] = None):
        clean: Dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = _as_scalar(c)
                if c:
                    clean[tuple(w)] = c
        self._terms = clean
        self._hash: Optional[int] = None

    # construction
    @classmethod
    def _trusted(cls, terms: Dict[Word, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._trusted({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._trusted({EMPTY_WORD: Fraction(1)})

    @classmethod
    def constant(cls, c: ScalarLike) -> "Polynomial":
        return cls({EMPTY_WORD: c})

    @classmethod
    def monomial(cls, w: Word, c: ScalarLike = 1) -> "Polynomial":
        return cls({tuple(w): c})

    @classmethod
    def generator(cls, g: int) -> "Polynomial":
        return cls._trusted({(g,): Fraction(1)})

    # inspection
    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        return iter(self._terms.items())

    def words(self) -> Iterator[Word]:
        return iter(self._terms)

    def coefficient(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, w: Word) -> bool:
        return w in self._terms

    @property
    def degree(self) -> Union[int, float]:
        if not self._terms:
            return NO_DEGREE
        return max(len(w) for w in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    def letters(self) -> set:
        return {a for w in self._terms for a in w}

    def leading_term(self, order: MonomialOrder) -> Tuple[Word, Fraction]:
        if not self._terms:
            raise AlgebraError("no leading term")
        w = order.max_word(self._terms)
        return w, self._terms[w]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, c = self.leading_term(order)
        return self.scale(1 / c)

    def parity_parts(self, parity: Optional[ParityAssignment] = None) -> Tuple["Polynomial", "Polynomial"]:
        """(even part, odd part). Without an assignment every letter is odd."""
        even: Dict[Word, Fraction] = {}
        odd: Dict[Word, Fraction] = {}
        for w, c in self._terms.items():
            if parity is None:
                is_odd = len(w) % 2 == 1
            else:
                is_odd = sum(1 for a in w if parity[a] is Parity.ODD) % 2 == 1
            (odd if is_odd else even)[w] = c
        return Polynomial._trusted(even), Polynomial._trusted(odd)

    # arithmetic
    def combine(self, other: "Polynomial", c: ScalarLike = 1) -> "Polynomial":
        """self + c*other."""
        c = _as_scalar(c)
        if not c or not other._terms:
            return self
        out = dict(self._terms)
        for w, d in other._terms.items():
            v = out.get(w, 0) + c * d
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Polynomial._trusted(out)

    def scale(self, c: ScalarLike) -> "Polynomial":
        c = _as_scalar(c)
        if not c:
            return Polynomial.zero()
        return Polynomial._trusted({w: c * d for w, d in self._terms.items()})

    def mul_words(self, u: Word = EMPTY_WORD, v: Word = EMPTY_WORD) -> "Polynomial":
        """u * self * v."""
        if not u and not v:
            return self
        return Polynomial._trusted({u + w + v: c for w, c in self._terms.items()})

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return self.combine(other, 1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self.combine(other, -1)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            out: Dict[Word, Fraction] = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    w = w1 + w2
                    v = out.get(w, 0) + c1 * c2
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
            return Polynomial._trusted(out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.one()
        for _ in range(n):
            result = result * self
        return result

    def substitute(self, images: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Apply the algebra homomorphism sending generator g to images[g] (identity if absent)."""
        result = Polynomial.zero()
        for w, c in self._terms.items():
            term = Polynomial.constant(c)
            for a in w:
                term = term * images.get(a, Polynomial.generator(a))
                if not term:
                    break
            result = result + term
        return result

    def rename(self, mapping: Mapping[int, int]) -> "Polynomial":
        return Polynomial._trusted({tuple(mapping[a] for a in w): c for w, c in self._terms.items()})

    # identity
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "Polynomial(0)"
        body = " + ".join(f"{c}*{list(w)}" for w, c in sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0])))
        return f"Polynomial({body})"
