from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple

from app.features.freealg.models import MonomialOrder, Polynomial, Word

# sum of c * u * g_k * v over input relations g_k, keyed by (u, k, v)
Derivation = Dict[Tuple[Word, int, Word], Fraction]


class MembershipVerdict(str, Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member-up-to-degree"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class RewriteRule:
    """lhs -> rhs, standing for the monic polynomial lhs - rhs."""
    lhs: Word
    rhs: Polynomial

    def polynomial(self) -> Polynomial:
        return Polynomial.monomial(self.lhs) - self.rhs

    @property
    def is_monomial(self) -> bool:
        return self.rhs.is_zero()


@dataclass(frozen=True)
class RewriteSystem:
    rules: Tuple[RewriteRule, ...]
    order: MonomialOrder
    truncation_degree: int
    complete_up_to_degree: bool
    homogeneous: bool
    degenerate: bool = False
    inputs: Tuple[Polynomial, ...] = ()
    # one Derivation per rule, present when completed with trace=True
    derivations: Optional[Tuple[Derivation, ...]] = field(default=None, compare=False)

    @property
    def generator_count(self) -> int:
        return self.order.generator_count

    @property
    def is_monomial(self) -> bool:
        return all(r.is_monomial for r in self.rules)

    @property
    def exact(self) -> bool:
        return self.complete_up_to_degree and self.homogeneous


@dataclass(frozen=True)
class HilbertVector:
    dims: Tuple[int, ...]
    exact: bool

    def __getitem__(self, d: int) -> int:
        return self.dims[d]

    def __len__(self) -> int:
        return len(self.dims)
