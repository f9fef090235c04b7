from dataclasses import dataclass
from typing import Tuple

from app.features.freealg.models import ParityAssignment  # noqa: F401 - re-exported
from app.features.presio.models import Relation


@dataclass(frozen=True)
class SplitRelations:
    """M0 holds the even components of the relations, M1 the odd ones."""
    even: Tuple[Relation, ...]
    odd: Tuple[Relation, ...]

    @property
    def m0(self) -> Tuple[Relation, ...]:
        return self.even

    @property
    def m1(self) -> Tuple[Relation, ...]:
        return self.odd
