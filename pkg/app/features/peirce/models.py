from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

from app.core.exceptions import PresentationError
from app.features.freealg.models import Polynomial


class Side(str, Enum):
    E = "e"
    F = "f"


class PeirceType(str, Enum):
    """(left side, right side) of an element z, e.g. z in eAf has type EF."""
    EE = "ee"
    EF = "ef"
    FE = "fe"
    FF = "ff"

    @property
    def left(self) -> Side:
        return Side(self.value[0])

    @property
    def right(self) -> Side:
        return Side(self.value[1])

    @property
    def is_odd(self) -> bool:
        return self.left is not self.right

    @classmethod
    def of(cls, left: Side, right: Side) -> "PeirceType":
        return cls(left.value + right.value)


@dataclass(frozen=True)
class IdempotentSpec:
    """The designated idempotent e; its complement f = 1 - e is never a generator."""
    name: str


@dataclass(frozen=True)
class WitnessDecomposition:
    """1 = sum u_i * s * v_i with s = e (side E) or s = 1 - e (side F)."""
    side: Side
    terms: Tuple[Tuple[Polynomial, Polynomial], ...]

    def __post_init__(self):
        if not self.terms:
            raise PresentationError(f"witness {self.side.value} has no terms")

    @classmethod
    def build(cls, side: Side, terms: List[Tuple[Polynomial, Polynomial]]) -> "WitnessDecomposition":
        """Canonical form: a single-term v carries no scalar (it moves into u)."""
        normalized = []
        for u, v in terms:
            if v.is_monomial():
                (w, c), = v.items()
                if c != 1:
                    u, v = u.scale(c), Polynomial.monomial(w)
            if u and v:
                normalized.append((u, v))
        return cls(side, tuple(normalized))


class WitnessVerdict(str, Enum):
    VERIFIED = "verified"
    INCONCLUSIVE = "inconclusive"
    REFUTED = "refuted"


@dataclass
class HomogenizedPresentation:
    """A presentation on Peirce-typed generators plus how the original generators map into it."""
    presentation: "Presentation"  # noqa: F821 - app.features.presio.models
    idempotent: str
    source_names: List[str]
    images: Dict[str, Polynomial] = field(default_factory=dict)

    def image_map(self) -> Dict[int, Polynomial]:
        """Original generator id -> image over the typed generators."""
        return {k: self.images[name] for k, name in enumerate(self.source_names, start=1)}


@dataclass
class OddGeneratingSet:
    """The Omega presentation: every generator odd, plus bookkeeping for the Y-expressions of e and f."""
    presentation: "Presentation"  # noqa: F821
    definitions: Dict[str, Polynomial]
    lam_rho: List[Tuple[str, str]]
    sigma_nu: List[Tuple[str, str]]


@dataclass
class PeirceResult:
    presentation: "Presentation"  # noqa: F821
    witness_verdict: str
    omega: List[str]
    unit_verdict: str
    degenerate: bool = False
    warnings: List[str] = field(default_factory=list)
