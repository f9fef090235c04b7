from dataclasses import dataclass, field
from typing import Dict

from app.core.exceptions import PresentationError
from app.features.freealg.models import Polynomial
from app.features.presio.models import Presentation


@dataclass(frozen=True)
class GeneratorMap:
    """Images of the source generators (by id) as polynomials over the target generators."""
    source: Presentation
    target: Presentation
    images: Dict[int, Polynomial] = field(default_factory=dict)

    def __post_init__(self):
        for g in self.source.generators:
            if g.id not in self.images:
                raise PresentationError(f"generator {g.name} has no image")
        for gid, image in self.images.items():
            if any(a < 1 or a > self.target.m for a in image.letters()):
                raise PresentationError(f"image of {self.source.name_of(gid)} mentions an undeclared generator")

    def apply(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.images)
