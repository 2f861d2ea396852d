"""The four evolution directions and the type classifier.

The taxonomy is the cross product of two booleans: does the variant keep the
source's semantics (execution-equivalent), and does it keep its syntax
(CodeBLEU above the threshold)?

    semantics equal + syntax similar    -> Type I    (positive)
    semantics equal + syntax dissimilar -> Type II   (positive)
    semantics diff  + syntax dissimilar -> Type III  (negative)
    semantics diff  + syntax similar    -> Type IV   (negative)
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DataError


@dataclass(frozen=True)
class EvolutionDirection:
    id: str
    target_sem: str  # equal | different
    target_syn: str  # similar | dissimilar
    template_ref: str

    @property
    def target_type(self) -> str:
        return classify_type(self.target_sem, self.target_syn)

    @property
    def is_positive(self) -> bool:
        return self.target_sem == "equal"


DIRECTIONS = (
    EvolutionDirection("I", "equal", "similar", "I"),
    EvolutionDirection("II", "equal", "dissimilar", "II"),
    EvolutionDirection("III", "different", "dissimilar", "III"),
    EvolutionDirection("IV", "different", "similar", "IV"),
)

_BY_ID = {d.id: d for d in DIRECTIONS}

_TYPE_TABLE = {
    ("equal", "similar"): "I",
    ("equal", "dissimilar"): "II",
    ("different", "dissimilar"): "III",
    ("different", "similar"): "IV",
}


def direction_for(direction_id: str) -> EvolutionDirection:
    try:
        return _BY_ID[direction_id]
    except KeyError:
        raise DataError(f"unknown evolution direction {direction_id!r}") from None


def classify_type(sem: str, syn: str) -> str:
    """Total over the four (sem, syn) combinations; anything else is an error."""
    try:
        return _TYPE_TABLE[(sem, syn)]
    except KeyError:
        raise DataError(f"cannot classify (sem={sem!r}, syn={syn!r})") from None
