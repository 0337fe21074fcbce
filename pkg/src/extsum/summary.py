"""Shared summary-result type and compression arithmetic."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SummaryResult:
    """Sentences chosen by a selector, in selection order, with their scores."""

    doc_id: str
    selected: tuple[tuple[int, float], ...]
    method: str
    params: str

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.selected)


def target_length(compression: float, n_sentences: int) -> int:
    """Summary size for a compression rate: ceil(rate * sentences), capped at s."""
    if not 0.0 < compression <= 1.0:
        raise ValueError(f"compression must be in (0, 1], got {compression}")
    return min(math.ceil(compression * n_sentences), n_sentences)
