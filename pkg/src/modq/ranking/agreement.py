"""Krippendorff's alpha for nominal data, via the coincidence matrix."""

from __future__ import annotations

from collections import Counter
from typing import Hashable, Sequence


def krippendorff_alpha(
    units: Sequence[Sequence[Hashable | None]],
) -> float | None:
    """Inter-rater agreement over units of categorical ratings.

    Each unit is the list of ratings one item received; None entries mark
    raters who skipped the item. Units with fewer than two ratings carry no
    pairable information and are ignored. Returns None when nothing is
    pairable, and 1.0 when only one category ever occurs (no expected
    disagreement to normalize by).
    """
    coincidence: Counter[tuple[Hashable, Hashable]] = Counter()
    totals: Counter[Hashable] = Counter()
    n = 0.0
    for unit in units:
        values = [v for v in unit if v is not None]
        m = len(values)
        if m < 2:
            continue
        weight = 1.0 / (m - 1)
        for v in values:
            totals[v] += 1
        n += m
        for i, a in enumerate(values):
            for j, b in enumerate(values):
                if i != j:
                    coincidence[(a, b)] += weight

    if n == 0:
        return None
    observed = sum(c for (a, b), c in coincidence.items() if a != b) / n
    expected = sum(
        totals[a] * totals[b]
        for a in totals
        for b in totals
        if a != b
    ) / (n * (n - 1))
    if expected == 0.0:
        return 1.0
    return 1.0 - observed / expected
