""" Describes GapChecker, a class used to summarise how well upper and lower
bounds agree over a grid of ratio points. """

from collections import Counter
from typing import Dict, Iterable

import numpy as np  # type: ignore


class GapChecker:
    """ Collects upper/lower bound pairs across sweep chunks.
    Can be used to retrieve the matched and gap <= 1 area fractions.
    """
    def __init__(self):
        self._cells = 0
        self._gaps: Counter = Counter()
        self._violations = 0

    def add_bounds(self,
                   upper: Iterable[int],
                   lower: Iterable[int]):
        """
        Stores the gaps of a chunk of cells.

        Returns:
            the matched fraction of the chunk
        """
        gaps = np.asarray(upper, dtype=np.int64) - np.asarray(lower,
                                                              dtype=np.int64)
        self._cells += len(gaps)
        self._violations += int((gaps < 0).sum())
        values, counts = np.unique(gaps[gaps >= 0], return_counts=True)
        self._gaps.update(dict(zip(values.tolist(), counts.tolist())))
        return float((gaps == 0).mean()) if len(gaps) else 0.0

    @property
    def cells(self) -> int:
        return self._cells

    @property
    def violations(self) -> int:
        """ Number of cells where the lower bound exceeded the upper one """
        return self._violations

    @property
    def matched_fraction(self) -> float:
        return self._fraction(lambda gap: gap == 0)

    @property
    def gap_le_one_fraction(self) -> float:
        return self._fraction(lambda gap: gap <= 1)

    @property
    def histogram(self) -> Dict[int, int]:
        """ gap -> number of cells """
        return dict(sorted(self._gaps.items()))

    def _fraction(self, predicate) -> float:
        if not self._cells:
            return 0.0
        hits = sum(count for gap, count in self._gaps.items()
                   if predicate(gap))
        return hits / self._cells
