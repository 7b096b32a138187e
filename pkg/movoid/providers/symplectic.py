from typing import List

import numpy as np

from movoid.models.enums import SpaceKind
from movoid.providers.base import GramEntry, PolarForm


class SymplecticForm(PolarForm):
    """Alternating form sum_i (x_{2i} y_{2i+1} - x_{2i+1} y_{2i}) on V(2r, q)."""

    kind = SpaceKind.SYMPLECTIC

    def gram_entries(self) -> List[GramEntry]:
        minus_one = self.field.neg(1)
        entries = []
        for i in range(self.r):
            entries.append((2 * i, 2 * i + 1, 1))
            entries.append((2 * i + 1, 2 * i, minus_one))
        return entries

    def isotropic_mask(self, coords: np.ndarray) -> np.ndarray:
        # every point is isotropic for an alternating form
        return np.ones(len(coords), dtype=bool)
