from typing import List

import numpy as np

from movoid.core.exceptions import FieldError
from movoid.geometry.gf import Field
from movoid.models.enums import SpaceKind
from movoid.providers.base import GramEntry, PolarForm


class HermitianForm(PolarForm):
    """Hermitian form sum_i x_i * conj(y_i) on V(2r+1, q), q a square."""

    kind = SpaceKind.HERMITIAN
    sesquilinear = True

    def __init__(self, field: Field, r: int):
        if not field.is_square:
            raise FieldError(f"Hermitian spaces need a square field order, got {field.q}")
        super().__init__(field, r)

    def gram_entries(self) -> List[GramEntry]:
        return [(i, i, 1) for i in range(self.width)]

    def isotropic_mask(self, coords: np.ndarray) -> np.ndarray:
        f = self.field
        norms = f.mul_array(coords, f.conjugate_array(coords))
        total = np.zeros(len(coords), dtype=np.int64)
        for i in range(self.width):
            total = f.add_array(total, norms[:, i])
        return total == 0
