from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np
import structlog

from movoid.core.exceptions import FieldError
from movoid.models.enums import SpaceKind
from movoid.providers.base import GramEntry, PolarForm

logger = structlog.get_logger(__name__)


def anisotropic_pair(field) -> Tuple[int, int]:
    """First (a, b), b != 0, in encoding order with t^2 + a t + b irreducible."""
    for a in range(field.q):
        for b in range(1, field.q):
            values = (field.add(field.add(field.mul(t, t), field.mul(a, t)), b) for t in range(field.q))
            if all(v != 0 for v in values):
                return a, b
    raise FieldError(f"no irreducible quadratic over GF({field.q})")


class EllipticForm(PolarForm):
    """
    Elliptic quadric Q(x) = x0 x1 + ... + x_{2r-2} x_{2r-1}
    + x_{2r}^2 + a x_{2r} x_{2r+1} + b x_{2r+1}^2 on V(2r+2, q).
    The polarity uses the associated bilinear form f(u,v) = Q(u+v) - Q(u) - Q(v).
    """

    kind = SpaceKind.ELLIPTIC

    @cached_property
    def anisotropic(self) -> Tuple[int, int]:
        pair = anisotropic_pair(self.field)
        logger.debug("elliptic_form_chosen", q=self.field.q, a=pair[0], b=pair[1])
        return pair

    def quadratic_terms(self) -> List[GramEntry]:
        a, b = self.anisotropic
        s = 2 * self.r
        terms = [(2 * i, 2 * i + 1, 1) for i in range(self.r)]
        terms += [(s, s, 1), (s, s + 1, a), (s + 1, s + 1, b)]
        return [t for t in terms if t[2] != 0]

    def gram_entries(self) -> List[GramEntry]:
        f = self.field
        two = 2 % f.p
        entries = []
        for i, j, c in self.quadratic_terms():
            if i == j:
                entries.append((i, i, f.mul(two, c)))
            else:
                entries += [(i, j, c), (j, i, c)]
        return [e for e in entries if e[2] != 0]

    def quadratic_value(self, u: Sequence[int]) -> int:
        f = self.field
        total = 0
        for i, j, c in self.quadratic_terms():
            total = f.add(total, f.mul(c, f.mul(u[i], u[j])))
        return total

    def isotropic_mask(self, coords: np.ndarray) -> np.ndarray:
        f = self.field
        total = np.zeros(len(coords), dtype=np.int64)
        for i, j, c in self.quadratic_terms():
            total = f.add_array(total, f.mul_array(f.mul_array(coords[:, i], coords[:, j]), c))
        return total == 0
