from abc import ABC, abstractmethod
from typing import List, Optional, Sequence, Tuple

import numpy as np

from movoid.core.exceptions import GeometryError
from movoid.geometry.gf import Field
from movoid.models.enums import SpaceKind

GramEntry = Tuple[int, int, int]


class PolarForm(ABC):
    """
    Abstract base class for the reflexive forms defining a polar space.
    Any concrete form must describe its Gram data and its point condition.
    """

    kind: SpaceKind
    # conjugation on the second argument (Hermitian forms)
    sesquilinear: bool = False

    def __init__(self, field: Field, r: int):
        """
        Initialize the form on the ambient space of a rank-r polar space.

        Args:
            field: The field GF(q)
            r: Rank of the polar space
        """
        if r < 1:
            raise GeometryError(f"rank must be at least 1, got {r}")
        self.field = field
        self.r = r
        self.form_name = self.__class__.__name__

    @property
    def n(self) -> int:
        """Projective dimension of the ambient space, n = 2r + 2e - 3."""
        return 2 * self.r + self.kind.twice_e - 3

    @property
    def width(self) -> int:
        return self.n + 1

    @abstractmethod
    def gram_entries(self) -> List[GramEntry]:
        """
        Nonzero entries (i, j, g) of the Gram matrix of the bilinear or
        sesquilinear form: f(u, v) = sum g * u_i * sigma(v_j).

        Returns:
            List[GramEntry]: The entries, zero coefficients omitted
        """
        pass

    @abstractmethod
    def isotropic_mask(self, coords: np.ndarray) -> np.ndarray:
        """
        Decide which points belong to the polar space.

        Args:
            coords: (N, n+1) array of coordinate vectors

        Returns:
            np.ndarray: Boolean mask of length N
        """
        pass

    def quadratic_value(self, u: Sequence[int]) -> int:
        raise GeometryError(f"{self.kind.value} spaces have no quadratic form")

    def _sigma(self, a: int) -> int:
        return self.field.conjugate(a) if self.sesquilinear else a

    def bilinear_value(self, u: Sequence[int], v: Sequence[int]) -> int:
        f = self.field
        total = 0
        for i, j, g in self.gram_entries():
            if u[i] and v[j]:
                total = f.add(total, f.mul(g, f.mul(u[i], self._sigma(v[j]))))
        return total

    def form_value(self, u: Sequence[int], v: Optional[Sequence[int]] = None) -> int:
        """
        Evaluate the form.

        Args:
            u: Vector of length n+1
            v: Second vector; omit to evaluate the quadratic form

        Returns:
            int: The field element encoding of the value

        Raises:
            GeometryError: If the arity is wrong for this kind or a vector has the wrong length
        """
        if len(u) != self.width or (v is not None and len(v) != self.width):
            raise GeometryError(f"vectors must have length {self.width}")
        if v is None:
            return self.quadratic_value(u)
        return self.bilinear_value(u, v)

    def functional_rows(self, basis: Sequence[Sequence[int]]) -> List[List[int]]:
        """Rows sigma(b^T G) whose common kernel is the perp of the span of basis."""
        f = self.field
        rows = []
        for b in basis:
            row = [0] * self.width
            for i, j, g in self.gram_entries():
                if b[i]:
                    row[j] = f.add(row[j], f.mul(g, b[i]))
            rows.append([self._sigma(x) for x in row])
        return rows

    def pair_matrix(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Form values f(a_s, b_t) for all row pairs, as an (len(a), len(b)) array."""
        f = self.field
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.sesquilinear:
            b = f.conjugate_array(b)
        out = np.zeros((len(a), len(b)), dtype=np.int64)
        for i, j, g in self.gram_entries():
            left = f.mul_array(a[:, i], g)
            out = f.add_array(out, f.mul_array(left[:, None], b[None, :, j]))
        return out
