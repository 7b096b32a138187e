"""Projective space PG(n, q): points, canonical subspaces, span and membership.

Points are indexed in increasing order of their code sum_i x_i q^i taken over
the normalized coordinate vector (first nonzero coordinate equal to 1), so the
last coordinate is the most significant one. For PG(1, 2) this gives
(1,0), (0,1), (1,1).
"""
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from movoid.core.config import settings
from movoid.core.exceptions import CapExceededError, GeometryError
from movoid.geometry.gf import Field

logger = structlog.get_logger(__name__)

Vector = Tuple[int, ...]


def theta(n: int, q: int) -> int:
    """Number of points of PG(n, q), exact for any size."""
    if n < -1:
        raise GeometryError(f"theta is undefined for n = {n}")
    return (q ** (n + 1) - 1) // (q - 1)


def rref(f: Field, rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Reduced row echelon form over f with leading ones; zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    lead = 0
    for c in range(ncols):
        pivot = next((i for i in range(lead, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[lead], m[pivot] = m[pivot], m[lead]
        inv = f.inv(m[lead][c])
        m[lead] = [f.mul(inv, x) for x in m[lead]]
        for i in range(len(m)):
            if i != lead and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[lead])]
        lead += 1
        if lead == len(m):
            break
    return m[:lead]


def null_space(f: Field, rows: Sequence[Sequence[int]], ncols: int) -> List[List[int]]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    reduced = rref(f, rows)
    pivots = [next(c for c, x in enumerate(r) if x != 0) for r in reduced]
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for r, pc in zip(reduced, pivots):
            v[pc] = f.neg(r[free])
        basis.append(v)
    return basis


@dataclass(frozen=True)
class ProjectiveSubspace:
    """A subspace of PG(n, q) stored by its canonical RREF basis."""

    field: Field = dc_field(compare=False, repr=False)
    n: int
    basis: Tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    @property
    def is_point(self) -> bool:
        return len(self.basis) == 1

    @property
    def key(self) -> Tuple[Vector, ...]:
        return self.basis

    @property
    def ambient(self) -> "ProjectiveSpace":
        return projective_space(self.field, self.n)

    def points(self) -> np.ndarray:
        return self.ambient.points_in(self)

    def contains(self, other: "ProjectiveSubspace") -> bool:
        return span([self, other]).dim == self.dim


def subspace(f: Field, n: int, rows: Iterable[Sequence[int]]) -> ProjectiveSubspace:
    rows = [list(r) for r in rows]
    if any(len(r) != n + 1 for r in rows):
        raise GeometryError(f"vectors must have length {n + 1}")
    return ProjectiveSubspace(field=f, n=n, basis=tuple(tuple(r) for r in rref(f, rows)))


def span(parts: Sequence[ProjectiveSubspace], ambient: Optional["ProjectiveSpace"] = None) -> ProjectiveSubspace:
    """
    Join of subspaces.

    Args:
        parts: Subspaces of a common PG(n, q)
        ambient: Needed only to build the empty subspace when parts is empty

    Raises:
        GeometryError: If the parts live in different ambient spaces
    """
    parts = list(parts)
    if not parts:
        if ambient is None:
            raise GeometryError("span of no subspaces needs an ambient space")
        return ambient.empty()
    first = parts[0]
    if any(s.n != first.n or s.field.q != first.field.q for s in parts):
        raise GeometryError("span of subspaces from different ambient spaces")
    rows = [r for s in parts for r in s.basis]
    return subspace(first.field, first.n, rows)


def intersect(a: ProjectiveSubspace, b: ProjectiveSubspace) -> ProjectiveSubspace:
    """Meet of two subspaces, via the null spaces of their annihilators."""
    f, width = a.field, a.n + 1
    annihilator = null_space(f, a.basis, width) + null_space(f, b.basis, width)
    return subspace(f, a.n, null_space(f, annihilator, width))


class ProjectiveSpace:
    """PG(n, q) with a fixed point enumeration."""

    def __init__(self, f: Field, n: int):
        if n < 0:
            raise GeometryError(f"PG({n}, q) is not a projective space")
        self.field = f
        self.n = n
        self.q = f.q
        self.num_points = theta(n, f.q)
        self._weights = np.array([f.q**i for i in range(n + 1)], dtype=np.int64)

    def __repr__(self) -> str:
        return f"PG({self.n},{self.q})"

    @cached_property
    def coords(self) -> np.ndarray:
        """All normalized points as a (theta_n, n+1) array in enumeration order."""
        if self.num_points > settings.POINT_CAP:
            raise CapExceededError(f"points of {self}", self.num_points, settings.POINT_CAP)
        return normalized_vectors(self.q, self.n)

    @cached_property
    def codes(self) -> np.ndarray:
        return self.coords @ self._weights

    @cached_property
    def _code_order(self) -> np.ndarray:
        return np.argsort(self.codes)

    @cached_property
    def _sorted_codes(self) -> np.ndarray:
        return self.codes[self._code_order]

    def _index_of_code(self, codes: np.ndarray) -> np.ndarray:
        """Indices of normalized points given their codes; every code must belong to a point."""
        slots = np.searchsorted(self._sorted_codes, codes)
        return self._code_order[np.minimum(slots, self.num_points - 1)]

    def normalize(self, vectors: np.ndarray) -> np.ndarray:
        """Scale each row so its first nonzero coordinate is 1."""
        v = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        nonzero = v != 0
        if not nonzero.any(axis=1).all():
            raise GeometryError("the zero vector is not a projective point")
        lead = v[np.arange(len(v)), nonzero.argmax(axis=1)]
        return self.field.mul_array(v, self.field.inv_table[lead][:, None])

    def index_of(self, vectors) -> np.ndarray:
        """Point indices of (not necessarily normalized) coordinate vectors."""
        v = self.normalize(vectors)
        return self._index_of_code(v @ self._weights)

    def point_index(self, vector: Sequence[int]) -> int:
        return int(self.index_of([vector])[0])

    def point(self, index: int) -> ProjectiveSubspace:
        return ProjectiveSubspace(field=self.field, n=self.n, basis=(tuple(int(x) for x in self.coords[index]),))

    def enumerate_points(self) -> List[ProjectiveSubspace]:
        return [self.point(i) for i in range(self.num_points)]

    def empty(self) -> ProjectiveSubspace:
        return ProjectiveSubspace(field=self.field, n=self.n, basis=())

    def whole(self) -> ProjectiveSubspace:
        return subspace(self.field, self.n, np.eye(self.n + 1, dtype=np.int64).tolist())

    def points_in(self, s: ProjectiveSubspace) -> np.ndarray:
        """Sorted indices of the theta_j points of s."""
        if s.n != self.n:
            raise GeometryError(f"subspace of PG({s.n},q) queried in {self}")
        if not s.basis:
            return np.empty(0, dtype=np.int64)
        coefficients = normalized_vectors(self.q, s.dim)
        basis = np.array(s.basis, dtype=np.int64)
        f = self.field
        vectors = np.zeros((len(coefficients), self.n + 1), dtype=np.int64)
        for i in range(len(basis)):
            vectors = f.add_array(vectors, f.mul_array(coefficients[:, i:i + 1], basis[i][None, :]))
        # Normalized coefficients times an RREF basis are already normalized
        return np.sort(self._index_of_code(vectors @ self._weights))


@lru_cache(maxsize=None)
def normalized_vectors(q: int, n: int) -> np.ndarray:
    """Normalized coordinate vectors of PG(n, q) sorted by code."""
    blocks = []
    for t in range(n + 1):
        tail = n - t
        grid = np.indices((q,) * tail).reshape(tail, -1).T if tail else np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(grid), n + 1), dtype=np.int64)
        block[:, t] = 1
        block[:, t + 1:] = grid
        blocks.append(block)
    vectors = np.concatenate(blocks)
    codes = vectors @ np.array([q**i for i in range(n + 1)], dtype=np.int64)
    vectors = vectors[np.argsort(codes, kind="stable")]
    vectors.flags.writeable = False
    return vectors


@lru_cache(maxsize=None)
def projective_space(f: Field, n: int) -> ProjectiveSpace:
    return ProjectiveSpace(f, n)


def enumerate_points(n: int, f: Field) -> List[ProjectiveSubspace]:
    """All points of PG(n, q) in enumeration order."""
    return projective_space(f, n).enumerate_points()


def points_in(s: ProjectiveSubspace) -> np.ndarray:
    return s.points()
