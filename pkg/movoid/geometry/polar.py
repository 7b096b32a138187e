"""Polar spaces P_{r,e}: point sets, the polarity and generator enumeration."""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, List, Optional, Sequence, Union

import galois
import numpy as np
import structlog

from movoid.core.config import settings
from movoid.core.exceptions import CapExceededError, FieldError, FormMismatchError, GeometryError
from movoid.geometry.gf import Field, field_from_order
from movoid.geometry.projgeom import (
    ProjectiveSubspace,
    null_space,
    projective_space,
    span,
    subspace,
    theta,
)
from movoid.models.enums import SpaceKind
from movoid.providers.registry import FormRegistry

logger = structlog.get_logger(__name__)

Exponent = Union[int, Fraction]


@dataclass(frozen=True)
class HalfPower:
    """Exact q^x for half-integral x, evaluated as p^{x k}."""

    p: int
    k: int

    @classmethod
    def of_order(cls, q: int) -> "HalfPower":
        primes, multiplicities = galois.factors(q)
        if len(primes) != 1:
            raise FieldError(f"{q} is not a prime power")
        return cls(int(primes[0]), int(multiplicities[0]))

    @property
    def q(self) -> int:
        return self.p**self.k

    def __call__(self, x: Exponent) -> Fraction:
        exponent = Fraction(x) * self.k
        if exponent.denominator != 1:
            raise FieldError(f"q^{x} is not rational for q = {self.q}")
        return Fraction(self.p) ** int(exponent)

    def integer(self, x: Exponent) -> int:
        value = self(x)
        if value.denominator != 1:
            raise FieldError(f"q^{x} is not an integer for q = {self.q}")
        return value.numerator


def polar_point_count(kind: SpaceKind, r: int, q: int) -> int:
    """theta_{r-1} (q^{r+e-1} + 1), exact."""
    hp = HalfPower.of_order(q)
    if kind == SpaceKind.HERMITIAN and hp.k % 2:
        raise FieldError(f"Hermitian spaces need a square field order, got {q}")
    return theta(r - 1, q) * (hp.integer(r + kind.e - 1) + 1)


def generator_count_formula(kind: SpaceKind, r: int, q: int) -> int:
    """prod_{i=1..r} (q^{i+e-1} + 1)."""
    hp = HalfPower.of_order(q)
    count = 1
    for i in range(1, r + 1):
        count *= hp.integer(i + kind.e - 1) + 1
    return count


class PolarSpace:
    """A polar space of rank r embedded in PG(n, q) by one of the registered forms."""

    def __init__(self, kind: SpaceKind, r: int, field: Field):
        self.kind = kind
        self.r = r
        self.field = field
        self.q = field.q
        self.form = FormRegistry.get_form(kind, field, r)
        self.n = self.form.n
        self.ambient = projective_space(field, self.n)
        self.half_power = HalfPower(field.p, field.k)

    def __repr__(self) -> str:
        return f"{self.name}"

    @property
    def name(self) -> str:
        return f"{self.kind.value}({self.n},{self.q})"

    @property
    def e(self) -> Fraction:
        return self.kind.e

    @property
    def twice_e(self) -> int:
        return self.kind.twice_e

    @property
    def theta_gen(self) -> int:
        """Points per generator, theta_{r-1}."""
        return theta(self.r - 1, self.q)

    def qpow(self, x: Exponent) -> Fraction:
        return self.half_power(x)

    def ovoid_size(self, m: int) -> int:
        return m * (self.half_power.integer(self.r + self.e - 1) + 1)

    # Points

    @cached_property
    def point_mask(self) -> np.ndarray:
        """Boolean mask over ambient points marking the polar points."""
        expected = polar_point_count(self.kind, self.r, self.q)
        if expected > settings.POLAR_POINT_CAP:
            raise CapExceededError(f"points of {self.name}", expected, settings.POLAR_POINT_CAP)
        mask = self.form.isotropic_mask(self.ambient.coords)
        found = int(mask.sum())
        if found != expected:
            raise FormMismatchError(self.name, expected, found)
        mask.flags.writeable = False
        return mask

    @cached_property
    def points(self) -> np.ndarray:
        """Ambient indices of the polar points, increasing."""
        return np.flatnonzero(self.point_mask)

    @cached_property
    def position(self) -> np.ndarray:
        """Map ambient index to position in `points`, -1 off the space."""
        pos = np.full(self.ambient.num_points, -1, dtype=np.int64)
        pos[self.points] = np.arange(len(self.points))
        return pos

    @property
    def num_points(self) -> int:
        return len(self.points)

    def is_polar_point(self, index: int) -> bool:
        return bool(self.point_mask[index])

    # Polarity

    def perp_block(self, positions: np.ndarray) -> np.ndarray:
        """block[s, k] is True when the polar point at positions[k] lies in the perp of ambient point s."""
        targets = self.ambient.coords[self.points[np.asarray(positions, dtype=np.int64)]]
        return self.form.pair_matrix(self.ambient.coords, targets) == 0

    def perp_weight(self, positions: np.ndarray, weights: np.ndarray) -> np.ndarray:
        """
        Weight of the given polar points inside the perp of every ambient point.

        Args:
            positions: Positions (into `points`) of the weighted polar points
            weights: One integer weight per position

        Returns:
            np.ndarray: total[s] = sum of weights[k] over positions[k] in s^perp
        """
        positions = np.asarray(positions, dtype=np.int64)
        weights = np.asarray(weights, dtype=np.int64)
        total = np.zeros(self.ambient.num_points, dtype=np.int64)
        step = max(1, settings.PERP_BLOCK_CELLS // self.ambient.num_points)
        for start in range(0, len(positions), step):
            block = self.perp_block(positions[start:start + step])
            total += block.astype(np.int64) @ weights[start:start + step]
        return total

    @cached_property
    def collinear(self) -> np.ndarray:
        """Polar x polar orthogonality (positions, not ambient indices)."""
        coords = self.ambient.coords[self.points]
        return self.form.pair_matrix(coords, coords) == 0

    def form_value(self, u: Sequence[int], v: Optional[Sequence[int]] = None) -> int:
        return self.form.form_value(u, v)

    def perp(self, s: ProjectiveSubspace) -> ProjectiveSubspace:
        """
        Polar subspace of s.

        Raises:
            GeometryError: If s does not live in this space's ambient PG(n, q)
        """
        self._check_ambient(s)
        rows = self.form.functional_rows(s.basis)
        return subspace(self.field, self.n, null_space(self.field, rows, self.n + 1))

    def perp_points(self, s: ProjectiveSubspace) -> np.ndarray:
        """Ambient indices of the polar points in s^perp."""
        self._check_ambient(s)
        if not s.basis:
            return self.points
        rows = np.array(s.basis, dtype=np.int64)
        values = self.form.pair_matrix(rows, self.ambient.coords[self.points])
        return self.points[(values == 0).all(axis=0)]

    def is_totally_isotropic(self, s: ProjectiveSubspace) -> bool:
        self._check_ambient(s)
        if not s.basis:
            return True
        if not self.point_mask[self.ambient.points_in(s)].all():
            return False
        rows = np.array(s.basis, dtype=np.int64)
        if (self.form.pair_matrix(rows, rows) != 0).any():
            return False
        if self.kind == SpaceKind.ELLIPTIC:
            return all(self.form.quadratic_value(b) == 0 for b in s.basis)
        return True

    def _check_ambient(self, s: ProjectiveSubspace) -> None:
        if s.n != self.n or s.field.q != self.q:
            raise GeometryError(f"subspace of PG({s.n},{s.field.q}) used in {self.name}")

    # Generators

    def _greedy_sequence(self, generator_points: np.ndarray) -> List[int]:
        chosen: List[int] = []
        current = self.ambient.empty()
        covered = np.empty(0, dtype=np.int64)
        while len(chosen) < self.r:
            nxt = int(np.setdiff1d(generator_points, covered)[0])
            chosen.append(nxt)
            current = span([current, self.ambient.point(nxt)])
            covered = self.ambient.points_in(current)
        return chosen

    def _extend(self, chosen: List[int], current: ProjectiveSubspace, covered: np.ndarray,
                fresh: np.ndarray) -> Iterator[ProjectiveSubspace]:
        # fresh: polar positions orthogonal to every chosen point and outside current
        if len(chosen) == self.r:
            if fresh.any():
                raise GeometryError(f"{self.name} has a totally isotropic subspace beyond rank {self.r}")
            if self._greedy_sequence(covered) == chosen:
                yield current
            return
        last = int(self.position[chosen[-1]])
        for pos in np.flatnonzero(fresh[last + 1:]) + last + 1:
            p = int(self.points[pos])
            nxt = span([current, self.ambient.point(p)])
            nxt_points = self.ambient.points_in(nxt)
            if int(np.setdiff1d(nxt_points, covered)[0]) != p:
                continue
            nxt_fresh = fresh & self.collinear[pos]
            nxt_fresh[self.position[nxt_points]] = False
            yield from self._extend(chosen + [p], nxt, nxt_points, nxt_fresh)

    def iter_generators(self, first_points: Optional[Iterable[int]] = None) -> Iterator[ProjectiveSubspace]:
        """
        Depth-first canonical enumeration of the generators.

        Args:
            first_points: Restrict to generators whose least point is one of these
                ambient indices; used to split the work by top-level branch
        """
        starts = self.points if first_points is None else sorted(first_points)
        for p in starts:
            pos = int(self.position[p])
            if pos < 0:
                raise GeometryError(f"point {p} is not on {self.name}")
            fresh = self.collinear[pos].copy()
            fresh[pos] = False
            yield from self._extend([int(p)], self.ambient.point(int(p)), np.array([int(p)]), fresh)

    def enumerate_generators(self) -> List[ProjectiveSubspace]:
        return list(self.generators)

    @cached_property
    def generators(self) -> tuple:
        expected = generator_count_formula(self.kind, self.r, self.q)
        if expected > settings.GENERATOR_CAP:
            raise CapExceededError(f"generators of {self.name}", expected, settings.GENERATOR_CAP)
        found = tuple(self.iter_generators())
        if len(found) != expected:
            logger.warning("generator_count_mismatch", space=self.name, expected=expected, found=len(found))
        logger.info("generators_enumerated", space=self.name, count=len(found))
        return found

    @cached_property
    def incidence(self) -> np.ndarray:
        """(num_generators, theta_{r-1}) array of polar positions on each generator."""
        return np.array([self.position[self.ambient.points_in(g)] for g in self.generators], dtype=np.int64)


@lru_cache(maxsize=None)
def build_polar_space(kind: SpaceKind, r: int, field: Field) -> PolarSpace:
    """
    Build and validate a polar space.

    Raises:
        FieldError: If HERMITIAN is requested over a non-square field
        CapExceededError: If the point set exceeds the configured caps
        FormMismatchError: If the enumerated point count disagrees with the formula
    """
    space = PolarSpace(kind, r, field)
    space.point_mask
    logger.info("polar_space_built", space=space.name, points=space.num_points)
    return space


def polar_space(kind: Union[SpaceKind, str], r: int, q: int) -> PolarSpace:
    """Convenience constructor from (kind, r, q)."""
    if not isinstance(kind, SpaceKind):
        kind = SpaceKind.parse(kind)
    return build_polar_space(kind, r, field_from_order(q))
