from typing import Iterable, List, Optional

import numpy as np
import structlog

from movoid.core.exceptions import GeometryError, WeightError
from movoid.geometry.polar import PolarSpace
from movoid.geometry.projgeom import ProjectiveSubspace, span
from movoid.models.reports import OvoidCertificate, PerpProfileReport

logger = structlog.get_logger(__name__)


class WeightFunction:
    """Non-negative integer weights on the points of a polar space, zero off the space."""

    def __init__(self, space: PolarSpace, weights: np.ndarray):
        weights = np.asarray(weights, dtype=np.int64)
        if weights.shape != (space.ambient.num_points,):
            raise WeightError(f"expected {space.ambient.num_points} weights, got {weights.shape}")
        if (weights < 0).any():
            raise WeightError("weights must be non-negative")
        if weights[~space.point_mask].any():
            raise WeightError("weights must vanish outside the polar point set")
        weights = weights.copy()
        weights.flags.writeable = False
        self.space = space
        self.weights = weights
        self.total = int(weights.sum())

    @classmethod
    def from_points(cls, space: PolarSpace, points: Iterable[int]) -> "WeightFunction":
        weights = np.zeros(space.ambient.num_points, dtype=np.int64)
        idx = np.fromiter((int(p) for p in points), dtype=np.int64)
        if len(idx) and not space.point_mask[idx].all():
            raise WeightError("point set contains points outside the polar space")
        weights[idx] = 1
        return cls(space, weights)

    @classmethod
    def full(cls, space: PolarSpace) -> "WeightFunction":
        return cls(space, space.point_mask.astype(np.int64))

    @classmethod
    def empty(cls, space: PolarSpace) -> "WeightFunction":
        return cls(space, np.zeros(space.ambient.num_points, dtype=np.int64))

    @property
    def polar_weights(self) -> np.ndarray:
        return self.weights[self.space.points]

    @property
    def is_binary(self) -> bool:
        return bool((self.weights <= 1).all())

    def support(self) -> List[int]:
        return np.flatnonzero(self.weights).tolist()

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeightFunction) and other.space is self.space
                and np.array_equal(other.weights, self.weights))

    def __repr__(self) -> str:
        return f"WeightFunction({self.space.name}, total={self.total})"


def mu(w: WeightFunction, s: ProjectiveSubspace) -> int:
    """Total weight of the points of s."""
    return int(w.weights[w.space.ambient.points_in(s)].sum())


def complement(w: WeightFunction) -> WeightFunction:
    if not w.is_binary:
        raise WeightError("complement needs a {0,1}-valued weight function")
    return WeightFunction(w.space, w.space.point_mask.astype(np.int64) - w.weights)


def scale(w: WeightFunction, c: int) -> WeightFunction:
    return WeightFunction(w.space, w.weights * c)


def generator_weights(w: WeightFunction) -> np.ndarray:
    return w.polar_weights[w.space.incidence].sum(axis=1)


def validate_m_ovoid(w: WeightFunction, m: int) -> OvoidCertificate:
    """
    Check that every generator carries weight exactly m.

    Args:
        w: A {0,1}-valued weight function
        m: Target number of points per generator

    Returns:
        OvoidCertificate: Validity plus the first offending generator, if any

    Raises:
        WeightError: If w is not {0,1}-valued
    """
    if not w.is_binary:
        raise WeightError("use validate_weighted_m_ovoid for weights outside {0,1}")
    space = w.space
    per_generator = generator_weights(w)
    bad = np.flatnonzero(per_generator != m)
    certificate = OvoidCertificate(
        space=space.name,
        m=m,
        valid=len(bad) == 0,
        size=w.total,
        expected_size=space.ovoid_size(m),
        generator_min=int(per_generator.min()),
        generator_max=int(per_generator.max()),
    )
    if len(bad):
        g = space.generators[int(bad[0])]
        certificate.offending_generator = [list(row) for row in g.basis]
        certificate.message = f"generator meets the set in {int(per_generator[bad[0]])} points, expected {m}"
    logger.debug("m_ovoid_validated", space=space.name, m=m, valid=certificate.valid)
    return certificate


def weighted_point_residuals(w: WeightFunction, m: int) -> np.ndarray:
    """mu(p^perp) + q^{r+e-2} mu(p) - m(q^{r+e-2}+1) at every polar point."""
    space = w.space
    c = space.half_power.integer(space.r + space.e - 2)
    w_polar = w.polar_weights
    support = np.flatnonzero(w_polar)
    mu_perp = space.perp_weight(support, w_polar[support])[space.points]
    return mu_perp + c * w_polar - m * (c + 1)


def validate_weighted_m_ovoid(w: WeightFunction, m: int) -> OvoidCertificate:
    space = w.space
    residuals = weighted_point_residuals(w, m)
    bad = np.flatnonzero(residuals != 0)
    certificate = OvoidCertificate(space=space.name, m=m, valid=len(bad) == 0, weighted=True, size=w.total,
                                   expected_size=space.ovoid_size(m))
    if len(bad):
        certificate.offending_point = int(space.points[bad[0]])
        certificate.message = f"weighted point equation off by {int(residuals[bad[0]])}"
    return certificate


def perp_profile(w: WeightFunction, m: int) -> PerpProfileReport:
    """
    Compare |p^perp ∩ O| at every ambient point with the two-branch formula.

    Raises:
        WeightError: If w is not {0,1}-valued
    """
    if not w.is_binary:
        raise WeightError("perp profile needs a {0,1}-valued weight function")
    space = w.space
    c = space.half_power.integer(space.r + space.e - 2)
    inside_expected = (m - 1) * (c + 1) + 1
    outside_expected = m * (c + 1)
    support = np.flatnonzero(w.polar_weights)
    counts = space.perp_weight(support, w.polar_weights[support])
    inside = w.weights.astype(bool)
    expected = np.where(inside, inside_expected, outside_expected)
    violations = np.flatnonzero(counts != expected)
    return PerpProfileReport(
        space=space.name,
        m=m,
        inside_expected=inside_expected,
        outside_expected=outside_expected,
        inside_observed=sorted(set(counts[inside].tolist())),
        outside_observed=sorted(set(counts[~inside].tolist())),
        checked_points=len(counts),
        violations=violations.tolist(),
        holds=len(violations) == 0,
    )


def find_rich_subspace(w: WeightFunction, m: int) -> ProjectiveSubspace:
    """
    A totally isotropic subspace of dimension r-2 holding at least min(m, r-1)
    points of O, taken inside the first generator.

    Raises:
        WeightError: If w is not a valid m-ovoid with m >= 1
        GeometryError: If the rank is below 2
    """
    space = w.space
    if space.r < 2:
        raise GeometryError("rich subspaces need rank at least 2")
    if m < 1 or not validate_m_ovoid(w, m).valid:
        raise WeightError(f"find_rich_subspace needs a valid m-ovoid with m >= 1, got m = {m}")
    generator = space.generators[0]
    on_generator = space.ambient.points_in(generator)
    chosen = [int(p) for p in on_generator if w.weights[p]][: min(m, space.r - 1)]
    current = span([space.ambient.point(p) for p in chosen])
    for p in on_generator:
        if current.dim >= space.r - 2:
            break
        candidate = span([current, space.ambient.point(int(p))])
        if candidate.dim <= space.r - 2:
            current = candidate
    return current


def ovoid_from_points(space: PolarSpace, points: Iterable[int], m: Optional[int] = None) -> WeightFunction:
    w = WeightFunction.from_points(space, points)
    if m is not None and not validate_m_ovoid(w, m).valid:
        raise WeightError(f"point set is not a {m}-ovoid of {space.name}")
    return w
