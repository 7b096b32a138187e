"""Exact checks of the counting identities and inequalities satisfied by m-ovoids.

Every check returns an IdentityReport whose residual is LHS - RHS. Equalities
pass on a zero residual, inequalities on a non-negative one.
"""
import random
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np
import structlog

from movoid.core.config import settings
from movoid.core.exceptions import GeometryError, WeightError
from movoid.geometry.polar import HalfPower, PolarSpace
from movoid.geometry.projgeom import ProjectiveSubspace, span, theta
from movoid.models.enums import IdentityId, SpaceKind
from movoid.models.reports import IdentityReport
from movoid.services.ovoid import WeightFunction, find_rich_subspace, mu, validate_m_ovoid

logger = structlog.get_logger(__name__)


def _key(s: ProjectiveSubspace) -> List[List[int]]:
    return [list(row) for row in s.basis]


def _too_large(space: PolarSpace, pi: ProjectiveSubspace) -> bool:
    ambient = space.ambient.num_points
    cells = ambient * theta(pi.dim, space.q)
    return ambient > settings.IDENTITY_THETA_CAP or cells > settings.IDENTITY_CELL_CAP


def _skipped(identity: IdentityId, inputs: Dict) -> IdentityReport:
    return IdentityReport(identity=identity, inputs=inputs, skipped="skipped: scale")


def _report(identity: IdentityId, inputs: Dict, lhs, rhs, equality: bool, **extra) -> IdentityReport:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    residual = lhs - rhs
    passed = residual == 0 if equality else residual >= 0
    return IdentityReport(identity=identity, inputs=inputs, lhs=lhs, rhs=rhs, residual=residual,
                          passed=passed, **extra)


class _Sums:
    """Brute-force sums around a subspace pi, shared by several identities."""

    def __init__(self, w: WeightFunction, pi: ProjectiveSubspace):
        space = w.space
        self.w = w
        self.space = space
        self.pi_points = space.ambient.points_in(pi)
        self.mu_pi = int(w.weights[self.pi_points].sum())
        positions = space.position[self.pi_points]
        if (positions < 0).any():
            raise GeometryError("subspace is not contained in the polar space")
        # in_perp[s]: s lies in pi^perp; meet[s]: mu(s^perp ∩ pi)
        self.in_perp = space.perp_weight(positions, np.ones(len(positions), dtype=np.int64)) == len(positions)
        self.meet = space.perp_weight(positions, w.weights[self.pi_points])
        in_pi = np.zeros(space.ambient.num_points, dtype=bool)
        in_pi[self.pi_points] = True
        self.in_pi = in_pi
        self.pi = pi

    @property
    def mu_perp(self) -> int:
        return int(self.w.weights[self.in_perp].sum())

    @property
    def mu_perp_minus_pi(self) -> int:
        return self.mu_perp - self.mu_pi

    def squares_in_perp(self) -> int:
        """sum over p in pi^perp minus pi of mu(p)^2."""
        mask = self.in_perp & ~self.in_pi
        return int((self.w.weights[mask] ** 2).sum())

    def join_products(self) -> int:
        """sum over polar p outside pi of mu(p) mu(<p, pi>)."""
        ambient = self.space.ambient
        total = 0
        for p in np.flatnonzero(self.w.weights):
            if self.in_pi[p]:
                continue
            joined = span([self.pi, ambient.point(int(p))])
            total += int(self.w.weights[p]) * mu(self.w, joined)
        return total

    def meet_sum(self, weighted: bool) -> int:
        """sum over s outside pi^perp of mu(s^perp ∩ pi), optionally weighted by mu(s)."""
        outside = ~self.in_perp
        if weighted:
            return int((self.w.weights[outside] * self.meet[outside]).sum())
        return int(self.meet[outside].sum())


def check_le1(w: WeightFunction, m: int, pi: ProjectiveSubspace, j: Optional[int] = None) -> IdentityReport:
    """
    mu(pi^perp) + q^{r+e-j-2} mu(pi) = m(q^{r+e-j-2} + 1) for a j-space pi of PG(n, q).

    Restricted to j <= n-1; the full ambient space is rejected.
    """
    space = w.space
    j = pi.dim if j is None else j
    if j != pi.dim:
        raise GeometryError(f"subspace has dimension {pi.dim}, not {j}")
    if not 0 <= j <= space.n - 1:
        raise GeometryError(f"le1 is checked for 0 <= j <= {space.n - 1}, got {j}")
    inputs = {"pi": _key(pi), "j": j}
    if _too_large(space, pi):
        return _skipped(IdentityId.LE1, inputs)
    c = space.qpow(space.r + space.e - j - 2)
    lhs = mu(w, space.perp(pi)) + c * mu(w, pi)
    return _report(IdentityId.LE1, inputs, lhs, m * (c + 1), equality=True)


def check_counting_identity(w: WeightFunction, m: int, pi: ProjectiveSubspace) -> IdentityReport:
    """
    Double count of weighted pairs around a totally isotropic j-space pi, j <= r-1.

    The last sum is weighted by mu(s); the unweighted variant is reported in notes.
    The identity is evaluated even when mu(pi^perp minus pi) = 0, with the
    hypothesis failure recorded.
    """
    space = w.space
    j = pi.dim
    if not 0 <= j <= space.r - 1 or not space.is_totally_isotropic(pi):
        raise GeometryError(f"counting identity needs a totally isotropic j-space with 0 <= j <= {space.r - 1}")
    inputs = {"pi": _key(pi), "j": j}
    if _too_large(space, pi):
        return _skipped(IdentityId.COUNTING, inputs)
    sums = _Sums(w, pi)
    re = space.r + space.e
    a, b, c = space.qpow(re - j - 3), space.qpow(re - j - 2), space.qpow(re - 2)
    top = space.qpow(re - 1)
    mu_pi = sums.mu_pi
    lhs = m * (a + 1) * (m * (top + 1) - mu_pi) + c * sums.squares_in_perp()
    base = m * (c + 1) * (m - mu_pi) * (b + 1) + a * sums.join_products()
    rhs = base + sums.meet_sum(weighted=True)
    hypothesis_ok = sums.mu_perp_minus_pi != 0
    notes = [f"unweighted last sum gives rhs {base + sums.meet_sum(weighted=False)}"]
    if not hypothesis_ok:
        notes.append("hypothesis mu(pi^perp minus pi) != 0 fails; identity evaluated anyway")
    if j == 0 and mu_pi < m:
        notes.append("point case with mu(p0) < m")
    return _report(IdentityId.COUNTING, inputs, lhs, rhs, equality=True, hypothesis_ok=hypothesis_ok, notes=notes)


def check_point_sums(w: WeightFunction, m: int, p0: int) -> List[IdentityReport]:
    """
    Sums around a polar point p0 of an ordinary m-ovoid: the square sum over
    p0^perp, the join lower bound when p0 is in O, and the sharper join bound
    on H(4, q).
    """
    space = w.space
    if not space.is_polar_point(p0):
        raise GeometryError(f"point {p0} is not on {space.name}")
    if not w.is_binary:
        raise WeightError("point sums need a {0,1}-valued weight function")
    inputs = {"p0": int(p0)}
    if _too_large(space, space.ambient.point(p0)):
        return [_skipped(IdentityId.POINT_SUMS_A, inputs)]
    sums = _Sums(w, space.ambient.point(p0))
    c = space.half_power.integer(space.r + space.e - 2)
    reports = [_report(IdentityId.POINT_SUMS_A, inputs, sums.squares_in_perp(), (m - sums.mu_pi) * (c + 1),
                       equality=True)]
    if not w.weights[p0]:
        return reports
    joins = sums.join_products()
    size = space.ovoid_size(m)
    reports.append(_report(IdentityId.POINT_SUMS_B, inputs, joins, 2 * (size - 1), equality=False))
    if space.kind == SpaceKind.HERMITIAN and space.r == 2:
        b = space.field.sqrt_q
        outside = m * b**3 * (b**2 - 1) + b**3
        observed_outside = int(w.weights[~sums.in_perp].sum())
        notes = [f"|O minus p0^perp| = {observed_outside}, expected {outside}",
                 f"printed count 2(m b^3 (b^2-1) + b^3) = {2 * outside}"]
        rhs = m * (m - 1) * (b**3 + 1) + 2 * outside
        reports.append(_report(IdentityId.POINT_SUMS_C, inputs, joins, rhs, equality=False, notes=notes))
    return reports


def _check_rank_two_less(space: PolarSpace, pi: ProjectiveSubspace) -> None:
    if space.r < 2 or pi.dim != space.r - 2 or not space.is_totally_isotropic(pi):
        raise GeometryError(f"expected a totally isotropic subspace of dimension {space.r - 2}")


def check_aid1(w: WeightFunction, m: int, pi: ProjectiveSubspace) -> IdentityReport:
    """sum over ambient s outside pi^perp of mu(s^perp ∩ pi) = mu(pi) q^{r+2e-1} theta_{r-3}."""
    space = w.space
    _check_rank_two_less(space, pi)
    inputs = {"pi": _key(pi)}
    if _too_large(space, pi):
        return _skipped(IdentityId.AID1, inputs)
    sums = _Sums(w, pi)
    rhs = sums.mu_pi * space.qpow(space.r + 2 * space.e - 1) * theta(space.r - 3, space.q)
    return _report(IdentityId.AID1, inputs, sums.meet_sum(weighted=False), rhs, equality=True)


def check_aid2_equality(w: WeightFunction, m: int, pi: ProjectiveSubspace) -> IdentityReport:
    """mu(pi^perp minus pi) = (m - mu(pi)) (q^e + 1) for a totally isotropic (r-2)-space."""
    space = w.space
    _check_rank_two_less(space, pi)
    inputs = {"pi": _key(pi)}
    if _too_large(space, pi):
        return _skipped(IdentityId.AID2_EQ, inputs)
    sums = _Sums(w, pi)
    rhs = (m - sums.mu_pi) * (space.qpow(space.e) + 1)
    return _report(IdentityId.AID2_EQ, inputs, sums.mu_perp_minus_pi, rhs, equality=True)


def aid2_bound(space: PolarSpace, m: int, mu_pi: int) -> Fraction:
    """Lower bound on the join sum around an (r-2)-space carrying weight mu_pi."""
    qe = space.qpow(space.e)
    return m * (qe + 1) * (m - mu_pi) + (1 + mu_pi) * (m * qe * (space.qpow(space.r - 1) - 1) + mu_pi * qe)


def check_aid2(w: WeightFunction, m: int, pi: ProjectiveSubspace) -> IdentityReport:
    space = w.space
    _check_rank_two_less(space, pi)
    inputs = {"pi": _key(pi)}
    if _too_large(space, pi):
        return _skipped(IdentityId.AID2, inputs)
    sums = _Sums(w, pi)
    rhs = aid2_bound(space, m, sums.mu_pi)
    printed = rhs + sums.mu_pi * (1 + sums.mu_pi)
    notes = [f"printed bound {printed}"]
    return _report(IdentityId.AID2, inputs, sums.join_products(), rhs, equality=False, notes=notes)


def main_inequality_value(space: PolarSpace, m: int, mu_pi: int) -> Fraction:
    """Left side of the quadratic inequality in m for an (r-2)-space of weight mu_pi."""
    q, r = space.q, space.r
    qe = space.qpow(space.e)
    qr1 = space.qpow(r - 1)
    printed = (
        m**2 * (space.qpow(r) - qr1 - qe - q)
        + m * (mu_pi * (qr1 + 2 * qe + q) + qr1 + qe)
        - mu_pi * (space.qpow(r + space.e - 1) + qr1 + (1 + mu_pi) * (qe + 1)
                   + space.qpow(r + space.e) * theta(r - 3, q))
    )
    return printed + mu_pi * (1 + mu_pi)


def check_main_inequality(w: WeightFunction, m: int, pi: ProjectiveSubspace) -> IdentityReport:
    space = w.space
    _check_rank_two_less(space, pi)
    if _too_large(space, pi):
        return _skipped(IdentityId.EQNEW, {"pi": _key(pi)})
    sums = _Sums(w, pi)
    inputs = {"pi": _key(pi), "mu_pi": sums.mu_pi}
    hypothesis_ok = sums.mu_perp_minus_pi != 0
    value = main_inequality_value(space, m, sums.mu_pi)
    notes = [f"printed expression {value - sums.mu_pi * (1 + sums.mu_pi)}"]
    if not hypothesis_ok:
        report = IdentityReport(identity=IdentityId.EQNEW, inputs=inputs, hypothesis_ok=False,
                                notes=notes + ["hypothesis mu(pi^perp minus pi) != 0 fails"])
        return report
    return _report(IdentityId.EQNEW, inputs, value, 0, equality=False, notes=notes)


def check_small_quadratic(kind: SpaceKind, r: int, q: int, m: int) -> IdentityReport:
    """(q-1)^2 m^2 + 3(q-1) m - (q^{r+e-1} + q - 2) >= 0, q the ambient field order."""
    top = HalfPower.of_order(q)(r + kind.e - 1)
    lhs = (q - 1) ** 2 * m**2 + 3 * (q - 1) * m
    inputs = {"space": kind.value, "r": r, "q": q, "m": m}
    return _report(IdentityId.SMALL_QUADRATIC, inputs, lhs, top + q - 2, equality=False)


def check_weighted(w: WeightFunction, m: int, p: int) -> IdentityReport:
    """The defining point equation mu(p^perp) + q^{r+e-2} mu(p) = m(q^{r+e-2}+1)."""
    space = w.space
    c = space.qpow(space.r + space.e - 2)
    lhs = mu(w, space.perp(space.ambient.point(p))) + c * int(w.weights[p])
    return _report(IdentityId.WEIGHTED, {"p": int(p)}, lhs, m * (c + 1), equality=True)


def _sample(rng: random.Random, items: List, k: int) -> List:
    return items if len(items) <= k else rng.sample(items, k)


def random_subspace(space: PolarSpace, j: int, rng: random.Random) -> ProjectiveSubspace:
    ambient = space.ambient
    while True:
        s = span([ambient.point(rng.randrange(ambient.num_points)) for _ in range(j + 1)])
        if s.dim == j:
            return s


def run_identity_suite(w: WeightFunction, m: int, identities: Optional[List[str]] = None,
                       samples: int = 50, seed: int = 0) -> List[IdentityReport]:
    """
    Evaluate the selected identities over deterministically sampled inputs.

    Args:
        w: A (weighted) m-ovoid
        m: Its parameter
        identities: Subset of le1, counting, point-sums, aid1, aid2, eqnew; all when None
        samples: Number of sampled inputs per identity
        seed: Seed for the sampler
    """
    wanted = set(identities or ["le1", "counting", "point-sums", "aid1", "aid2", "eqnew"])
    space = w.space
    rng = random.Random(seed)
    reports: List[IdentityReport] = []
    polar_points = space.points.tolist()

    if "le1" in wanted:
        for j in range(min(3, space.n - 1) + 1):
            for _ in range(min(samples, 10)):
                reports.append(check_le1(w, m, random_subspace(space, j, rng), j))
    if "counting" in wanted:
        for p in _sample(rng, polar_points, samples):
            reports.append(check_counting_identity(w, m, space.ambient.point(p)))
        for g in _sample(rng, list(space.generators), samples):
            reports.append(check_counting_identity(w, m, g))
    if "point-sums" in wanted and w.is_binary:
        for p in _sample(rng, polar_points, samples):
            reports.extend(check_point_sums(w, m, p))
    rank_two_less = []
    if space.r >= 2 and ({"aid1", "aid2", "eqnew"} & wanted) and w.is_binary:
        rank_two_less = _sample(rng, _rank_two_less_subspaces(space), samples)
        if m >= 1 and validate_m_ovoid(w, m).valid:
            rank_two_less.append(find_rich_subspace(w, m))
    for pi in rank_two_less:
        if "aid1" in wanted:
            reports.append(check_aid1(w, m, pi))
        if "aid2" in wanted:
            reports.append(check_aid2_equality(w, m, pi))
            reports.append(check_aid2(w, m, pi))
        if "eqnew" in wanted:
            reports.append(check_main_inequality(w, m, pi))
    logger.info("identity_suite_finished", space=space.name, m=m, reports=len(reports),
                failed=sum(1 for r in reports if not r.passed and r.hypothesis_ok and not r.skipped))
    return reports


def _rank_two_less_subspaces(space: PolarSpace) -> List[ProjectiveSubspace]:
    """Totally isotropic (r-2)-spaces, one per generator, taken as the span of its first r-1 canonical points."""
    if space.r == 2:
        return [space.ambient.point(int(p)) for p in space.points]
    found = {}
    for g in space.generators:
        pts = space.ambient.points_in(g)
        current = space.ambient.point(int(pts[0]))
        for p in pts[1:]:
            if current.dim == space.r - 2:
                break
            current = span([current, space.ambient.point(int(p))])
        found[current.key] = current
    return list(found.values())
