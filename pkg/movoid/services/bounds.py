"""Lower bounds on m for m-ovoids, evaluated with exact rationals.

Every bound has the shape (A + sqrt(R)) / D. Thresholds are the least integer
at or above the real value, decided by integer comparisons only.
"""
import math
from fractions import Fraction
from typing import Dict, List, Optional, Union

import structlog

from movoid.core.exceptions import FieldError, MovoidException
from movoid.geometry.polar import HalfPower
from movoid.models.bounds import BestBound, BoundReport, RadicalBound
from movoid.models.enums import SpaceKind, Theorem

logger = structlog.get_logger(__name__)

Rational = Union[int, Fraction]

# Order used to break ties in best_bound: later entries win
PRECEDENCE = [Theorem.BKLP, Theorem.SMALL, Theorem.BDS_H4, Theorem.Q7, Theorem.MAIN]


def _satisfies(t: int, A: Fraction, R: Fraction, D: Fraction) -> bool:
    # t >= (A + sqrt(R)) / D  <=>  D t - A >= 0 and (D t - A)^2 >= R
    lhs = D * t - A
    return lhs >= 0 and lhs * lhs >= R


def ceil_radical(A: Rational, R: Rational, D: Rational) -> int:
    """
    Smallest integer t >= (A + sqrt(R)) / D, clamped at 0.

    Raises:
        MovoidException: If R < 0 or D <= 0
    """
    A, R, D = Fraction(A), Fraction(R), Fraction(D)
    if R < 0:
        raise MovoidException(f"negative radicand {R}")
    if D <= 0:
        raise MovoidException(f"non-positive denominator {D}")
    root = math.isqrt(R.numerator // R.denominator)
    t = math.floor((A + root) / D)
    while _satisfies(t - 1, A, R, D):
        t -= 1
    while not _satisfies(t, A, R, D):
        t += 1
    return max(t, 0)


def _bound(theorem: Theorem, A: Rational, R: Rational, D: Rational, rigorous: bool = True) -> RadicalBound:
    return RadicalBound(theorem=theorem, A=A, R=R, D=D, threshold=ceil_radical(A, R, D), rigorous=rigorous)


def _inapplicable(theorem: Theorem, reason: str) -> RadicalBound:
    return RadicalBound(theorem=theorem, applicable=False, reason=reason)


def _checked_power(kind: SpaceKind, q: int) -> HalfPower:
    hp = HalfPower.of_order(q)
    if kind == SpaceKind.HERMITIAN and hp.k % 2:
        raise FieldError(f"Hermitian spaces need a square field order, got {q}")
    return hp


def _radicand_exponent(kind: SpaceKind, r: int) -> Fraction:
    # q^{r+e-1}: r+1 elliptic, r symplectic, r+1/2 Hermitian (b^{2r+1} with b = sqrt(q))
    return r + kind.e - 1


def bound_bklp(kind: SpaceKind, r: int, q: int) -> RadicalBound:
    """(-3 + sqrt(9 + 4 q^{r+e-1})) / (2(q-1)), q the ambient field order."""
    hp = _checked_power(kind, q)
    if r < 2:
        return _inapplicable(Theorem.BKLP, "needs r >= 2")
    return _bound(Theorem.BKLP, -3, 9 + 4 * hp(_radicand_exponent(kind, r)), 2 * (q - 1))


def bound_small_improv(kind: SpaceKind, r: int, q: int) -> RadicalBound:
    """The BKLP shape with 4(q-2) added under the root."""
    hp = _checked_power(kind, q)
    if r < 2:
        return _inapplicable(Theorem.SMALL, "needs r >= 2")
    R = 9 + 4 * (hp(_radicand_exponent(kind, r)) + q - 2)
    return _bound(Theorem.SMALL, -3, R, 2 * (q - 1))


def bound_bds_h4(q_ambient: int) -> RadicalBound:
    """Bound for H(4, q) with base b = sqrt(q); the constant 2 when b = 2."""
    hp = _checked_power(SpaceKind.HERMITIAN, q_ambient)
    b = hp.p ** (hp.k // 2)
    if b == 2:
        return _bound(Theorem.BDS_H4, 2, 0, 1)
    R = 4 * b**5 - 4 * b**4 + 5 * b**2 - 2 * b + 1
    return _bound(Theorem.BDS_H4, -3 * b - 3, R, 2 * (b**2 - b - 2))


def _main_applicable(kind: SpaceKind, r: int, q: int) -> Optional[str]:
    if q <= 2:
        return "needs q > 2"
    if r < 3:
        return "needs r >= 3"
    if r >= 4:
        return None
    if kind == SpaceKind.ELLIPTIC:
        return "needs r >= 4 for elliptic quadrics"
    if (r, q, kind) == (3, 3, SpaceKind.SYMPLECTIC):
        return "excluded case (r, q, e) = (3, 3, 1)"
    return None


def bound_main(kind: SpaceKind, r: int, q: int) -> RadicalBound:
    hp = _checked_power(kind, q)
    reason = _main_applicable(kind, r, q)
    if reason:
        return _inapplicable(Theorem.MAIN, reason)
    e = kind.e
    lead = 1 / hp(r - e - 1)
    A = -r * (1 + 2 * lead + 1 / hp(r - 2))
    R = r**2 * (1 + lead) ** 2 + 4 * (q - 2) * (r - 1) * (
        hp(e + 1) * Fraction(q ** (r - 2) - 1, q - 1) + hp(e) + 1
    )
    return _bound(Theorem.MAIN, A, R, 2 * (q - 1))


def bound_asymptotic(kind: SpaceKind, r: int, q: int) -> RadicalBound:
    """Limit form of the main bound; informative only, never used as a proof."""
    hp = _checked_power(kind, q)
    reason = _main_applicable(kind, r, q)
    if reason:
        return _inapplicable(Theorem.ASYMPTOTIC, reason)
    R = r**2 + 4 * (r - 1) * (q - 2) * hp(r + kind.e - 2)
    return _bound(Theorem.ASYMPTOTIC, -r, R, 2 * (q - 1), rigorous=False)


def bound_q7(q: int) -> RadicalBound:
    """Bound for Q-(7, q), q > 2."""
    HalfPower.of_order(q)
    if q <= 2:
        return _inapplicable(Theorem.Q7, "needs q > 2")
    A = -3 * (3 + Fraction(1, q))
    R = 36 + 8 * (q - Fraction(7, 3)) * (q**3 + q**2 + 1)
    return _bound(Theorem.Q7, A, R, 2 * (q - 1))


def evaluate(kind: SpaceKind, r: int, q: int, theorem: Theorem) -> RadicalBound:
    """One theorem at (kind, r, q); inapplicable combinations come back with a reason."""
    if theorem == Theorem.BKLP:
        return bound_bklp(kind, r, q)
    if theorem == Theorem.SMALL:
        return bound_small_improv(kind, r, q)
    if theorem == Theorem.MAIN:
        return bound_main(kind, r, q)
    if theorem == Theorem.ASYMPTOTIC:
        return bound_asymptotic(kind, r, q)
    if theorem == Theorem.BDS_H4:
        if kind != SpaceKind.HERMITIAN or r != 2:
            return _inapplicable(theorem, "only for H(4, q)")
        return bound_bds_h4(q)
    if theorem == Theorem.Q7:
        if kind != SpaceKind.ELLIPTIC or r != 3:
            return _inapplicable(theorem, "only for Q-(7, q)")
        return bound_q7(q)
    raise MovoidException(f"unknown theorem '{theorem}'")


def best_bound(kind: SpaceKind, r: int, q: int, theorems: Optional[List[Theorem]] = None) -> BoundReport:
    """
    Evaluate the requested theorems (all by default) and keep the largest
    rigorous threshold; ties go to the theorem listed later in PRECEDENCE.
    """
    theorems = theorems or PRECEDENCE + [Theorem.ASYMPTOTIC]
    bounds = [evaluate(kind, r, q, t) for t in theorems]
    best = BestBound(threshold=0, theorem=Theorem.BKLP)
    ranked: Dict[Theorem, int] = {t: i for i, t in enumerate(PRECEDENCE)}
    for b in sorted((b for b in bounds if b.applicable and b.rigorous), key=lambda b: ranked[b.theorem]):
        if b.threshold >= best.threshold:
            best = BestBound(threshold=b.threshold, theorem=b.theorem)
    notes = []
    if kind == SpaceKind.SYMPLECTIC and r == 2:
        notes.append(f"W(3,q) has ovoids iff q is even; q = {q} is {'even' if q % 2 == 0 else 'odd'}")
    report = BoundReport(space=kind, r=r, q=q, e=kind.e, bounds=bounds, best=best,
                         excludes_one_ovoids=best.threshold >= 2, notes=notes)
    logger.debug("best_bound", space=kind.value, r=r, q=q, threshold=best.threshold, theorem=best.theorem.value)
    return report


def radicand_delta(kind: SpaceKind, r: int, q: int) -> Fraction:
    """Difference of the improved and original radicands; equals 4(q - 2)."""
    return bound_small_improv(kind, r, q).R - bound_bklp(kind, r, q).R
