import random
from fractions import Fraction

import pytest

from movoid.core.exceptions import GeometryError
from movoid.geometry.projgeom import span
from movoid.models.enums import IdentityId, SpaceKind
from movoid.services.identities import (
    aid2_bound,
    check_aid1,
    check_aid2,
    check_aid2_equality,
    check_counting_identity,
    check_le1,
    check_main_inequality,
    check_point_sums,
    check_small_quadratic,
    check_weighted,
    main_inequality_value,
    random_subspace,
    run_identity_suite,
)
from movoid.services.ovoid import WeightFunction, complement, scale


def _in_ovoid(w):
    return int(w.support()[0])


def _outside_ovoid(w):
    space = w.space
    return int(next(p for p in space.points if not w.weights[p]))


def test_le1_on_hemisystem(hemisystem):
    rng = random.Random(1)
    for j in range(hemisystem.space.n):
        for _ in range(5):
            report = check_le1(hemisystem, 2, random_subspace(hemisystem.space, j, rng))
            assert report.passed
            assert report.residual == 0


def test_le1_rejects_the_whole_space(w32_ovoid, w32):
    with pytest.raises(GeometryError):
        check_le1(w32_ovoid, 1, w32.ambient.whole())


def test_counting_identity_at_points(hemisystem, q53):
    for p in (_in_ovoid(hemisystem), _outside_ovoid(hemisystem)):
        report = check_counting_identity(hemisystem, 2, q53.ambient.point(p))
        assert report.hypothesis_ok
        assert report.residual == 0


def test_counting_identity_at_a_generator(hemisystem, q53):
    report = check_counting_identity(hemisystem, 2, q53.generators[0])
    # pi^perp ∩ P = pi for a generator, so the hypothesis cannot hold
    assert not report.hypothesis_ok
    assert report.residual == 0
    assert report.lhs == 216


def test_counting_identity_on_w32_ovoid(w32_ovoid, w32):
    report = check_counting_identity(w32_ovoid, 1, w32.ambient.point(_in_ovoid(w32_ovoid)))
    assert report.residual == 0


def test_counting_identity_is_linear(hemisystem, q53):
    doubled = scale(hemisystem, 2)
    for g in q53.generators[:3]:
        assert check_counting_identity(doubled, 4, g).residual == 0


def test_counting_identity_needs_isotropic_subspace(hemisystem, q53):
    outside = q53.ambient.point(int(next(i for i in range(q53.ambient.num_points) if not q53.point_mask[i])))
    with pytest.raises(GeometryError):
        check_counting_identity(hemisystem, 2, outside)


def test_point_sums_on_hemisystem(hemisystem):
    reports = check_point_sums(hemisystem, 2, _in_ovoid(hemisystem))
    a, b = reports
    assert a.identity == IdentityId.POINT_SUMS_A
    assert a.lhs == a.rhs == 10
    assert b.identity == IdentityId.POINT_SUMS_B
    assert b.passed


def test_point_sums_outside_the_ovoid(hemisystem):
    (a,) = check_point_sums(hemisystem, 2, _outside_ovoid(hemisystem))
    assert a.lhs == a.rhs == 20


def test_point_sums_on_hermitian_full_set(h44):
    full = WeightFunction.full(h44)
    reports = check_point_sums(full, 5, int(h44.points[0]))
    c = reports[-1]
    assert c.identity == IdentityId.POINT_SUMS_C
    assert (c.lhs, c.rhs) == (564, 436)
    assert c.passed
    assert all(r.passed for r in reports)


def test_aid1_and_aid2_on_w52_full_set(w52):
    full = WeightFunction.full(w52)
    pts = w52.ambient.points_in(w52.generators[0])
    pi = span([w52.ambient.point(int(pts[0])), w52.ambient.point(int(pts[1]))])
    assert check_aid1(full, 7, pi).residual == 0
    assert check_aid2_equality(full, 7, pi).residual == 0
    assert check_aid2(full, 7, pi).passed


def test_aid2_on_hemisystem(hemisystem, q53):
    for p in (_in_ovoid(hemisystem), _outside_ovoid(hemisystem)):
        pi = q53.ambient.point(p)
        assert check_aid2_equality(hemisystem, 2, pi).residual == 0
        report = check_aid2(hemisystem, 2, pi)
        assert report.passed
        assert report.notes[0].startswith("printed bound")


def test_aid2_bound_is_printed_value_minus_overcount(q53):
    # m = 2, mu(pi) = 1, q^e = 9, q^{r-1} = 3
    printed = 2 * 10 * (2 - 1) + 2 * (2 * 9 * (3 - 1) + 1 * 10)
    assert printed == 112
    assert aid2_bound(q53, 2, 1) == printed - 1 * 2


def test_main_inequality_on_hemisystem(hemisystem, q53):
    report = check_main_inequality(hemisystem, 2, q53.ambient.point(_in_ovoid(hemisystem)))
    assert report.hypothesis_ok
    assert report.lhs == 0
    assert report.passed
    assert "printed expression -2" in report.notes


@pytest.mark.parametrize("fixture,m,mu_pi,expected", [
    ("w52", 7, 3, 144),
    ("q72", 7, 3, 48),
    ("q53", 4, 1, 0),
    ("h44", 5, 1, 128),
])
def test_main_inequality_value_on_full_sets(fixture, m, mu_pi, expected, request):
    space = request.getfixturevalue(fixture)
    assert main_inequality_value(space, m, mu_pi) == expected


def test_small_quadratic():
    assert not check_small_quadratic(SpaceKind.ELLIPTIC, 2, 3, 1).passed
    report = check_small_quadratic(SpaceKind.ELLIPTIC, 2, 3, 2)
    assert report.passed
    assert report.residual == 0


def test_weighted_point_equation(hemisystem):
    for p in hemisystem.space.points[:30]:
        assert check_weighted(hemisystem, 2, int(p)).residual == 0


def test_identities_are_skipped_above_the_cap(mocker, hemisystem, q53):
    mocker.patch("movoid.services.identities.settings.IDENTITY_THETA_CAP", 10)
    report = check_counting_identity(hemisystem, 2, q53.generators[0])
    assert report.skipped == "skipped: scale"
    assert report.residual is None


def test_checks_are_skipped_before_any_perp_block_above_the_cell_cap(mocker, hemisystem, q53):
    mocker.patch("movoid.services.identities.settings.IDENTITY_CELL_CAP", 10)
    block = mocker.patch.object(type(q53), "perp_block")
    p0 = int(q53.points[0])
    pi = q53.ambient.point(p0)
    for check in (check_aid1, check_aid2_equality, check_aid2, check_main_inequality,
                  check_counting_identity, check_le1):
        assert check(hemisystem, 2, pi).skipped == "skipped: scale"
    assert [r.skipped for r in check_point_sums(hemisystem, 2, p0)] == ["skipped: scale"]
    block.assert_not_called()


def test_identity_suite_on_hemisystem(hemisystem):
    reports = run_identity_suite(hemisystem, 2, samples=10)
    assert {r.identity for r in reports} >= {
        IdentityId.LE1, IdentityId.COUNTING, IdentityId.POINT_SUMS_A, IdentityId.AID2, IdentityId.EQNEW,
    }
    assert all(r.passed or not r.hypothesis_ok for r in reports)


def _failures(reports):
    return [r for r in reports if not r.passed and r.hypothesis_ok and not r.skipped]


def test_identity_suite_on_w32_ovoid(w32_ovoid):
    reports = run_identity_suite(w32_ovoid, 1, samples=10)
    assert reports
    assert _failures(reports) == []


@pytest.mark.parametrize("fixture", ["w32", "w52", "q52", "q53", "h44"])
def test_identity_suite_on_full_point_set(fixture, request):
    space = request.getfixturevalue(fixture)
    reports = run_identity_suite(WeightFunction.full(space), space.theta_gen, samples=5, seed=3)
    assert {r.identity for r in reports} >= {IdentityId.LE1, IdentityId.COUNTING, IdentityId.POINT_SUMS_A}
    assert _failures(reports) == []


def test_identity_suite_on_complement(hemisystem):
    reports = run_identity_suite(complement(hemisystem), 2, identities=["le1", "counting"], samples=5)
    assert all(r.residual == 0 for r in reports)


def test_report_serialization(hemisystem, q53):
    report = check_counting_identity(hemisystem, 2, q53.generators[0])
    data = report.model_dump(mode="json", by_alias=True)
    assert data["id"] == "counting"
    assert data["pass"] is True
    assert data["residual"] == "0"
    assert Fraction(data["lhs"]) == 216
