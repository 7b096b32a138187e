import itertools
from fractions import Fraction

import numpy as np
import pytest

from movoid.core.exceptions import CapExceededError, FieldError, FormNotFoundError, GeometryError
from movoid.geometry.gf import build_field
from movoid.geometry.polar import (
    HalfPower,
    PolarSpace,
    generator_count_formula,
    polar_point_count,
    polar_space,
)
from movoid.geometry.projgeom import subspace
from movoid.models.enums import SpaceKind
from movoid.providers.elliptic import anisotropic_pair
from movoid.providers.registry import FormRegistry

DESK_SPACES = [
    # kind, r, q, n, points, generators
    ("W", 2, 2, 3, 15, 15),
    ("W", 2, 3, 3, 40, 40),
    ("W", 3, 2, 5, 63, 135),
    ("Q-", 2, 2, 5, 27, 45),
    ("Q-", 2, 3, 5, 112, 280),
    ("Q-", 3, 2, 7, 119, 765),
    ("H", 2, 4, 4, 165, 297),
]


@pytest.mark.parametrize("kind,r,q,n,points,generators", DESK_SPACES)
def test_counts_match_formulas(kind, r, q, n, points, generators):
    space = polar_space(kind, r, q)
    assert space.n == n
    assert space.num_points == points == polar_point_count(space.kind, r, q)
    assert len(space.enumerate_generators()) == generators == generator_count_formula(space.kind, r, q)
    assert space.incidence.shape == (generators, space.theta_gen)


@pytest.mark.parametrize("kind,r,q,n,points,generators", DESK_SPACES)
def test_generators_are_maximal_totally_isotropic(kind, r, q, n, points, generators):
    space = polar_space(kind, r, q)
    for g in space.generators[:25]:
        assert g.dim == r - 1
        assert space.is_totally_isotropic(g)
        assert (space.perp_points(g) == space.ambient.points_in(g)).all()
    assert len({g.key for g in space.generators}) == generators


@pytest.mark.parametrize("kind,r,q", [("W", 2, 3), ("Q-", 2, 3), ("H", 2, 4)])
def test_each_point_lies_on_the_same_number_of_generators(kind, r, q):
    space = polar_space(kind, r, q)
    degree = np.bincount(space.incidence.ravel(), minlength=space.num_points)
    assert len(set(degree.tolist())) == 1


def test_symplectic_form_is_alternating(w32):
    coords = w32.ambient.coords.tolist()
    for u in coords:
        assert w32.form_value(u, u) == 0
    for u, v in itertools.islice(itertools.product(coords, repeat=2), 200):
        assert w32.form_value(u, v) == w32.field.neg(w32.form_value(v, u))


def test_symplectic_form_rejects_quadratic_evaluation(w32):
    with pytest.raises(GeometryError):
        w32.form_value([1, 0, 0, 0])
    with pytest.raises(GeometryError):
        w32.form_value([1, 0, 0], [1, 0, 0])


def test_elliptic_points_are_quadric_zeros(q53):
    for index in q53.points[:40]:
        assert q53.form_value(q53.ambient.coords[index].tolist()) == 0


def test_hermitian_form_is_hermitian(h44):
    f = h44.field
    coords = h44.ambient.coords.tolist()
    for u, v in itertools.islice(itertools.product(coords, repeat=2), 300):
        assert h44.form_value(u, v) == f.conjugate(h44.form_value(v, u))


def test_hermitian_needs_square_order():
    with pytest.raises(FieldError):
        polar_space("H", 2, 8)


def test_anisotropic_pairs():
    assert anisotropic_pair(build_field(3)) == (0, 1)
    assert anisotropic_pair(build_field(2)) == (1, 1)


def test_perp_of_a_point_is_a_hyperplane(q53):
    p = q53.ambient.point(int(q53.points[0]))
    assert q53.perp(p).dim == q53.n - 1
    assert p.contains(p) and q53.perp(p).contains(p)


def test_perp_weight_matches_perp_subspaces(mocker, q53):
    positions = np.arange(0, q53.num_points, 3)
    weights = np.arange(len(positions)) % 4
    whole = q53.perp_weight(positions, weights)
    mocker.patch("movoid.geometry.polar.settings.PERP_BLOCK_CELLS", 1)
    assert np.array_equal(q53.perp_weight(positions, weights), whole)
    chosen = dict(zip(q53.points[positions].tolist(), weights.tolist()))
    for s in range(0, q53.ambient.num_points, 37):
        in_perp = q53.ambient.points_in(q53.perp(q53.ambient.point(s))).tolist()
        assert whole[s] == sum(chosen.get(p, 0) for p in in_perp)


def test_collinearity_is_symmetric_with_true_diagonal(q53):
    assert q53.collinear.shape == (q53.num_points, q53.num_points)
    assert (q53.collinear == q53.collinear.T).all()
    assert q53.collinear.diagonal().all()


def test_is_totally_isotropic(w32):
    # (e0, e1) is a hyperbolic pair for the symplectic form, (e0, e2) is isotropic
    f = w32.field
    assert not w32.is_totally_isotropic(subspace(f, 3, [[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert w32.is_totally_isotropic(subspace(f, 3, [[1, 0, 0, 0], [0, 0, 1, 0]]))


def test_subspace_from_another_ambient_is_rejected(w32):
    with pytest.raises(GeometryError):
        w32.perp(subspace(build_field(3), 3, [[1, 0, 0, 0]]))


def test_half_power():
    hp = HalfPower.of_order(9)
    assert hp(Fraction(5, 2)) == 243
    assert hp(-1) == Fraction(1, 9)
    assert HalfPower.of_order(4).integer(Fraction(5, 2)) == 32
    with pytest.raises(FieldError):
        HalfPower.of_order(8).integer(Fraction(1, 2))


def test_ovoid_size_and_theta_gen(q53, h44):
    assert q53.theta_gen == 4
    assert q53.ovoid_size(2) == 56
    assert h44.ovoid_size(1) == 33


def test_registry_lists_all_kinds():
    assert set(FormRegistry.list_forms()) == set(SpaceKind)


def test_registry_rejects_unknown_kind(mocker):
    mocker.patch.object(FormRegistry, "_forms", {})
    with pytest.raises(FormNotFoundError):
        FormRegistry.get_form(SpaceKind.SYMPLECTIC, build_field(2), 2)


def test_point_cap(mocker):
    mocker.patch("movoid.geometry.polar.settings.POLAR_POINT_CAP", 10)
    space = PolarSpace(SpaceKind.SYMPLECTIC, 2, build_field(2))
    with pytest.raises(CapExceededError):
        space.points


def test_generator_cap(mocker):
    mocker.patch("movoid.geometry.polar.settings.GENERATOR_CAP", 100)
    space = PolarSpace(SpaceKind.ELLIPTIC, 2, build_field(3))
    with pytest.raises(CapExceededError):
        space.generators


def test_iter_generators_splits_by_first_point(w32):
    first = w32.points[:3].tolist()
    part = list(w32.iter_generators(first_points=first))
    rest = list(w32.iter_generators(first_points=w32.points[3:].tolist()))
    assert len(part) + len(rest) == 15
    assert all(int(w32.ambient.points_in(g)[0]) in first for g in part)
