import pytest

from movoid.core.exceptions import ConsistencyError, InfeasibleTargetError
from movoid.models.enums import SearchStatus
from movoid.models.search import SearchOptions
from movoid.services.ovoid import WeightFunction, complement, perp_profile, validate_m_ovoid
from movoid.services.search import (
    SearchInstance,
    merge_outcomes,
    nonexistence_sweep,
    search_m_ovoids,
)
from movoid.tasks.search_tasks import search_subtree


def _search(space, m, **options):
    return search_m_ovoids(SearchInstance(space, m, SearchOptions(**options)))


def test_w32_ovoids(w32):
    outcome = _search(w32, 1, max_solutions=0)
    assert outcome.status == SearchStatus.SOLUTIONS_FOUND
    assert outcome.solutions
    for solution in outcome.solutions:
        assert len(solution) == 5
        w = WeightFunction.from_points(w32, solution)
        assert validate_m_ovoid(w, 1).valid
        assert perp_profile(w, 1).holds
        assert validate_m_ovoid(complement(w), 2).valid


def test_w33_has_no_ovoid(w33):
    with_symmetry = _search(w33, 1)
    without = _search(w33, 1, symmetry=False)
    assert with_symmetry.status == SearchStatus.EXHAUSTED_NONE
    assert without.status == SearchStatus.EXHAUSTED_NONE


@pytest.mark.parametrize("m", [1, 2])
def test_q52_has_no_m_ovoids(q52, m):
    assert _search(q52, m).status == SearchStatus.EXHAUSTED_NONE


def test_q53_hemisystem_search(hemisystem):
    assert hemisystem.total == 56


def test_trivial_targets(w32):
    empty = _search(w32, 0)
    assert empty.status == SearchStatus.SOLUTIONS_FOUND
    assert empty.solutions == [[]]
    full = _search(w32, w32.theta_gen)
    assert full.solutions == [w32.points.tolist()]


def test_infeasible_target(w32):
    with pytest.raises(InfeasibleTargetError):
        SearchInstance(w32, w32.theta_gen + 1)
    with pytest.raises(InfeasibleTargetError):
        SearchInstance(w32, -1)


def test_budget_is_reported_honestly(w33):
    outcome = _search(w33, 1, budget=3, symmetry=False)
    assert outcome.status == SearchStatus.BUDGET_EXCEEDED
    assert outcome.nodes <= 4


def test_determinism(w32):
    a = _search(w32, 1, max_solutions=0, seed=5)
    b = _search(w32, 1, max_solutions=0, seed=5)
    assert a.solutions == b.solutions
    assert a.nodes == b.nodes
    assert a.certificate == b.certificate


def test_seed_permutes_order_not_the_solution_set(w32):
    plain = _search(w32, 1, max_solutions=0, symmetry=False)
    seeded = _search(w32, 1, max_solutions=0, symmetry=False, seed=11)
    assert sorted(plain.solutions) == sorted(seeded.solutions)


def test_checkpoints_are_logged(w33, mocker):
    logger = mocker.patch("movoid.services.search.logger")
    _search(w33, 1, checkpoint_every=1)
    events = [c.args[0] for c in logger.info.call_args_list]
    assert "search_checkpoint" in events
    assert events[-1] == "search_finished"


def test_parallel_search_matches_sequential(w33, w32):
    # celery runs tasks eagerly in-process by default
    assert _search(w33, 1, workers=3).status == SearchStatus.EXHAUSTED_NONE
    sequential = _search(w32, 1, max_solutions=0, symmetry=False)
    parallel = _search(w32, 1, max_solutions=0, symmetry=False, workers=2)
    assert parallel.solutions == sorted(sequential.solutions)


def test_parallel_search_shares_one_node_budget(w33, mocker):
    spy = mocker.spy(search_subtree, "apply_async")
    _search(w33, 1, symmetry=False, workers=3, budget=10)
    budgets = [call.kwargs["args"][4]["budget"] for call in spy.call_args_list]
    assert len(budgets) == 3
    assert sum(budgets) == 10
    assert max(budgets) - min(budgets) <= 1


def test_symmetry_fix_pins_the_smallest_polar_point(w32):
    smallest = int(w32.points[0])
    fixed = _search(w32, 1, max_solutions=0)
    free = _search(w32, 1, max_solutions=0, symmetry=False)
    assert fixed.solutions
    assert all(smallest in solution for solution in fixed.solutions)
    assert sorted(fixed.solutions) == sorted(s for s in free.solutions if smallest in s)


def test_merge_outcomes_precedence():
    found = {"status": "SOLUTIONS_FOUND", "solutions": [[1, 2]], "nodes": 3}
    cut = {"status": "BUDGET_EXCEEDED", "solutions": [], "nodes": 10}
    none = {"status": "EXHAUSTED_NONE", "solutions": [], "nodes": 4}
    assert merge_outcomes([none, cut], 1)[0] == SearchStatus.BUDGET_EXCEEDED
    assert merge_outcomes([cut, found, none], 1) == (SearchStatus.SOLUTIONS_FOUND, [[1, 2]], 17)
    assert merge_outcomes([none, none], 0)[0] == SearchStatus.EXHAUSTED_NONE


def test_sweep_q52(q52):
    outcomes = nonexistence_sweep(q52, [1, 2])
    assert [o.status for o in outcomes] == [SearchStatus.EXHAUSTED_NONE] * 2


def test_sweep_w32(w32):
    outcomes = nonexistence_sweep(w32, [1, 2])
    assert [o.status for o in outcomes] == [SearchStatus.SOLUTIONS_FOUND] * 2


def test_sweep_q53_excludes_one_ovoids(q53):
    (outcome,) = nonexistence_sweep(q53, [1])
    assert outcome.status == SearchStatus.EXHAUSTED_NONE


def test_sweep_flags_solutions_below_the_bound(w32, mocker):
    report = mocker.MagicMock()
    report.best.threshold = 3
    report.best.model_dump.return_value = {"threshold": 3, "theorem": "small"}
    mocker.patch("movoid.services.search.best_bound", return_value=report)
    with pytest.raises(ConsistencyError) as excinfo:
        nonexistence_sweep(w32, [1])
    assert excinfo.value.payload["m"] == 1
    assert len(excinfo.value.payload["solution"]) == 5


def test_search_subtree_task(w32):
    options = SearchOptions(max_solutions=0, symmetry=False).model_dump()
    result = search_subtree.apply(args=["W", 2, 2, 1, options, [[]]]).get()
    assert result["status"] == "SOLUTIONS_FOUND"
    assert sorted(result["solutions"]) == sorted(_search(w32, 1, max_solutions=0, symmetry=False).solutions)
