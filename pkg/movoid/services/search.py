"""Backtracking search for m-ovoids with per-generator counting propagation."""
import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import structlog

from movoid.core.exceptions import ConsistencyError, InfeasibleTargetError
from movoid.geometry.polar import PolarSpace
from movoid.models.enums import SearchStatus
from movoid.models.search import SearchOptions, SearchOutcome
from movoid.services.bounds import best_bound
from movoid.services.ovoid import WeightFunction, validate_m_ovoid

logger = structlog.get_logger(__name__)

# A root decision: (ambient point index, 1 for in O / 0 for out)
Decision = Tuple[int, int]


class _BudgetExceeded(Exception):
    pass


@dataclass
class SearchInstance:
    space: PolarSpace
    m: int
    options: SearchOptions = field(default_factory=SearchOptions)

    def __post_init__(self):
        space = self.space
        if not 0 <= self.m <= space.theta_gen or space.ovoid_size(self.m) > space.num_points:
            raise InfeasibleTargetError(space.name, self.m)
        self.gen_points: List[List[int]] = space.incidence.tolist()
        self.point_gens: List[List[int]] = [[] for _ in range(space.num_points)]
        for g, positions in enumerate(self.gen_points):
            for pos in positions:
                self.point_gens[pos].append(g)
        # fail-first static order: more incident generators first, then index
        self.order: List[int] = sorted(range(space.num_points), key=lambda p: (-len(self.point_gens[p]), p))
        self.rank: List[int] = [0] * space.num_points
        for i, p in enumerate(self.order):
            self.rank[p] = i

    def certificate(self) -> str:
        payload = {
            "space": self.space.name,
            "m": self.m,
            "generators": len(self.gen_points),
            "symmetry": self.options.symmetry,
            "seed": self.options.seed,
            "budget": self.options.budget,
        }
        return hashlib.md5(json.dumps(payload, sort_keys=True).encode()).hexdigest()


class _Searcher:
    """Depth-first search over in/out assignments of the polar points."""

    def __init__(self, inst: SearchInstance, budget: Optional[int] = None):
        self.inst = inst
        self.m = inst.m
        self.options = inst.options
        self.budget = budget if budget is not None else inst.options.budget
        n_points = inst.space.num_points
        self.value = [-1] * n_points
        self.inside = [0] * len(inst.gen_points)
        self.open = [len(g) for g in inst.gen_points]
        self.trail: List[int] = []
        self.nodes = 0
        self.solutions: List[List[int]] = []
        self.rng = random.Random(self.options.seed) if self.options.seed is not None else None

    # assignment and propagation

    def _assign(self, pos: int, val: int) -> bool:
        queue = [(pos, val)]
        m = self.m
        while queue:
            p, v = queue.pop()
            current = self.value[p]
            if current != -1:
                if current != v:
                    return False
                continue
            self.value[p] = v
            self.trail.append(p)
            gens = self.inst.point_gens[p]
            for g in gens:
                self.open[g] -= 1
                if v:
                    self.inside[g] += 1
            for g in gens:
                need = m - self.inside[g]
                left = self.open[g]
                if need < 0 or need > left:
                    return False
                if left and (need == 0 or need == left):
                    forced = 1 if need else 0
                    for t in self.inst.gen_points[g]:
                        if self.value[t] == -1:
                            queue.append((t, forced))
        return True

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            p = self.trail.pop()
            v = self.value[p]
            for g in self.inst.point_gens[p]:
                self.open[g] += 1
                if v:
                    self.inside[g] -= 1
            self.value[p] = -1

    def _branch_point(self) -> Optional[int]:
        best_g, best_open = -1, None
        for g, left in enumerate(self.open):
            if left and (best_open is None or left < best_open):
                best_g, best_open = g, left
                if left == 1:
                    break
        if best_g < 0:
            return None
        undecided = [p for p in self.inst.gen_points[best_g] if self.value[p] == -1]
        return min(undecided, key=lambda p: self.inst.rank[p])

    def _values(self) -> Tuple[int, int]:
        if self.rng is not None and self.rng.random() < 0.5:
            return (0, 1)
        return (1, 0)

    def _count_node(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded()
        if self.nodes % self.options.checkpoint_every == 0:
            logger.info("search_checkpoint", space=self.inst.space.name, m=self.m, nodes=self.nodes,
                        depth=len(self.trail), solutions=len(self.solutions))

    def _record(self) -> bool:
        space = self.inst.space
        points = sorted(int(space.points[p]) for p, v in enumerate(self.value) if v == 1)
        certificate = validate_m_ovoid(WeightFunction.from_points(space, points), self.m)
        if not certificate.valid:
            raise ConsistencyError("search produced an invalid m-ovoid",
                                   {"space": space.name, "m": self.m, "points": points})
        self.solutions.append(points)
        limit = self.options.max_solutions
        return bool(limit) and len(self.solutions) >= limit

    def _dfs(self) -> bool:
        """Returns True when the solution limit is reached."""
        p = self._branch_point()
        if p is None:
            return self._record()
        for v in self._values():
            self._count_node()
            mark = len(self.trail)
            if self._assign(p, v) and self._dfs():
                return True
            self._undo(mark)
        return False

    # entry points

    def root(self) -> bool:
        """Apply the symmetry fix; False when the root is already infeasible."""
        if self.options.symmetry and self.m >= 1:
            # polar points are held in lexicographic order, so position 0 is the smallest
            return self._assign(0, 1)
        return True

    def replay(self, prefix: Sequence[Decision]) -> bool:
        position = self.inst.space.position
        for point, v in prefix:
            if not self._assign(int(position[point]), v):
                return False
        return True

    def run(self, prefix: Sequence[Decision] = ()) -> SearchStatus:
        try:
            if self.root() and self.replay(prefix):
                self._dfs()
        except _BudgetExceeded:
            return SearchStatus.BUDGET_EXCEEDED
        return SearchStatus.SOLUTIONS_FOUND if self.solutions else SearchStatus.EXHAUSTED_NONE

    def frontier(self, width: int) -> List[List[Decision]]:
        """Disjoint root prefixes covering the whole tree, at least `width` of them when possible."""
        points = self.inst.space.points
        prefixes: List[List[Decision]] = [[]]
        if not self.root():
            return prefixes
        base = len(self.trail)
        while len(prefixes) < width:
            expanded: List[List[Decision]] = []
            grew = False
            for prefix in prefixes:
                self._undo(base)
                if not self.replay(prefix):
                    expanded.append(prefix)
                    continue
                p = self._branch_point()
                if p is None:
                    expanded.append(prefix)
                    continue
                grew = True
                expanded.extend(prefix + [(int(points[p]), v)] for v in (1, 0))
            prefixes = expanded
            if not grew:
                break
        self._undo(0)
        return prefixes


def merge_outcomes(parts: Iterable[Dict], max_solutions: int) -> Tuple[SearchStatus, List[List[int]], int]:
    """Combine subtree results: any solution wins, then a budget cut, else exhaustion."""
    statuses, solutions, nodes = set(), [], 0
    for part in parts:
        statuses.add(SearchStatus(part["status"]))
        solutions.extend(part["solutions"])
        nodes += part["nodes"]
    if max_solutions:
        solutions = solutions[:max_solutions]
    if solutions:
        return SearchStatus.SOLUTIONS_FOUND, solutions, nodes
    if SearchStatus.BUDGET_EXCEEDED in statuses:
        return SearchStatus.BUDGET_EXCEEDED, solutions, nodes
    return SearchStatus.EXHAUSTED_NONE, solutions, nodes


def search_prefixes(inst: SearchInstance, prefixes: Sequence[Sequence[Decision]]) -> Dict:
    """Search the subtrees under the given prefixes sequentially, sharing one node budget."""
    parts = []
    remaining = inst.options.budget
    for prefix in prefixes:
        searcher = _Searcher(inst, budget=remaining)
        status = searcher.run(prefix)
        parts.append({"status": status.value, "solutions": searcher.solutions, "nodes": searcher.nodes})
        remaining -= searcher.nodes
        if status == SearchStatus.BUDGET_EXCEEDED or remaining <= 0:
            break
        if inst.options.max_solutions and sum(len(p["solutions"]) for p in parts) >= inst.options.max_solutions:
            break
    status, solutions, nodes = merge_outcomes(parts, inst.options.max_solutions)
    return {"status": status.value, "solutions": solutions, "nodes": nodes}


def search_m_ovoids(inst: SearchInstance) -> SearchOutcome:
    """
    Exhaustive search for m-ovoids of the instance's space.

    Returns:
        SearchOutcome: SOLUTIONS_FOUND with validated point sets, EXHAUSTED_NONE
        after a complete traversal, or BUDGET_EXCEEDED
    """
    started = time.perf_counter()
    space = inst.space
    logger.info("search_started", space=space.name, m=inst.m, symmetry=inst.options.symmetry,
                workers=inst.options.workers)
    if inst.options.workers > 1:
        result = _search_parallel(inst)
    else:
        searcher = _Searcher(inst)
        status = searcher.run()
        result = {"status": status.value, "solutions": searcher.solutions, "nodes": searcher.nodes}
    outcome = SearchOutcome(
        status=SearchStatus(result["status"]),
        space=space.name,
        m=inst.m,
        solutions=result["solutions"],
        nodes=result["nodes"],
        seconds=round(time.perf_counter() - started, 3),
        certificate=inst.certificate(),
    )
    logger.info("search_finished", space=space.name, m=inst.m, status=outcome.status.value, nodes=outcome.nodes)
    return outcome


def _search_parallel(inst: SearchInstance) -> Dict:
    from movoid.tasks.search_tasks import search_subtree

    workers = inst.options.workers
    prefixes = _Searcher(inst).frontier(4 * workers)
    chunks = [chunk for chunk in (prefixes[i::workers] for i in range(workers)) if chunk]
    space = inst.space
    # the node budget is shared out so that all chunks together stay within it
    share, extra = divmod(inst.options.budget, len(chunks))
    pending = []
    for i, chunk in enumerate(chunks):
        budget = max(1, share + (1 if i < extra else 0))
        options = inst.options.model_copy(update={"workers": 1, "budget": budget}).model_dump()
        pending.append(search_subtree.apply_async(args=[space.kind.value, space.r, space.q, inst.m, options, chunk]))
    parts = [result.get() for result in pending]
    status, solutions, nodes = merge_outcomes(parts, inst.options.max_solutions)
    return {"status": status.value, "solutions": sorted(solutions), "nodes": nodes}


def nonexistence_sweep(space: PolarSpace, m_values: Iterable[int],
                       options: Optional[SearchOptions] = None) -> List[SearchOutcome]:
    """
    Search every m in m_values and cross-check against the best proven bound.

    Raises:
        ConsistencyError: If a non-trivial m-ovoid turns up below the proven bound
    """
    options = options or SearchOptions()
    bound = best_bound(space.kind, space.r, space.q)
    outcomes = []
    for m in m_values:
        outcome = search_m_ovoids(SearchInstance(space, m, options))
        trivial = m in (0, space.theta_gen)
        excluded = not trivial and (m < bound.best.threshold or space.theta_gen - m < bound.best.threshold)
        if excluded and outcome.status == SearchStatus.SOLUTIONS_FOUND:
            raise ConsistencyError(
                f"found a {m}-ovoid of {space.name} below the proven bound {bound.best.threshold}",
                {"space": space.name, "m": m, "bound": bound.best.model_dump(mode="json"),
                 "solution": outcome.solutions[0]},
            )
        outcomes.append(outcome)
    return outcomes
