from typing import Any, Dict, List

import structlog

from movoid.core.celery_app import celery_app
from movoid.geometry.polar import polar_space
from movoid.models.search import SearchOptions

# Use only structlog for logging
logger = structlog.get_logger(__name__)


@celery_app.task(name="search_subtree", bind=True)
def search_subtree(
    self,
    kind: str,
    r: int,
    q: int,
    m: int,
    options: Dict[str, Any],
    prefixes: List[List[List[int]]],
):
    """Search the subtrees below a chunk of root prefixes for one instance."""
    from movoid.services.search import SearchInstance, search_prefixes

    logger.info("search_subtree_started", task_id=self.request.id, space=kind, r=r, q=q, m=m,
                prefixes=len(prefixes))
    space = polar_space(kind, r, q)
    inst = SearchInstance(space, m, SearchOptions(**options))
    # json turns decision tuples into lists
    decisions = [[(int(point), int(value)) for point, value in prefix] for prefix in prefixes]
    result = search_prefixes(inst, decisions)
    logger.info("search_subtree_finished", task_id=self.request.id, status=result["status"], nodes=result["nodes"])
    return result
