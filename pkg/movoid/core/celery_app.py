from celery import Celery
import structlog

from movoid.core.config import settings

logger = structlog.get_logger(__name__)

# Initialize Celery
celery_app = Celery(
    "movoid_tasks",
    broker=settings.CELERY_BROKER_URL,
    backend=settings.CELERY_RESULT_BACKEND,
    include=["movoid.tasks.search_tasks"],
)

# Configure Celery
celery_app.conf.update(
    task_serializer="json",
    accept_content=["json"],
    result_serializer="json",
    timezone="UTC",
    enable_utc=True,
    task_routes={
        "search_subtree": {"queue": "search"},
    },
    task_default_queue="search",
    task_acks_late=True,  # Only acknowledge subtrees after they finish
    worker_concurrency=settings.CELERY_WORKER_CONCURRENCY,
    task_always_eager=settings.CELERY_TASK_ALWAYS_EAGER,
    task_eager_propagates=True,
    result_expires=86400,
    worker_hijack_root_logger=False,
)
