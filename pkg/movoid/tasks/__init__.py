# Package initialization

# Register the task modules with the Celery app
from movoid.tasks.search_tasks import search_subtree

__all__ = ['search_subtree']
