"""
Progress tracking for verification suite runs.
"""

from datetime import datetime
from typing import Dict, List, Optional, Tuple

from ..utils.logger import get_logger

logger = get_logger("progress_tracker")


class ProgressTracker:
    """Tracks completed and failed tasks of one suite run; logging only, never part of a report."""

    def __init__(self):
        self.logger = logger
        self.suite: Optional[str] = None
        self.total_tasks = 0
        self.start_time: Optional[datetime] = None
        self.history: List[Tuple[datetime, str, int]] = []  # (timestamp, task, failed checks)

    def start_tracking(self, suite: str, total_tasks: int):
        """Start tracking a suite run."""
        self.suite = suite
        self.total_tasks = total_tasks
        self.start_time = datetime.now()
        self.history.clear()
        self.logger.info(f"Started suite '{suite}' with {total_tasks} tasks")

    def record_task(self, task: str, failed_checks: int = 0):
        """Record a finished task and how many of its checks failed."""
        if self.suite is None:
            return
        self.history.append((datetime.now(), task, failed_checks))
        self.logger.debug(f"Finished {task} ({len(self.history)}/{self.total_tasks}, "
                          f"{failed_checks} failed checks)")

    def stop_tracking(self):
        """Stop tracking and log a summary."""
        if self.start_time:
            stats = self.get_progress_stats()
            self.logger.info(f"Finished suite '{self.suite}': {stats['completed_tasks']} tasks, "
                             f"{stats['failed_checks']} failed checks in {stats['time_elapsed']}")
        self.suite = None
        self.start_time = None

    def get_progress_stats(self) -> Dict:
        """Get current progress statistics."""
        if self.suite is None:
            return {}
        completed = len(self.history)
        return {
            'suite': self.suite,
            'total_tasks': self.total_tasks,
            'completed_tasks': completed,
            'completion_percentage': (completed / self.total_tasks * 100) if self.total_tasks > 0 else 0,
            'failed_checks': sum(entry[2] for entry in self.history),
            'time_elapsed': self._get_time_elapsed(),
        }

    def _get_time_elapsed(self) -> str:
        """Get formatted time elapsed since tracking started."""
        if not self.start_time:
            return "00:00:00"

        elapsed = datetime.now() - self.start_time
        hours, remainder = divmod(int(elapsed.total_seconds()), 3600)
        minutes, seconds = divmod(remainder, 60)
        return f"{hours:02d}:{minutes:02d}:{seconds:02d}"
