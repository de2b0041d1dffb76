"""
Progress - replicate 進度條

以 PROGRESS 等級輸出，由 ConsoleHandler 覆寫同一行顯示：
    🔥 tournament [████████████░░░░░░░░] 60% (96/160) 12.3s
"""
import threading
from datetime import datetime
from typing import Optional

from .logger import Operation, get_logger

PROGRESS_BAR_WIDTH = 20


def render_progress_bar(current: int, total: int, width: int = PROGRESS_BAR_WIDTH) -> str:
    """渲染進度條"""
    if total <= 0:
        return f"({current}/{total})"
    percent = min(current / total, 1.0)
    filled = int(percent * width)
    bar = "█" * filled + "░" * (width - filled)
    return f"[{bar}] {percent * 100:.0f}% ({current}/{total})"


class TaskProgress:
    """
    任務計數進度

    用法:
        progress = TaskProgress("tournament", total=160)
        for ...:
            progress.advance()
        progress.finish()
    """

    def __init__(self, title: str, total: int, op: Operation = Operation.ANNEAL):
        self.title = title
        self.total = total
        self.op = op
        self.completed = 0
        self.start_time = datetime.now()
        self._lock = threading.Lock()

    @property
    def elapsed(self) -> float:
        return (datetime.now() - self.start_time).total_seconds()

    def advance(self, step: int = 1, label: Optional[str] = None):
        """完成 step 個任務並更新顯示"""
        with self._lock:
            self.completed += step
            line = f"{self.title} {render_progress_bar(self.completed, self.total)} {self.elapsed:.1f}s"
            if label:
                line += f" {label}"
        get_logger().progress(line, self.op)

    def finish(self):
        """結束進度行並記錄總耗時"""
        logger = get_logger()
        logger.finish_progress()
        logger.info(f"{self.title}: {self.completed}/{self.total} tasks in {self.elapsed:.1f}s")
