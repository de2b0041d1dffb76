"""
Worker pool - replicate 任務分派

workers > 1 時以 ProcessPoolExecutor 平行執行，否則依序執行。
每個任務自帶 RngSeed，結果依提交順序回傳，
平行與依序執行產生相同的結果。
"""
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

from utils.logger import Operation
from utils.progress import TaskProgress


TaskId = Tuple[Any, ...]


@dataclass(frozen=True)
class Task:
    """
    單一任務

    Attributes:
        task_id: 可排序的識別碼，例如 ("10x10", "lh", "AE", 3)
        fn: 模組層級函式（需可 pickle）
        kwargs: 呼叫參數
    """
    task_id: TaskId
    fn: Callable[..., Any]
    kwargs: Dict[str, Any] = field(default_factory=dict)

    def run(self) -> Any:
        return self.fn(**self.kwargs)


def _run_task(task: Task) -> Tuple[TaskId, Any]:
    return task.task_id, task.run()


def run_tasks(
    tasks: List[Task],
    workers: int = 1,
    title: str = "tasks",
    op: Operation = Operation.ANNEAL
) -> List[Tuple[TaskId, Any]]:
    """
    執行所有任務

    Args:
        tasks: 任務列表（task_id 不可重複）
        workers: 平行 process 數
        title: 進度列標題
        op: 進度列操作標籤

    Returns:
        List[(task_id, result)]: 依任務提交順序排列，與完成順序無關

    Raises:
        ValueError: task_id 重複
        Exception: 任務中拋出的第一個例外
    """
    ids = [task.task_id for task in tasks]
    if len(set(ids)) != len(ids):
        raise ValueError("Duplicate task ids")

    progress = TaskProgress(title, total=len(tasks), op=op)
    results: Dict[TaskId, Any] = {}

    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            results[task.task_id] = task.run()
            progress.advance(label=_label(task.task_id))
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_run_task, task) for task in tasks]
            for future in as_completed(futures):
                task_id, result = future.result()
                results[task_id] = result
                progress.advance(label=_label(task_id))

    progress.finish()
    return [(task_id, results[task_id]) for task_id in ids]


def _label(task_id: TaskId) -> str:
    return "/".join(str(part) for part in task_id)

