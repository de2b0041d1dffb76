"""
Utility modules for doe-chan
"""
from .file_utils import (
    ensure_dir, read_file, write_file, write_json, read_json, write_csv
)
from .image_utils import normalize_gray, table_to_png
from .logger import (
    DoeLogger, setup_logger, get_logger,
    progress, warning, finish_progress,
    Operation
)
from .progress import TaskProgress, render_progress_bar

__all__ = [
    # file_utils
    "ensure_dir",
    "read_file",
    "write_file",
    "write_json",
    "read_json",
    "write_csv",
    # image_utils
    "normalize_gray",
    "table_to_png",
    # logger
    "DoeLogger",
    "setup_logger",
    "get_logger",
    "progress",
    "warning",
    "finish_progress",
    "Operation",
    # progress
    "TaskProgress",
    "render_progress_bar",
]
