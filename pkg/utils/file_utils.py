"""
File utility functions for doe-chan

基本檔案操作工具函數：目錄、文字、JSON 與 CSV 表格。
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import pandas as pd

# CSV 浮點數格式：點號小數、固定有效位數
CSV_FLOAT_FORMAT = "%.12g"


def ensure_dir(path: Union[str, Path]) -> Path:
    """
    確保目錄存在，若不存在則建立

    Args:
        path: 目錄路徑

    Returns:
        Path: 目錄路徑物件
    """
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def read_file(path: Union[str, Path], encoding: str = "utf-8") -> str:
    with open(path, "r", encoding=encoding) as f:
        return f.read()


def write_file(
    path: Union[str, Path],
    content: str,
    encoding: str = "utf-8",
    ensure_parent: bool = True
) -> Path:
    """
    寫入檔案內容

    Args:
        path: 檔案路徑
        content: 寫入內容
        encoding: 編碼
        ensure_parent: 是否確保父目錄存在

    Returns:
        Path: 檔案路徑物件
    """
    path = Path(path)
    if ensure_parent:
        ensure_dir(path.parent)
    with open(path, "w", encoding=encoding, newline="\n") as f:
        f.write(content)
    return path


def write_json(path: Union[str, Path], data: Any) -> Path:
    """以 indent=2 寫入 JSON"""
    return write_file(path, json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def read_json(path: Union[str, Path]) -> Any:
    return json.loads(read_file(path))


def write_csv(
    path: Union[str, Path],
    rows: Sequence[Dict[str, Any]],
    columns: Union[List[str], None] = None
) -> Path:
    """
    寫入 CSV 表格（固定欄位順序、點號小數）

    Args:
        path: 檔案路徑
        rows: 每列一個 dict
        columns: 欄位順序（預設為第一列的 key 順序）

    Returns:
        Path: 檔案路徑物件
    """
    frame = pd.DataFrame(list(rows), columns=columns)
    path = Path(path)
    ensure_dir(path.parent)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return path
