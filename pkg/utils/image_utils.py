"""
Image utility functions for doe-chan

將數值表格輸出為灰階 PNG 預覽（黑色 = 最小值）。
"""
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
from PIL import Image


def normalize_gray(values: np.ndarray) -> np.ndarray:
    """
    線性映射到 0..255 的灰階

    最小值為 0（黑色），最大值為 255；非有限值（+inf）視為白色。
    """
    values = np.asarray(values, dtype=float)
    finite = np.isfinite(values)
    gray = np.full(values.shape, 255, dtype=np.uint8)
    if not finite.any():
        return gray
    low, high = values[finite].min(), values[finite].max()
    span = high - low
    scaled = np.zeros(values.shape) if span == 0 else (values - low) / span
    gray[finite] = np.round(scaled[finite] * 255).astype(np.uint8)
    return gray


def table_to_png(
    table: np.ndarray,
    output_path: Union[str, Path],
    cell_size: int = 12,
    max_size: Optional[Tuple[int, int]] = None
) -> Path:
    """
    將 2-D 表格存為灰階 PNG

    Args:
        table: row = y, col = x 的數值表格
        output_path: 輸出路徑
        cell_size: 每格的像素大小
        max_size: 最大尺寸 (width, height)（可選）

    Returns:
        Path: 輸出圖片路徑
    """
    # row 0 是 y = 0，圖片座標 y 軸向下，需上下翻轉
    gray = np.flipud(normalize_gray(table))
    img = Image.fromarray(gray)
    img = img.resize((gray.shape[1] * cell_size, gray.shape[0] * cell_size), Image.Resampling.NEAREST)
    if max_size:
        img.thumbnail(max_size, Image.Resampling.NEAREST)

    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    img.save(output_path)
    return output_path
