"""
Render - CSV / JSON / SVG / PNG 輸出

所有 SVG 以 matplotlib Agg 後端產生，固定 svg.hashsalt 並移除 Date metadata，
相同輸入重跑會得到逐位元相同的檔案。
"""
import platform
from dataclasses import dataclass
from math import ceil
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
import scipy  # noqa: E402

from models import Design, DomainSpec  # noqa: E402
from utils.file_utils import ensure_dir, write_csv, write_json  # noqa: E402
from utils.image_utils import table_to_png  # noqa: E402
from utils.logger import get_logger  # noqa: E402

SVG_HASH_SALT = "doe-chan"
PANEL_SIZE = (3.2, 2.6)
MAX_COLUMNS = 4

plt.rcParams.update({
    "svg.hashsalt": SVG_HASH_SALT,
    "font.size": 8,
    "axes.titlesize": 9,
    "figure.max_open_warning": 0,
})


@dataclass
class RenderResult:
    """渲染結果"""
    success: bool
    path: Optional[str] = None
    count: int = 0
    error: Optional[str] = None


Panel = Tuple[str, List[str], List[Sequence[float]]]


def _save_svg(fig, path: Path) -> RenderResult:
    """儲存並關閉 figure"""
    try:
        ensure_dir(path.parent)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        return RenderResult(success=True, path=str(path))
    except OSError as e:
        get_logger().error(f"Failed to write {path}: {e}")
        return RenderResult(success=False, path=str(path), error=str(e))
    finally:
        plt.close(fig)


def _panel_grid(count: int, ncols: int = MAX_COLUMNS):
    ncols = max(1, min(ncols, count))
    nrows = max(1, ceil(count / ncols))
    fig, axes = plt.subplots(
        nrows, ncols,
        figsize=(PANEL_SIZE[0] * ncols, PANEL_SIZE[1] * nrows),
        squeeze=False,
    )
    flat = axes.ravel()
    for ax in flat[count:]:
        ax.set_visible(False)
    return fig, flat[:count]


# ==================== 表格 ====================

def write_table(path: Path, rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> RenderResult:
    """以固定欄位順序寫入 CSV"""
    try:
        write_csv(path, rows, columns)
        return RenderResult(success=True, path=str(path), count=len(rows))
    except OSError as e:
        get_logger().error(f"Failed to write {path}: {e}")
        return RenderResult(success=False, path=str(path), error=str(e))


def library_versions() -> Dict[str, str]:
    return {
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "matplotlib": matplotlib.__version__,
    }


def write_manifest(
    path: Path,
    config: Dict[str, Any],
    seeds: Dict[str, Any],
    outputs: Optional[List[str]] = None
) -> RenderResult:
    """
    寫入 run manifest（config + seeds + 套件版本）

    manifest 可直接作為 --config 檔案重跑同一個 study。
    """
    payload = {
        "config": config,
        "seeds": seeds,
        "versions": library_versions(),
        "outputs": sorted(outputs or []),
    }
    try:
        write_json(path, payload)
        return RenderResult(success=True, path=str(path))
    except OSError as e:
        get_logger().error(f"Failed to write manifest {path}: {e}")
        return RenderResult(success=False, path=str(path), error=str(e))


# ==================== 設計輸出 ====================

def design_rows(
    design: Design,
    labels: Optional[Dict[str, Any]] = None,
    domain: Optional[DomainSpec] = None
) -> List[Dict[str, Any]]:
    """每個點一列：labels + point + 各維度 level index（有 tags 時附加 tag 欄）"""
    names = list(domain.names) if domain is not None and domain.names else [f"x{d}" for d in range(design.k)]
    rows = []
    for i, point in enumerate(design.points.tolist()):
        row: Dict[str, Any] = {**(labels or {}), "point": i}
        row.update(zip(names, point))
        if design.tags is not None:
            row["tag"] = int(design.tags[i])
        rows.append(row)
    return rows


def write_document(path: Path, payload: Any) -> RenderResult:
    """寫入 JSON 文件（例如設計清單）"""
    try:
        write_json(path, payload)
        return RenderResult(success=True, path=str(path))
    except OSError as e:
        get_logger().error(f"Failed to write {path}: {e}")
        return RenderResult(success=False, path=str(path), error=str(e))


# ==================== SVG ====================

def render_heatmap(
    table: np.ndarray,
    path: Path,
    title: str = "",
    marks: Optional[np.ndarray] = None,
    png: bool = True
) -> RenderResult:
    """
    灰階熱圖：黑色 = 最小值，+inf 顯示為白色

    Args:
        table: row = y, col = x 的數值表格
        path: SVG 輸出路徑（png=True 時另存同名 .png 預覽）
        title: 標題
        marks: 要標示的 (x, y) 網格點（例如固定點）

    Returns:
        RenderResult: count = 繪製的格數
    """
    values = np.ma.masked_invalid(np.asarray(table, dtype=float))
    cmap = matplotlib.colormaps["gray"].copy()
    cmap.set_bad("white")

    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    mesh = ax.pcolormesh(values, cmap=cmap, shading="flat", edgecolors="none")
    fig.colorbar(mesh, ax=ax)
    if marks is not None and len(marks):
        marks = np.asarray(marks)
        ax.scatter(marks[:, 0] + 0.5, marks[:, 1] + 0.5, s=14, c="red", marker="o")
    ax.set_aspect("equal")
    ax.set_title(title)
    result = _save_svg(fig, path)
    result.count = int(values.size)

    if png and result.success:
        table_to_png(np.asarray(table, dtype=float), path.with_suffix(".png"))
    return result


def render_boxplots(panels: List[Panel], path: Path, ncols: int = MAX_COLUMNS) -> RenderResult:
    """
    箱形圖面板（每個 panel 一組箱形）

    Args:
        panels: (標題, 箱形標籤, 每個箱形的資料) 列表
        path: SVG 輸出路徑

    Returns:
        RenderResult: count = panel 數
    """
    if not panels:
        return RenderResult(success=False, path=str(path), error="No panels to render")
    fig, axes = _panel_grid(len(panels), ncols)
    for ax, (title, labels, data) in zip(axes, panels):
        ax.boxplot([np.asarray(d, dtype=float) for d in data], tick_labels=labels, whis=(0, 100))
        ax.set_title(title)
        ax.tick_params(axis="x", labelrotation=45)
        ax.grid(axis="y", alpha=0.3)
    result = _save_svg(fig, path)
    result.count = len(panels)
    return result


def render_histograms(
    panels: List[Tuple[str, Dict[int, int]]],
    path: Path,
    ncols: int = MAX_COLUMNS
) -> RenderResult:
    """
    長條圖面板（例如投影後的重複點數分佈）

    Returns:
        RenderResult: count = panel 數
    """
    if not panels:
        return RenderResult(success=False, path=str(path), error="No panels to render")
    fig, axes = _panel_grid(len(panels), ncols)
    for ax, (title, histogram) in zip(axes, panels):
        keys = sorted(histogram)
        ax.bar(keys, [histogram[key] for key in keys], color="0.4")
        ax.set_title(title)
        ax.set_xticks(keys)
    result = _save_svg(fig, path)
    result.count = len(panels)
    return result


def render_designs(
    panels: List[Tuple[str, Design, np.ndarray]],
    domain: DomainSpec,
    path: Path
) -> RenderResult:
    """
    二維設計散佈圖與每點最近鄰距離長條圖

    Args:
        panels: (標題, 設計, 最近鄰距離) 列表；有 tags 的設計依迭代分色

    Returns:
        RenderResult: count = 設計數
    """
    if not panels:
        return RenderResult(success=False, path=str(path), error="No designs to render")
    fig, axes = plt.subplots(
        len(panels), 2,
        figsize=(2 * PANEL_SIZE[0], PANEL_SIZE[1] * len(panels)),
        squeeze=False,
    )
    for (title, design, distances), (scatter_ax, bar_ax) in zip(panels, axes):
        tags = design.tags if design.tags is not None else np.zeros(design.n, dtype=int)
        for tag in np.unique(tags):
            chosen = design.points[tags == tag]
            scatter_ax.scatter(chosen[:, 0], chosen[:, 1], s=18, label=str(int(tag)))
        scatter_ax.set_xlim(-0.5, domain.levels[0] - 0.5)
        scatter_ax.set_ylim(-0.5, domain.levels[1] - 0.5)
        scatter_ax.set_aspect("equal")
        scatter_ax.grid(alpha=0.3)
        scatter_ax.set_title(title)
        if design.tags is not None:
            scatter_ax.legend(fontsize=6, loc="upper right")
        bar_ax.bar(np.arange(design.n), distances, color="0.4")
        bar_ax.set_title("nearest-neighbour distance")
    result = _save_svg(fig, path)
    result.count = len(panels)
    return result
