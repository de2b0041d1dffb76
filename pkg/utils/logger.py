"""
統一日誌系統 - doe-chan

提供以下功能：
1. 統一日誌格式
2. 控制台即時更新（覆蓋式顯示退火 / replicate 進度）
3. 完整的檔案日誌記錄（每個 session 一個 session.log）
4. 錯誤與警告必須顯示並記錄
5. 操作類型標籤（取樣、退火、評估、求解等）
"""
import sys
import shutil
import logging
from pathlib import Path
from datetime import datetime
from typing import Optional
from enum import Enum
from dataclasses import dataclass

# ==================== 日誌等級 ====================

PROGRESS = 25  # 自訂等級：進度更新

logging.addLevelName(PROGRESS, "PROGRESS")

LOGGER_NAME = "doe-chan"


# ==================== 操作類型標籤 ====================

class Operation(Enum):
    """操作類型（用於進度顯示）"""
    SAMPLE = "🎲 取樣"
    ANNEAL = "🔥 退火"
    EVALUATE = "📏 評估"
    EXTEND = "➕ 擴充"
    ANALYZE = "🔍 分析"
    SOLVE = "🔩 求解"
    RENDER = "🎨 繪圖"
    DONE = "✅ 完成"
    ERROR = "❌ 錯誤"


# ==================== Console Handler 支援覆蓋式輸出 ====================

class ConsoleHandler(logging.Handler):
    """
    控制台 Handler：
    - 一般日誌：正常輸出到 stdout
    - 進度更新：覆蓋同一行
    - 錯誤/警告：始終輸出到 stderr，不會被覆蓋
    """

    def __init__(self, show_progress: bool = True):
        super().__init__()
        self._last_was_progress = False
        self._show_progress = show_progress
        self._terminal_width = shutil.get_terminal_size(fallback=(80, 24)).columns

    def emit(self, record: logging.LogRecord):
        try:
            msg = self.format(record)

            if record.levelno == PROGRESS:
                if self._show_progress:
                    sys.stdout.write('\r' + ' ' * self._terminal_width + '\r')
                    sys.stdout.write(msg[:self._terminal_width - 1])
                    sys.stdout.flush()
                    self._last_was_progress = True
                return

            if self._last_was_progress:
                sys.stdout.write('\n')
                self._last_was_progress = False

            stream = sys.stderr if record.levelno >= logging.WARNING else sys.stdout
            stream.write(msg + '\n')
            stream.flush()

        except Exception:
            self.handleError(record)

    def flush(self):
        """確保進度行結束"""
        if self._last_was_progress:
            sys.stdout.write('\n')
            sys.stdout.flush()
            self._last_was_progress = False


# ==================== Logger 類別 ====================

@dataclass
class LoggerConfig:
    """日誌配置"""
    name: str = LOGGER_NAME
    log_dir: Optional[Path] = None
    session_id: Optional[str] = None
    console_level: int = logging.INFO
    file_level: int = logging.DEBUG
    show_progress: bool = True


class DoeLogger:
    """
    doe-chan 統一日誌器

    使用方式：
        logger = get_logger()
        logger.info("一般訊息")
        logger.progress("replicate 3/20", Operation.ANNEAL)  # 覆蓋式更新
        logger.warning("回應為常數")  # 始終顯示並記錄
    """

    _instances: dict = {}

    def __init__(self, config: LoggerConfig):
        self.config = config
        self._log_file: Optional[Path] = None
        self._logger = logging.getLogger(config.name)
        self._logger.setLevel(logging.DEBUG)
        self._logger.handlers.clear()

        console_handler = ConsoleHandler(show_progress=config.show_progress)
        console_handler.setLevel(config.console_level)
        console_handler.setFormatter(logging.Formatter(
            '[%(asctime)s] [%(levelname)s] %(message)s',
            datefmt='%H:%M:%S'
        ))
        self._logger.addHandler(console_handler)
        self._console_handler = console_handler

        if config.log_dir:
            self._setup_file_handler(config.log_dir, config.session_id)

    def _setup_file_handler(self, log_dir: Path, session_id: Optional[str] = None):
        """設定檔案 Handler"""
        log_dir = Path(log_dir)
        if session_id:
            log_file = log_dir / session_id / "session.log"
        else:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            log_file = log_dir / f"doe-chan_{timestamp}.log"
        log_file.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(self.config.file_level)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s | %(levelname)-8s | %(name)s | %(filename)s:%(lineno)d | %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        ))
        self._logger.addHandler(file_handler)
        self._log_file = log_file

    @property
    def log_file(self) -> Optional[Path]:
        return self._log_file

    # ==================== 日誌方法 ====================

    def debug(self, msg: str, *args, **kwargs):
        """Debug 訊息（僅記錄到檔案）"""
        self._logger.debug(msg, *args, **kwargs)

    def info(self, msg: str, *args, **kwargs):
        self._logger.info(msg, *args, **kwargs)

    def progress(self, msg: str, op: Optional[Operation] = None):
        """進度更新（覆蓋式輸出），op 會加上對應的 emoji 標籤"""
        if op:
            msg = f"{op.value} {msg}"
        self._logger.log(PROGRESS, msg)

    def warning(self, msg: str, *args, **kwargs):
        self._logger.warning(msg, *args, **kwargs)

    def error(self, msg: str, *args, exc_info: bool = False, **kwargs):
        self._logger.error(msg, *args, exc_info=exc_info, **kwargs)

    def exception(self, msg: str, *args, **kwargs):
        self._logger.exception(msg, *args, **kwargs)

    def finish_progress(self):
        """結束進度更新（換行）"""
        self._console_handler.flush()

    # ==================== 靜態方法 ====================

    @classmethod
    def get_logger(
        cls,
        name: str = LOGGER_NAME,
        log_dir: Optional[Path] = None,
        session_id: Optional[str] = None,
        console_level: int = logging.INFO,
        show_progress: bool = True
    ) -> 'DoeLogger':
        """取得或建立 Logger 實例"""
        if name not in cls._instances:
            config = LoggerConfig(
                name=name,
                log_dir=log_dir,
                session_id=session_id,
                console_level=console_level,
                show_progress=show_progress
            )
            cls._instances[name] = cls(config)
        return cls._instances[name]

    @classmethod
    def reset(cls, name: str = LOGGER_NAME):
        """重置 Logger"""
        cls._instances.pop(name, None)


# ==================== 便利函數 ====================

_default_logger: Optional[DoeLogger] = None


def setup_logger(
    log_dir: Optional[Path] = None,
    session_id: Optional[str] = None,
    level: str = "INFO",
    show_progress: bool = True
) -> DoeLogger:
    """設定並取得預設 Logger（會取代先前的實例）"""
    global _default_logger
    console_level = logging.getLevelName(level.upper())
    if not isinstance(console_level, int):
        console_level = logging.INFO

    DoeLogger.reset()
    _default_logger = DoeLogger.get_logger(
        log_dir=log_dir,
        session_id=session_id,
        console_level=console_level,
        show_progress=show_progress
    )
    return _default_logger


def get_logger() -> DoeLogger:
    """取得預設 Logger（如未設定則建立新的）"""
    global _default_logger
    if _default_logger is None:
        _default_logger = DoeLogger.get_logger()
    return _default_logger


def progress(msg: str, op: Optional[Operation] = None): get_logger().progress(msg, op)
def warning(msg: str): get_logger().warning(msg)
def finish_progress(): get_logger().finish_progress()
