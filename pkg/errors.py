"""
Exception hierarchy for doe-chan

所有模組共用的例外類別。最佳化迴圈內的 DoeError 會被視為被拒絕的移動（+inf）。
"""


class DoeError(Exception):
    """doe-chan 例外的根類別"""


class DomainError(DoeError, ValueError):
    """Domain / Design 輸入不合法（維度不符、索引越界、形狀錯誤等）"""


class DegenerateDesignError(DoeError):
    """退化設計：常數欄、奇異 XᵀX、AE 嚴格模式下的重複點"""


class GridExhaustedError(DoeError):
    """網格上已沒有可用的空格"""


class MechanismError(DoeError):
    """桁架在支承條件下的勁度矩陣奇異（機構）"""


class ConfigError(DoeError, ValueError):
    """實驗配置錯誤（CLI exit code 2）"""
