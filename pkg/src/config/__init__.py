from src.config.settings import NumericsPolicy, Settings, numerics, settings

__all__ = [
    "settings",
    "numerics",
    "Settings",
    "NumericsPolicy",
]
