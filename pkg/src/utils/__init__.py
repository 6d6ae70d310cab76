from src.utils.export import (
    format_cell,
    make_json_safe,
    write_matrix_csv,
    write_table,
    write_text,
)
from src.utils.logger import ColoredFormatter, get_logger, setup_logger

__all__ = [
    "ColoredFormatter",
    "format_cell",
    "get_logger",
    "make_json_safe",
    "setup_logger",
    "write_matrix_csv",
    "write_table",
    "write_text",
]
