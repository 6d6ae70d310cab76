import logging

from src.utils.logger import ColoredFormatter, get_logger, setup_logger


def _close(logger):
    for handler in list(logger.handlers):
        handler.close()
    logger.handlers.clear()


def test_console_only_without_log_dir():
    logger = setup_logger(name="gaussinterp-test-console", log_level="DEBUG", log_dir=None)
    try:
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 1
        assert isinstance(logger.handlers[0].formatter, ColoredFormatter)
    finally:
        _close(logger)


def test_file_handler_writes_plain_text(tmp_path):
    logger = setup_logger(name="gaussinterp-test-file", log_level="INFO", log_dir=str(tmp_path / "logs"))
    try:
        assert len(logger.handlers) == 2
        logger.info("assembled 41x41 Gram matrix")
        for handler in logger.handlers:
            handler.flush()
        text = (tmp_path / "logs" / "gaussinterp-test-file.log").read_text(encoding="utf-8")
        assert "assembled 41x41 Gram matrix" in text
        assert "\033[" not in text
    finally:
        _close(logger)


def test_setup_is_idempotent(tmp_path):
    name = "gaussinterp-test-repeat"
    setup_logger(name=name, log_dir=None)
    logger = setup_logger(name=name, log_dir=None)
    try:
        assert len(logger.handlers) == 1
        assert get_logger(name) is logger
    finally:
        _close(logger)


def test_colored_formatter_leaves_record_untouched():
    record = logging.LogRecord("x", logging.WARNING, __file__, 1, "solve failed", None, None)
    text = ColoredFormatter("%(levelname)s - %(message)s").format(record)
    assert "\033[33m" in text
    assert record.levelname == "WARNING"
