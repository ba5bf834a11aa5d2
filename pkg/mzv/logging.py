import logging
import sys

from loguru import logger

_FORMAT = (
    "<level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


class _InterceptHandler(logging.Handler):
    """Forward stdlib records (asyncio worker threads, warnings) to loguru."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level: str | int = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        # skip the logging module's own frames so loguru reports the caller
        frame, depth = logging.currentframe(), 2
        while frame is not None and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(
            level, record.getMessage()
        )


def setup_logging(level: str | None = None) -> None:
    """
    One loguru sink on stderr at `level` (default LOG_LEVEL).

    Called on every command invocation, so the sink always points at the
    current stderr stream. stdout carries command output only.
    """
    from mzv.settings import LOG_LEVEL

    stream = sys.stderr
    logger.remove()
    logger.add(
        stream,
        level=(level or LOG_LEVEL).upper(),
        format=_FORMAT,
        colorize=stream.isatty(),
        backtrace=False,
        diagnose=False,
    )

    logging.captureWarnings(True)
    logging.basicConfig(handlers=[_InterceptHandler()], level=0, force=True)
