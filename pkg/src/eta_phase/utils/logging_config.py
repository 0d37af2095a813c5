import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager

import structlog

from eta_phase.config import get_settings


def configure_logging(level: str | None = None) -> None:
    """Configure structlog on top of stdlib logging; records go to stderr.

    stdout is reserved for command output.
    """
    settings = get_settings()
    log_level = getattr(logging, (level or settings.log_level).upper())

    processors: list[structlog.typing.Processor] = [
        structlog.stdlib.filter_by_level,
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if settings.log_format == "json":
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=log_level)
    logging.getLogger().setLevel(log_level)

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


@contextmanager
def command_logging_context(command: str) -> Iterator[None]:
    """Bind the running command name to every log line inside the block."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command)
    try:
        yield
    finally:
        structlog.contextvars.unbind_contextvars("command")
