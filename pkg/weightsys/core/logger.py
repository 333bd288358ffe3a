import sys
from pprint import pformat

from loguru import logger
from loguru._defaults import LOGURU_FORMAT

from weightsys.core.config import LOG_LEVEL


def format_record(record: dict) -> str:
    """Default loguru line; a ``payload`` bound to the record is pretty-printed below it."""
    payload = record['extra'].get('payload')
    if payload is None:
        return LOGURU_FORMAT + '{exception}\n'
    record['extra']['payload'] = pformat(payload, compact=True, width=100)
    return LOGURU_FORMAT + '\n<level>{extra[payload]}</level>{exception}\n'


def init_logging(level: str | int = LOG_LEVEL, sink=None):
    """
    Turn on the library's log records and send them to one sink, stderr by default.

    The package is disabled on import so that callers of the library see nothing
    until they opt in, as the command line front end does.
    """
    handler = {'sink': sink or sys.stderr, 'level': level, 'format': format_record}
    logger.configure(handlers=[handler])
    logger.enable('weightsys')
