"""Memo stores shared by the evaluation engines and their optional JSON-lines file."""
import threading
from pathlib import Path
from typing import Callable
from typing import Hashable

import orjson
from loguru import logger
from tenacity import RetryCallState
from tenacity import retry
from tenacity import retry_if_exception_type
from tenacity import stop_after_attempt
from tenacity import wait_fixed

from weightsys.core.config import get_version
from weightsys.core.exceptions import CacheError
from weightsys.diagrams.poly import Poly
from weightsys.diagrams.poly import parse_poly
from weightsys.diagrams.schema import CacheRecord

max_tries = 5
wait_seconds = 0.2


def log_retry(retry_state: RetryCallState):
    logger.warning(
        'Cache file access failed on attempt {}: {}',
        retry_state.attempt_number,
        retry_state.outcome.exception(),
    )


class MemoStore:
    """
    Dictionary cache with a get-or-compute that runs ``compute`` unlocked.

    Two threads may compute the same key; the first insert wins and only it
    reaches the listeners.
    """

    def __init__(self, name: str):
        self.name = name
        self._values: dict[Hashable, object] = {}
        self._lock = threading.Lock()
        self._listeners: list[Callable[[Hashable, object], None]] = []
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._values

    def get(self, key: Hashable, default=None):
        return self._values.get(key, default)

    def get_or_compute(self, key: Hashable, compute: Callable[[], object]):
        with self._lock:
            if key in self._values:
                self.hits += 1
                return self._values[key]
            self.misses += 1
        logger.debug('{} cache miss: {}', self.name, key)
        value = compute()
        with self._lock:
            stored = self._values.setdefault(key, value)
            listeners = list(self._listeners) if stored is value else []
        for listener in listeners:
            listener(key, value)
        return stored

    def preload(self, items: dict[Hashable, object]):
        with self._lock:
            self._values.update(items)

    def on_insert(self, listener: Callable[[Hashable, object], None]):
        self._listeners.append(listener)

    def items(self) -> list[tuple[Hashable, object]]:
        with self._lock:
            return list(self._values.items())

    def clear(self):
        with self._lock:
            self._values.clear()
            self._listeners.clear()
            self.hits = 0
            self.misses = 0


class PersistentCache:
    """
    JSON-lines backing file for the evaluation memo stores.

    Only values of connected blocks keyed by their canonical one-line form are
    written; strategy-tagged keys stay in memory.
    """

    def __init__(self, path: str | Path, version: str | None = None):
        self.path = Path(path)
        self.version = version or get_version()
        self._write_lock = threading.Lock()

    @retry(
        stop=stop_after_attempt(max_tries),
        wait=wait_fixed(wait_seconds),
        retry=retry_if_exception_type(OSError),
        before_sleep=log_retry,
        reraise=True,
    )
    def _open(self, mode: str):
        return open(self.path, mode)

    def load(self) -> dict[str, dict[str, Poly]]:
        """Records per engine; records of another version or format are skipped."""
        tables: dict[str, dict[str, Poly]] = {'gl': {}, 'so': {}}
        if not self.path.exists():
            return tables
        skipped = 0
        with self._open('rb') as f:
            for number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    data = orjson.loads(line)
                except orjson.JSONDecodeError as e:
                    err_msg = f'Corrupt cache line {number} in {self.path}'
                    logger.error(err_msg)
                    raise CacheError(err_msg) from e
                try:
                    record = CacheRecord.from_json_dict(data)
                except CacheError as e:
                    logger.warning('Skipping cache line {} in {}: {}', number, self.path, e)
                    skipped += 1
                    continue
                if record.version != self.version:
                    skipped += 1
                    continue
                tables[record.engine][record.key] = parse_poly(record.value)
        if skipped:
            logger.warning(
                'Skipped {} cache records from another version or format in {}', skipped, self.path
            )
        logger.info(
            'Loaded {} gl and {} so values from {}', len(tables['gl']), len(tables['so']), self.path
        )
        return tables

    def append(self, engine: str, key: str, value: Poly):
        record = CacheRecord(key=key, engine=engine, value=str(value), version=self.version)
        line = orjson.dumps(record.model_dump()) + b'\n'
        with self._write_lock:
            with self._open('ab') as f:
                f.write(line)

    def attach(self, store: MemoStore, engine: str):
        """Preload ``store`` from the file and append every new canonical value to it."""
        store.preload(self.load()[engine])

        def persist(key, value):
            if isinstance(key, str) and key.startswith('['):
                self.append(engine, key, value)

        store.on_insert(persist)
