import logging
import threading
from collections import OrderedDict
from typing import Optional, Tuple

from app.core.config import settings
from app.schemas.results import HRegime

logger = logging.getLogger(__name__)


class InvariantCache:
    """Per-sweep memo of factor invariants and H-regime facts, keyed by graph6.

    Both tables are bounded; the least recently used entry is evicted first.
    """

    def __init__(self, max_entries: Optional[int] = None):
        self.max_entries = max_entries or settings.CACHE_MAX_ENTRIES
        self._lock = threading.Lock()
        self._values: "OrderedDict[Tuple[str, str], Optional[int]]" = OrderedDict()
        self._regimes: "OrderedDict[str, HRegime]" = OrderedDict()
        self.hits = 0
        self.evictions = 0

    def _store(self, table: OrderedDict, key, value):
        table[key] = value
        table.move_to_end(key)
        while len(table) > self.max_entries:
            table.popitem(last=False)
            self.evictions += 1

    def set_invariant(self, key: str, kind: str, value: Optional[int]):
        with self._lock:
            self._store(self._values, (key, kind), value)

    def has_invariant(self, key: str, kind: str) -> bool:
        with self._lock:
            return (key, kind) in self._values

    def get_invariant(self, key: str, kind: str) -> Optional[int]:
        with self._lock:
            if (key, kind) not in self._values:
                return None
            self.hits += 1
            self._values.move_to_end((key, kind))
            return self._values[(key, kind)]

    def set_regime(self, key: str, regime: HRegime):
        with self._lock:
            self._store(self._regimes, key, regime)

    def get_regime(self, key: str) -> Optional[HRegime]:
        with self._lock:
            regime = self._regimes.get(key)
            if regime is not None:
                self.hits += 1
                self._regimes.move_to_end(key)
            return regime

    def __len__(self) -> int:
        with self._lock:
            return len(self._values) + len(self._regimes)

    def clear(self):
        with self._lock:
            dropped = len(self._values) + len(self._regimes)
            self._values.clear()
            self._regimes.clear()
        logger.debug(f"Invariant cache cleared ({dropped} entries)")

    def __getstate__(self):
        # workers start with an empty memo
        return {"hits": 0, "max_entries": self.max_entries}

    def __setstate__(self, state):
        self.__init__(state.get("max_entries"))
        self.hits = state.get("hits", 0)
