"""
Point-evaluation cache for transform closures.
"""

import threading
from collections import OrderedDict
from typing import Any, Hashable, Optional, Tuple

from imagshift.utils import config


def point_key(*parts: Any) -> Tuple[Hashable, ...]:
    """
    Build a cache key from complex points and plain parameters.

    Complex and real numbers are rounded to 15 significant digits so that
    s + i computed twice along different routes hits the same entry.
    """
    key = []
    for part in parts:
        if isinstance(part, (complex, float, int)) and not isinstance(part, bool):
            z = complex(part)
            key.append((float(f"{z.real:.15g}"), float(f"{z.imag:.15g}")))
        else:
            key.append(part)
    return tuple(key)


class EvaluationCache:
    """In-memory cache that evicts the least recently used entry when full."""

    def __init__(self, max_entries: Optional[int] = None):
        """
        Initialize the evaluation cache.

        Args:
            max_entries: Capacity; defaults to IMAGSHIFT_CACHE_MAX_ENTRIES
        """
        self.max_entries = config.CACHE_MAX_ENTRIES if max_entries is None else max_entries
        if self.max_entries < 1:
            raise ValueError(f"max_entries must be positive, got {self.max_entries}")
        self._cache: 'OrderedDict[Hashable, Any]' = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key: Hashable) -> Optional[Any]:
        """
        Get a value from cache and mark it as recently used.

        Args:
            key: Key built with point_key

        Returns:
            The cached value or None if not found
        """
        with self._lock:
            if key not in self._cache:
                return None
            self._cache.move_to_end(key)
            return self._cache[key]

    def set(self, key: Hashable, data: Any) -> None:
        """
        Store a value in cache, evicting the oldest entry beyond capacity.

        Args:
            key: Key built with point_key
            data: The value to cache
        """
        with self._lock:
            self._cache[key] = data
            self._cache.move_to_end(key)
            while len(self._cache) > self.max_entries:
                self._cache.popitem(last=False)

    def clear(self) -> None:
        """Clear all cached values."""
        with self._lock:
            self._cache.clear()

    def __len__(self) -> int:
        return len(self._cache)
