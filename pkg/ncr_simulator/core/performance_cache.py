"""
Caching of per-slot fading coefficients.

Within a slot the same node pair is evaluated several times (NCR gain
setting, SINR terms, measurement sweeps); the coefficients over all RBs are
computed once and kept in an LRU cache.
"""

import logging
from collections import OrderedDict
from typing import Any, Dict, Hashable, Optional

logger = logging.getLogger(__name__)


class CoefficientCache:
    """
    LRU (Least Recently Used) cache keyed by (node pair, slot).
    """

    def __init__(self, max_size: int = 512):
        """
        Initialize the cache.

        Args:
            max_size: Maximum number of entries
        """
        self.max_size = max_size
        self.cache: "OrderedDict[Hashable, Any]" = OrderedDict()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """
        Get a cached value.

        Args:
            key: Cache key

        Returns:
            Cached value or None
        """
        if key in self.cache:
            self.cache.move_to_end(key)
            self.hits += 1
            return self.cache[key]
        self.misses += 1
        return None

    def put(self, key: Hashable, value: Any) -> None:
        """
        Store a value, evicting the least recently used entry at capacity.

        Args:
            key: Cache key
            value: Value to cache
        """
        if key not in self.cache and len(self.cache) >= self.max_size:
            self.cache.popitem(last=False)
        self.cache[key] = value
        self.cache.move_to_end(key)

    def invalidate(self, predicate) -> int:
        """
        Drop entries whose key satisfies the predicate.

        Returns:
            Number of entries invalidated
        """
        stale = [key for key in self.cache if predicate(key)]
        for key in stale:
            del self.cache[key]
        return len(stale)

    def clear(self) -> None:
        """Clear all cached entries."""
        self.cache.clear()
        self.hits = 0
        self.misses = 0

    def get_stats(self) -> Dict[str, Any]:
        """
        Get cache statistics.

        Returns:
            Dictionary with size, hits, misses and hit rate
        """
        total = self.hits + self.misses
        return {
            'size': len(self.cache),
            'max_size': self.max_size,
            'hits': self.hits,
            'misses': self.misses,
            'hit_rate': self.hits / total if total else 0.0,
        }
