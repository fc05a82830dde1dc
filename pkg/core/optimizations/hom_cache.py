#!/usr/bin/env python3
"""
Memoisation of Hom/Ext dimensions.

Searches ask for the same ``hom_dim(X, B)`` over and over (every candidate is
tested against every member of a semibrick).  Entries are keyed on
``(kind, p, fingerprint(M), fingerprint(N))``: equal modules built
independently share an entry, and ``Hom(M, N)`` never answers for ``Hom(N, M)``.
"""
from __future__ import annotations

import threading
from collections import Counter, OrderedDict
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Dict, Iterable, Optional

if TYPE_CHECKING:
    from core.modrep import RepModule

KINDS = ("hom", "ext1")


@dataclass(frozen=True)
class DimKey:
    kind: str
    p: int
    source: str
    target: str

    @classmethod
    def of(cls, kind: str, m: "RepModule", n: "RepModule") -> "DimKey":
        if kind not in KINDS:
            raise ValueError(f"unknown dimension kind {kind!r}; expected one of {KINDS}")
        return cls(kind, m.p, m.fingerprint, n.fingerprint)

    def involves(self, fingerprint: str) -> bool:
        return fingerprint in (self.source, self.target)


class HomCache:
    """Bounded map ``DimKey -> dimension``; when full the oldest tenth goes."""

    def __init__(self, max_size: int = 4096):
        if max_size < 1:
            raise ValueError("max_size must be at least 1")
        self.max_size = max_size
        self._dims: "OrderedDict[DimKey, int]" = OrderedDict()
        self._hits: Counter = Counter()
        self._misses: Counter = Counter()
        self._lock = threading.RLock()

    def __len__(self) -> int:
        with self._lock:
            return len(self._dims)

    def __contains__(self, key: DimKey) -> bool:
        with self._lock:
            return key in self._dims

    def lookup(self, key: DimKey) -> Optional[int]:
        with self._lock:
            value = self._dims.get(key)
            (self._misses if value is None else self._hits)[key.kind] += 1
            return value

    def store(self, key: DimKey, value: int) -> None:
        if value < 0:
            raise ValueError(f"dimension must be non-negative, got {value}")
        with self._lock:
            if key not in self._dims and len(self._dims) >= self.max_size:
                for _ in range(max(1, self.max_size // 10)):
                    self._dims.popitem(last=False)
            self._dims[key] = value

    def dimension(self, kind: str, m: "RepModule", n: "RepModule",
                  compute: Callable[[], int]) -> int:
        """Cached ``kind``-dimension of the pair (m, n); ``compute`` runs on a miss."""
        key = DimKey.of(kind, m, n)
        value = self.lookup(key)
        if value is None:
            value = compute()
            self.store(key, value)
        return value

    def forget(self, modules: Iterable["RepModule"]) -> int:
        """Drop every entry touching one of ``modules``; returns how many went."""
        prints = {m.fingerprint for m in modules}
        with self._lock:
            stale = [k for k in self._dims if k.source in prints or k.target in prints]
            for k in stale:
                del self._dims[k]
            return len(stale)

    def clear(self) -> None:
        with self._lock:
            self._dims.clear()
            self._hits.clear()
            self._misses.clear()

    def get_stats(self) -> Dict[str, object]:
        with self._lock:
            hits, misses = sum(self._hits.values()), sum(self._misses.values())
            total = hits + misses
            return {
                'size': len(self._dims),
                'max_size': self.max_size,
                'hits': hits,
                'misses': misses,
                'hit_rate': hits / total if total else 0.0,
                'by_kind': {k: {'hits': self._hits[k], 'misses': self._misses[k]} for k in KINDS},
            }


# Shared by core.homology
HOM_CACHE = HomCache()
