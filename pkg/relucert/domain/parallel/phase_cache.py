"""
relucert/domain/parallel/phase_cache.py - Fixed-phase sharing between boxes

Phases fixed on a box stay sound on every box it contains, so lookups
return entries by containment only.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple
import logging
import threading

from relucert.core.errors import InputError
from relucert.core.network import Box, Network, PhaseStatus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseCacheEntry:
    """Phases fix_phases derived on exactly `box` (relu index within one copy)."""

    box: Box
    fixed: Tuple[Tuple[int, PhaseStatus], ...]

    def __post_init__(self):
        fixed = tuple((int(i), PhaseStatus(p)) for i, p in self.fixed)
        if any(p == PhaseStatus.UNDETERMINED for _, p in fixed):
            raise InputError("a cache entry holds only Active or Inactive phases")
        object.__setattr__(self, 'fixed', fixed)


class PhaseCache:
    """
    Append-only store of (box → fixed phases) for one network.

    Readers take a snapshot of the entry list; writers append under a lock.
    """

    def __init__(self, network: Network):
        self.network = network
        self._entries: List[PhaseCacheEntry] = []
        self._lock = threading.Lock()

    def serves(self, net: Network) -> bool:
        return net is self.network

    def record(self, box: Box, fixed: Iterable[Tuple[int, PhaseStatus]]) -> Optional[PhaseCacheEntry]:
        fixed = tuple(fixed)
        if not fixed:
            return None
        entry = PhaseCacheEntry(box, fixed)
        with self._lock:
            self._entries.append(entry)
        logger.debug("phase cache: %d phases recorded (%d entries)", len(fixed), len(self))
        return entry

    @property
    def entries(self) -> Tuple[PhaseCacheEntry, ...]:
        with self._lock:
            return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


def phase_cache_lookup(cache: Optional[PhaseCache], box: Box) -> List[Tuple[int, PhaseStatus]]:
    """
    Union of the phases of every entry whose box contains `box`.

    Returns:
        (relu index, phase) pairs sorted by index; the first entry wins on conflicts
    """
    if cache is None:
        return []
    found: Dict[int, PhaseStatus] = {}
    for entry in cache.entries:
        if entry.box.contains(box):
            for index, phase in entry.fixed:
                found.setdefault(index, phase)
    return sorted(found.items())
