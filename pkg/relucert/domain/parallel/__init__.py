"""
relucert/domain/parallel - Scheduling verification work

Functions:
    - run_batch(items, workers, budget) → BatchResult
    - partition_domain(domain, n) → sub-boxes
    - prioritize(items, net, samples) → reordered items
    - phase_cache_lookup(cache, box) → fixed phases valid on box
"""
from relucert.domain.parallel.phase_cache import PhaseCache, PhaseCacheEntry, phase_cache_lookup
from relucert.domain.parallel.scheduler import (
    BatchResult, CancelToken, Disjunct, PointQuery, SubDomain, WorkItem, execute_item, run_batch,
)
from relucert.domain.parallel.partition import partition_domain
from relucert.domain.parallel.prioritize import fluctuation, item_region, prioritize

__all__ = [
    'PhaseCache', 'PhaseCacheEntry', 'phase_cache_lookup',
    'BatchResult', 'CancelToken', 'Disjunct', 'PointQuery', 'SubDomain', 'WorkItem',
    'execute_item', 'run_batch',
    'partition_domain',
    'fluctuation', 'item_region', 'prioritize',
]
