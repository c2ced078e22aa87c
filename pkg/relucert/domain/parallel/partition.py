"""
relucert/domain/parallel/partition.py - Input-domain partitioning
"""
from typing import List
import heapq
import itertools

import numpy as np

from relucert.config.settings import ParallelParams
from relucert.core.errors import InputError
from relucert.core.network import Box


def _split(box: Box):
    dim = int(np.argmax(box.widths))
    mid = 0.5 * (box.lower[dim] + box.upper[dim])
    if not box.lower[dim] < mid < box.upper[dim]:
        raise InputError(f"box cannot be split further along dimension {dim}")
    left_hi = box.upper.copy()
    left_hi[dim] = mid
    right_lo = box.lower.copy()
    right_lo[dim] = mid
    return Box(box.lower, left_hi), Box(right_lo, box.upper)


def partition_domain(domain: Box, n: int) -> List[Box]:
    """
    Cut domain into n sub-boxes by repeatedly halving the widest box along
    its widest dimension.

    Sub-boxes share faces only; their union is the domain.

    Returns:
        n boxes sorted by lower corner
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"partition count must be a positive integer, got {n!r}")
    if n > ParallelParams.MAX_PARTITIONS:
        raise InputError(f"partition count {n} exceeds {ParallelParams.MAX_PARTITIONS}")
    if not np.all(np.isfinite(domain.widths)):
        raise InputError("only bounded domains can be partitioned")

    counter = itertools.count()
    heap = [(-float(np.max(domain.widths, initial=0.0)), next(counter), domain)]
    while len(heap) < n:
        _, _, box = heapq.heappop(heap)
        for half in _split(box):
            heapq.heappush(heap, (-float(np.max(half.widths)), next(counter), half))

    boxes = [box for _, _, box in heap]
    boxes.sort(key=lambda b: (tuple(b.lower), tuple(b.upper)))
    return boxes
