"""
relucert/domain/parallel/prioritize.py - Fluctuation-based work ordering

Items whose region shows the steepest sampled confidence change run first;
they are the likeliest to hold a violation. Ordering never affects verdicts.
"""
from dataclasses import replace
from typing import List, Sequence
import logging
import zlib

import numpy as np

from relucert.config.settings import ParallelParams
from relucert.core.errors import InputError
from relucert.core.network import Box, Network
from relucert.domain.network import evaluate_many
from relucert.domain.parallel.scheduler import Disjunct, PointQuery, SubDomain, WorkItem

logger = logging.getLogger(__name__)


def item_region(item: WorkItem) -> Box:
    payload = item.payload
    if isinstance(payload, (PointQuery, SubDomain)):
        return payload.spec.region
    if isinstance(payload, Disjunct):
        return payload.query.boxes[min(payload.query.boxes)]
    raise InputError(f"unknown payload type {type(payload).__name__}")


def fluctuation(net: Network, box: Box, samples: int, seed: int) -> float:
    """Maximum of ||ΔC||∞ / ||Δx||∞ over `samples` random pairs drawn in box."""
    widths = box.widths
    if not np.all(np.isfinite(widths)):
        raise InputError("fluctuation needs a bounded region")
    if np.all(widths == 0):
        return 0.0
    rng = np.random.default_rng(seed)
    first = box.lower + rng.random((samples, box.dim)) * widths
    second = box.lower + rng.random((samples, box.dim)) * widths
    dx = np.max(np.abs(first - second), axis=1)
    dc = np.max(np.abs(evaluate_many(net, first) - evaluate_many(net, second)), axis=1)
    usable = dx > 0
    if not np.any(usable):
        return 0.0
    return float(np.max(dc[usable] / dx[usable]))


def prioritize(items: Sequence[WorkItem], net: Network,
               samples: int = ParallelParams.FLUCTUATION_SAMPLES) -> List[WorkItem]:
    """
    Assign each item its fluctuation estimate as priority and sort descending.

    Sampling is seeded from the item id; equal priorities keep their order.
    """
    if samples < 2:
        raise InputError(f"need at least 2 samples, got {samples}")
    scored = []
    for item in items:
        seed = zlib.crc32(str(item.id).encode("utf-8"))
        priority = fluctuation(net, item_region(item), samples, seed)
        scored.append(replace(item, priority=priority))
        logger.debug("item %s fluctuation %.6g", item.id, priority)
    return sorted(scored, key=lambda it: -it.priority)
