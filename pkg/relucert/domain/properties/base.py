"""
relucert/domain/properties/base.py - Abstract property encoder

Uses Template Method Pattern:
- Subclasses implement _encode_region() and _constraints()
- PropertyEncoder.encode() validates, encodes the input region once, then
  clones it into one query per one-sided disjunct
"""
from abc import ABC, abstractmethod
from typing import List, Optional
import logging

from relucert.config.options import VerifyOptions
from relucert.core.network import Box, Network
from relucert.core.spec import PropertyKind, RobustnessSpec
from relucert.domain.parallel.phase_cache import PhaseCache, phase_cache_lookup
from relucert.domain.reluverify import (
    EncodedQuery, OutputConstraint, constrain_outputs, encode_network, fix_phases,
)

logger = logging.getLogger(__name__)


class PropertyEncoder(ABC):
    """
    Turns a RobustnessSpec into the negated property as a list of disjuncts.

    Subclasses must implement:
        - kind: PropertyKind handled
        - _encode_region(net, spec, options, cache): network copies + distance rows
        - _constraints(net, spec, options): one OutputConstraint per disjunct

    Every returned query is Unsat iff the property holds.
    """

    kind: PropertyKind
    name: str = "Base property"
    description: str = ""

    def encode(self, net: Network, spec: RobustnessSpec,
               options: VerifyOptions = VerifyOptions(),
               phase_cache: Optional[PhaseCache] = None) -> List[EncodedQuery]:
        """
        Encode the negated property.

        Template method: orchestrates the pipeline

        Returns:
            One EncodedQuery per disjunct
        """
        self.check(net, spec)
        region = self._encode_region(net, spec, options, phase_cache)

        disjuncts = []
        for constraint in self._constraints(net, spec, options):
            query = region.clone()
            constrain_outputs(query, constraint)
            disjuncts.append(query)
        logger.debug("%s: %d disjuncts, %d relus", spec.describe(), len(disjuncts), len(region.relus))
        return disjuncts

    def check(self, net: Network, spec: RobustnessSpec) -> None:
        """
        Raise InputError unless spec can be encoded against net.

        Runs before any work is scheduled so malformed queries never reach a
        worker.
        """
        spec.check_against(net)
        self._validate(net, spec)

    def _validate(self, net: Network, spec: RobustnessSpec) -> None:
        """Property-specific preconditions (override when needed)."""

    @abstractmethod
    def _encode_region(self, net: Network, spec: RobustnessSpec, options: VerifyOptions,
                       phase_cache: Optional[PhaseCache]) -> EncodedQuery:
        pass

    @abstractmethod
    def _constraints(self, net: Network, spec: RobustnessSpec,
                     options: VerifyOptions) -> List[OutputConstraint]:
        pass

    # ─────────────────────────────────────────────────────────────
    # Helpers shared by the encoders
    # ─────────────────────────────────────────────────────────────

    @staticmethod
    def _encode_copy(net: Network, box: Box, copy_id: int, query: EncodedQuery,
                     options: VerifyOptions, phase_cache: Optional[PhaseCache]) -> None:
        """
        Encode one network copy over box, seeded from and feeding the phase cache.

        Phases are fixed and recorded before any distance or property row
        exists, so a cache entry depends on the box alone.
        """
        search = options.search
        usable_cache = phase_cache is not None and phase_cache.serves(net)
        seeds = phase_cache_lookup(phase_cache, box) if usable_cache and search.phase_fixing else None
        encode_network(net, box, copy_id, query, seed_phases=seeds,
                       interval_phases=search.phase_fixing,
                       triangle=search.triangle_relaxation)
        if search.phase_fixing:
            fix_phases(query, search)
            if usable_cache:
                phase_cache.record(box, query.fixed_phases(copy_id))

    def metadata(self) -> dict:
        return {
            'key': self.kind.value,
            'name': self.name,
            'description': self.description,
        }
