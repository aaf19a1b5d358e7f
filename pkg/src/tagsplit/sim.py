"""Trace-driven simulator for split tag comparison in an LRU cache.

The simulator models a single-level set-associative cache with true
LRU replacement and counts tag bits read under the two-step scheme:
step 1 compares the k low-order tag bits of all ways in the indexed
set, step 2 reads the remaining tag bits only for the valid ways whose
prefix matched.  Which block hits or misses is decided exactly as in a
conventional cache; splitting changes only how many bits the decision
costs, never the decision itself.

Empty ways take part in the step-1 comparison like any other way (the
hardware reads all prefix columns in parallel, so step 1 always costs
k bits per way) but they can neither survive to step 2 nor hit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import CacheConfig, derive_geometry

__all__ = [
    "SimStats",
    "CacheState",
    "run_trace",
    "trace_outcomes",
    "warm_fill",
    "baseline_outcomes",
    "invariance_check",
]


@dataclass
class SimStats:
    """Access and bit-read counters accumulated over a trace.

    matched_way_histogram[s] counts accesses whose step 1 produced
    exactly s valid survivors; its weighted sum times the step-2 width
    reproduces step2_bit_reads.
    """

    ways: int
    accesses: int = 0
    hits: int = 0
    misses: int = 0
    step1_bit_reads: int = 0
    step2_bit_reads: int = 0
    baseline_bit_reads: int = 0
    matched_way_histogram: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.matched_way_histogram:
            self.matched_way_histogram = [0] * (self.ways + 1)

    @property
    def total_bit_reads(self) -> int:
        return self.step1_bit_reads + self.step2_bit_reads

    @property
    def bits_per_access(self) -> float:
        if self.accesses == 0:
            raise ValueError("no accesses recorded")
        return self.total_bit_reads / self.accesses

    def mean_survivors(self) -> float:
        if self.accesses == 0:
            raise ValueError("no accesses recorded")
        weighted = sum(s * count for s, count in enumerate(self.matched_way_histogram))
        return weighted / self.accesses

    def validate(self, tag_bits: int, k: int) -> None:
        """Raise AssertionError unless every counter identity holds."""
        weighted = sum(s * count for s, count in enumerate(self.matched_way_histogram))
        checks = (
            ("hits + misses == accesses", self.hits + self.misses == self.accesses),
            ("histogram sums to accesses", sum(self.matched_way_histogram) == self.accesses),
            ("step1 == accesses*k*ways", self.step1_bit_reads == self.accesses * k * self.ways),
            ("step2 == (n-k)*sum(s*hist[s])", self.step2_bit_reads == (tag_bits - k) * weighted),
            (
                "baseline == accesses*n*ways",
                self.baseline_bit_reads == self.accesses * tag_bits * self.ways,
            ),
        )
        for label, ok in checks:
            if not ok:
                raise AssertionError(f"counter identity violated: {label}")


class CacheState:
    """Tag array contents of one cache plus its splitting point.

    Each set holds per-way (valid, tag) entries and an LRU ordering;
    rank 0 is the least recently used way of the set.
    """

    def __init__(self, config: CacheConfig, k: int, debug: bool = False):
        geometry = derive_geometry(config)
        if k != int(k) or not 0 <= int(k) <= geometry.tag_bits:
            raise ValueError(
                f"splitting point k must be an integer in [0, {geometry.tag_bits}], got {k!r}"
            )
        self.config = config
        self.geometry = geometry
        self.k = int(k)
        self.debug = debug
        self._ways = config.associativity
        self._offset_bits = geometry.offset_bits
        self._index_bits = geometry.index_bits
        self._index_mask = geometry.sets - 1
        self._prefix_mask = (1 << self.k) - 1
        self._address_bits = config.address_bits
        self._tags = [[0] * self._ways for _ in range(geometry.sets)]
        self._valid = [[False] * self._ways for _ in range(geometry.sets)]
        # way indices ordered least-recent first; empty ways start at the
        # front so fills consume them before any eviction
        self._order = [list(range(self._ways)) for _ in range(geometry.sets)]

    def lru_ranks(self, set_index: int) -> list[int]:
        """Rank of each way (0 = least recently used); a permutation."""
        ranks = [0] * self._ways
        for rank, way in enumerate(self._order[set_index]):
            ranks[way] = rank
        return ranks

    def contents(self, set_index: int) -> list[tuple[bool, int, int]]:
        """Per-way (valid, tag, lru_rank) view of one set."""
        ranks = self.lru_ranks(set_index)
        return [
            (self._valid[set_index][w], self._tags[set_index][w], ranks[w])
            for w in range(self._ways)
        ]

    def access(self, address: int, stats: SimStats) -> bool:
        """Look up one address, updating state and counters; True on hit."""
        address = int(address)
        if address < 0 or address >> self._address_bits:
            raise ValueError(
                f"address {address:#x} outside the {self._address_bits}-bit space"
            )
        block = address >> self._offset_bits
        set_index = block & self._index_mask
        tag = block >> self._index_bits
        prefix = tag & self._prefix_mask
        tags = self._tags[set_index]
        valid = self._valid[set_index]
        prefix_mask = self._prefix_mask
        survivors = 0
        hit_way = -1
        for way in range(self._ways):
            if valid[way] and (tags[way] & prefix_mask) == prefix:
                survivors += 1
                if tags[way] == tag:
                    hit_way = way
        if self.debug:
            one_step = any(v and t == tag for v, t in zip(valid, tags))
            if one_step != (hit_way >= 0):
                raise AssertionError(
                    f"two-step outcome diverged from single-step comparison at "
                    f"address {address:#x}"
                )
        order = self._order[set_index]
        if hit_way >= 0:
            stats.hits += 1
            order.remove(hit_way)
            order.append(hit_way)
        else:
            stats.misses += 1
            victim = order.pop(0)
            tags[victim] = tag
            valid[victim] = True
            order.append(victim)
        stats.accesses += 1
        stats.step1_bit_reads += self.k * self._ways
        stats.step2_bit_reads += survivors * (self.geometry.tag_bits - self.k)
        stats.baseline_bit_reads += self.geometry.tag_bits * self._ways
        stats.matched_way_histogram[survivors] += 1
        return hit_way >= 0


def _as_int_list(trace) -> list[int]:
    if isinstance(trace, np.ndarray):
        return trace.tolist()
    return [int(a) for a in trace]


def run_trace(state: CacheState, trace) -> SimStats:
    """Fold every address of the trace through state.access."""
    addresses = _as_int_list(trace)
    if not addresses:
        raise ValueError("cannot simulate an empty trace")
    stats = SimStats(ways=state.config.associativity)
    access = state.access
    for address in addresses:
        access(address, stats)
    return stats


def trace_outcomes(state: CacheState, trace) -> list[bool]:
    """Per-access hit/miss sequence (True on hit) for the trace."""
    addresses = _as_int_list(trace)
    if not addresses:
        raise ValueError("cannot simulate an empty trace")
    stats = SimStats(ways=state.config.associativity)
    access = state.access
    return [access(address, stats) for address in addresses]


def warm_fill(state: CacheState) -> None:
    """Fill the cache deterministically so every way holds a valid tag.

    Walks sets*ways distinct blocks (tag t into set s for each pair),
    which fills the whole array when the tag space has at least as many
    values as there are ways.  Statistics of the warm-up accesses are
    discarded.
    """
    geometry = state.geometry
    scratch = SimStats(ways=state.config.associativity)
    distinct_tags = min(state.config.associativity, 1 << geometry.tag_bits)
    for tag in range(distinct_tags):
        for set_index in range(geometry.sets):
            address = ((tag << geometry.index_bits) | set_index) << geometry.offset_bits
            state.access(address, scratch)


def baseline_outcomes(config: CacheConfig, trace) -> list[bool]:
    """Hit/miss sequence of a conventional single-step comparison.

    Independent reference implementation: each set is a list of
    resident tags in least-recent-first order and lookups compare full
    tags directly, with no prefix machinery at all.
    """
    geometry = derive_geometry(config)
    ways = config.associativity
    offset_bits = geometry.offset_bits
    index_bits = geometry.index_bits
    index_mask = geometry.sets - 1
    resident: list[list[int]] = [[] for _ in range(geometry.sets)]
    outcomes = []
    for address in _as_int_list(trace):
        block = address >> offset_bits
        line = resident[block & index_mask]
        tag = block >> index_bits
        hit = tag in line
        if hit:
            line.remove(tag)
        elif len(line) == ways:
            line.pop(0)
        line.append(tag)
        outcomes.append(hit)
    return outcomes


def invariance_check(config: CacheConfig, trace, k_values) -> bool:
    """True iff every splitting point reproduces the baseline outcomes.

    Runs the trace once per k from a cold cache and compares the full
    per-access hit/miss sequence (not just the totals) against the
    single-step reference.
    """
    addresses = _as_int_list(trace)
    reference = baseline_outcomes(config, addresses)
    for k in k_values:
        state = CacheState(config, k)
        if trace_outcomes(state, addresses) != reference:
            return False
    return True
