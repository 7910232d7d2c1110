# File: blackwhite/core.py
"""Black-white array: an ordered multiset kept in two arrays of sorted segments.

The white array holds the data. A white segment of rank ``i`` covers the
indices ``[2**i, 2**(i+1) - 1]`` and is *active* exactly when bit ``i`` of
``total`` is set. The black array, half the length of the white one, is
scratch space used while two segments of equal rank are merged into the
next rank up.

Deleted values are replaced in place by the ``VOID`` marker. ``VOID`` is not
an element, merges and searches step over it, and every active segment of
rank 1 or more keeps more than half of its slots occupied.

A structure is not synchronised. Mutating calls need exclusive access; the
read-only calls (search, extreme, bound, interval, iter_sorted, stats,
validate, dump) may share it between threads while nobody writes.
"""
from __future__ import annotations

import enum
import heapq
import logging
from dataclasses import dataclass, fields
from typing import Any, Dict, Generic, Iterable, Iterator, List, NamedTuple, Optional, Tuple, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar('T')


class _Void:
    """Marker for a white slot whose value was deleted."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'VOID'

    def __reduce__(self):
        return (_Void, ())


VOID = _Void()


class BlackWhiteArrayError(Exception):
    """Base class for errors raised by the black-white array."""


class CapacityExceeded(BlackWhiteArrayError):
    """Raised by a fixed-capacity structure that has no free slot left."""


class InvalidRank(BlackWhiteArrayError, ValueError):
    pass


class InvalidIndex(BlackWhiteArrayError, ValueError):
    pass


class InvalidCapacity(BlackWhiteArrayError, ValueError):
    pass


class InvalidInterval(BlackWhiteArrayError, ValueError):
    pass


class GrowthPolicy(str, enum.Enum):
    GROW = 'grow'
    FIXED = 'fixed'


class Color(str, enum.Enum):
    BLACK = 'black'
    WHITE = 'white'


class Extreme(str, enum.Enum):
    MIN = 'min'
    MAX = 'max'


class Bound(str, enum.Enum):
    LOWER = 'lower'  # smallest value strictly greater than the probe
    UPPER = 'upper'  # largest value strictly smaller than the probe


class SegmentRef(NamedTuple):
    rank: int
    start: int
    end: int

    @property
    def size(self) -> int:
        return self.end - self.start + 1


@dataclass
class Counters:
    """Instrumentation counters. They only ever grow until reset()."""

    comparisons: int = 0
    moves: int = 0
    merges: int = 0
    demotes: int = 0
    grows: int = 0

    def reset(self) -> None:
        for f in fields(self):
            setattr(self, f.name, 0)

    def snapshot(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class Stats:
    length: int
    slot_count: int
    occupancy: Dict[int, float]
    capacity: int


def seg_bounds(rank: int) -> SegmentRef:
    """Index range of the segment of ``rank``, with no capacity check."""
    return SegmentRef(rank, 1 << rank, (1 << (rank + 1)) - 1)


def _capacity_exponent(count: int) -> int:
    # 2**k slots hold at most 2**k - 1 values
    return max(1, count.bit_length())


class BlackWhiteArray(Generic[T]):
    """Ordered multiset over any totally ordered element type.

    Args:
        cap_exp: capacity exponent ``k``; the white array gets ``2**k`` slots
            and the black array ``2**(k-1)``.
        policy: ``GrowthPolicy.GROW`` doubles both arrays on overflow,
            ``GrowthPolicy.FIXED`` raises ``CapacityExceeded`` instead.
        trace_merges: keep ``(rank, destination)`` for every merge in
            ``merge_log``.
    """

    def __init__(self, cap_exp: int = 10, policy: GrowthPolicy = GrowthPolicy.GROW, *,
                 trace_merges: bool = False):
        if cap_exp < 1:
            raise InvalidCapacity(f"cap_exp must be at least 1, got {cap_exp}")
        self.cap_exp = cap_exp
        self.policy = GrowthPolicy(policy)
        self.white: List[Any] = [VOID] * (1 << cap_exp)
        self.black: List[Any] = [VOID] * (1 << (cap_exp - 1))
        self.total = 0
        self.occupancy: List[int] = [0] * cap_exp
        self.counters = Counters()
        self.merge_log: Optional[List[Tuple[int, Color]]] = [] if trace_merges else None

    @classmethod
    def from_values(cls, values: Iterable[T], cap_exp: Optional[int] = None,
                    policy: GrowthPolicy = GrowthPolicy.GROW) -> 'BlackWhiteArray[T]':
        """Build the state that inserting ``values`` one by one would leave.

        After ``n`` inserts the first ``2**m`` values (``m`` the highest set bit
        of ``n``) sit sorted in the rank-``m`` segment, the next chunk in the
        rank of the next set bit, and so on down.
        """
        values = list(values)
        count = len(values)
        needed = _capacity_exponent(count)
        if cap_exp is None:
            cap_exp = needed
        elif cap_exp < needed:
            if GrowthPolicy(policy) is GrowthPolicy.FIXED:
                raise CapacityExceeded(
                    f"{count} values do not fit a fixed structure of capacity 2**{cap_exp}")
            cap_exp = needed

        bwa = cls(cap_exp, policy)
        offset = 0
        for rank in reversed(range(count.bit_length())):
            if count & (1 << rank):
                size = 1 << rank
                bwa.white[size:size << 1] = sorted(values[offset:offset + size])
                bwa.occupancy[rank] = size
                offset += size
        bwa.total = count
        bwa.counters.moves += count
        return bwa

    # -- layout -----------------------------------------------------------

    @property
    def capacity(self) -> int:
        return 1 << self.cap_exp

    def seg_bounds(self, rank: int) -> SegmentRef:
        if not 0 <= rank < self.cap_exp:
            raise InvalidRank(f"rank {rank} outside 0..{self.cap_exp - 1}")
        return seg_bounds(rank)

    def is_active(self, rank: int) -> bool:
        if not 0 <= rank < self.cap_exp:
            raise InvalidRank(f"rank {rank} outside 0..{self.cap_exp - 1}")
        return bool(self.total & (1 << rank))

    def rank_of(self, index: int) -> int:
        if not 1 <= index < self.capacity:
            raise InvalidIndex(f"index {index} outside 1..{self.capacity - 1}")
        return index.bit_length() - 1

    def _active_ranks(self) -> Iterator[int]:
        """Active ranks, highest first."""
        total = self.total
        rank = total.bit_length() - 1
        while rank >= 0:
            if total & (1 << rank):
                yield rank
            rank -= 1

    def segments(self) -> List[SegmentRef]:
        return [seg_bounds(rank) for rank in self._active_ranks()]

    # -- insert -----------------------------------------------------------

    def insert(self, value: T) -> None:
        if self.total == self.capacity - 1:
            if self.policy is GrowthPolicy.FIXED:
                raise CapacityExceeded(
                    f"structure of capacity 2**{self.cap_exp} already holds "
                    f"{self.total} slots")
            self._grow()

        if not self.total & 1:
            self.white[1] = value
            self.occupancy[0] = 1
            self.counters.moves += 1
        else:
            self.black[1] = value
            self.counters.moves += 1
            # the merge cascade follows the carry chain of total + 1
            rank = 0
            while self.total & (2 << rank):
                self._merge_segments(rank, Color.BLACK)
                rank += 1
            self._merge_segments(rank, Color.WHITE)
        self.total += 1

    def extend(self, values: Iterable[T]) -> None:
        for value in values:
            self.insert(value)

    def _grow(self) -> None:
        size = self.capacity
        self.white.extend([VOID] * size)
        self.black.extend([VOID] * (size >> 1))
        self.occupancy.append(0)
        self.cap_exp += 1
        self.counters.grows += 1
        logger.debug("grew black-white array to capacity 2**%d", self.cap_exp)

    def _merge_segments(self, rank: int, dest: Color) -> int:
        """Merge the black and white segments of ``rank`` into rank + 1 of ``dest``.

        Void slots of both sources are skipped; the merged values are written
        from the bottom of the destination segment and the rest of it is
        padded with VOID. Equal values take the black one first.
        Returns the number of values written.
        """
        start = 1 << rank
        stop = start << 1
        end = stop << 1
        blacks = [x for x in self.black[start:stop] if x is not VOID]
        whites = [x for x in self.white[start:stop] if x is not VOID]
        target = self.white if dest is Color.WHITE else self.black
        nb, nw = len(blacks), len(whites)

        if not nb or not nw:
            merged = blacks or whites
            comparisons = 0
        elif blacks[-1] <= whites[0]:
            merged = blacks + whites
            comparisons = nb
        elif whites[-1] < blacks[0]:
            merged = whites + blacks
            comparisons = nw
        else:
            merged = []
            append = merged.append
            i = j = comparisons = 0
            while i < nb and j < nw:
                comparisons += 1
                if blacks[i] <= whites[j]:
                    append(blacks[i])
                    i += 1
                else:
                    append(whites[j])
                    j += 1
            merged.extend(blacks[i:] if i < nb else whites[j:])

        written = len(merged)
        target[stop:stop + written] = merged
        target[stop + written:end] = [VOID] * (stop - written)

        self.occupancy[rank] = 0
        if dest is Color.WHITE:
            self.occupancy[rank + 1] = written
        counters = self.counters
        counters.comparisons += comparisons
        counters.moves += stop
        counters.merges += 1
        if self.merge_log is not None:
            self.merge_log.append((rank, dest))
        return written

    # -- search -----------------------------------------------------------

    def _nearest_occupied(self, mid: int, lo: int, hi: int) -> Optional[int]:
        """Occupied index closest to ``mid`` in ``[lo, hi)``, probing mid-1, mid+1, mid-2, ..."""
        white = self.white
        if white[mid] is not VOID:
            return mid
        for step in range(1, max(mid - lo, hi - 1 - mid) + 1):
            left = mid - step
            if left >= lo and white[left] is not VOID:
                return left
            right = mid + step
            if right < hi and white[right] is not VOID:
                return right
        return None

    def _partition(self, rank: int, value: T, inclusive: bool) -> Tuple[Optional[int], Optional[int]]:
        """Binary search the white segment of ``rank`` around ``value``.

        Returns ``(below, above)``: the index of the last occupied slot holding
        a value ``< value`` (``<= value`` when inclusive) and the index of the
        first occupied slot after it. Either is None when no such slot exists.
        """
        white = self.white
        lo = 1 << rank
        hi = lo << 1
        below = above = None
        comparisons = 0
        while lo < hi:
            probe = self._nearest_occupied((lo + hi) >> 1, lo, hi)
            if probe is None:
                break
            comparisons += 1
            x = white[probe]
            if (x <= value) if inclusive else (x < value):
                below = probe
                lo = probe + 1
            else:
                above = probe
                hi = probe
        self.counters.comparisons += comparisons
        return below, above

    def _find_in(self, rank: int, value: T) -> Optional[int]:
        _, above = self._partition(rank, value, inclusive=False)
        if above is None:
            return None
        self.counters.comparisons += 1
        return above if self.white[above] == value else None

    def search(self, value: T) -> Optional[int]:
        """White-array index of ``value``, or None.

        Active segments are searched from the highest rank down and the first
        hit wins.
        """
        for rank in self._active_ranks():
            index = self._find_in(rank, value)
            if index is not None:
                return index
        return None

    def __contains__(self, value: object) -> bool:
        return self.search(value) is not None

    # -- delete -----------------------------------------------------------

    def delete(self, value: T) -> Optional[int]:
        """Remove one occurrence of ``value``; return the index it held, or None."""
        index = self.search(value)
        if index is not None:
            self._remove_at(index)
        return index

    def _remove_at(self, index: int) -> None:
        rank = index.bit_length() - 1
        self.white[index] = VOID
        self.counters.moves += 1
        self.occupancy[rank] -= 1
        if rank == 0:
            self.total -= 1
        elif self.occupancy[rank] <= 1 << (rank - 1):
            self._demote(rank)

    def _demote(self, rank: int) -> None:
        """Move the live half of white segment ``rank`` down one rank.

        With rank - 1 active the values go to the black segment of rank - 1 and
        are merged straight back into white ``rank``; otherwise they fill the
        white segment of rank - 1 completely. Either way ``total`` drops by
        ``2**(rank - 1)``.
        """
        half = 1 << (rank - 1)
        start = 1 << rank
        survivors = [x for x in self.white[start:start << 1] if x is not VOID]
        self.counters.demotes += 1
        self.counters.moves += len(survivors)
        if self.total & half:
            self.black[half:half + len(survivors)] = survivors
            self._merge_segments(rank - 1, Color.WHITE)
        else:
            self.white[half:half + len(survivors)] = survivors
            self.occupancy[rank - 1] = len(survivors)
            self.occupancy[rank] = 0
        self.total -= half
        logger.debug("demoted rank %d, total now %d", rank, self.total)

    # -- augmentations ----------------------------------------------------

    def _segment_edge(self, rank: int, side: Extreme) -> Optional[int]:
        white = self.white
        start = 1 << rank
        indices = range((start << 1) - 1, start - 1, -1) if side is Extreme.MAX else range(start, start << 1)
        for index in indices:
            if white[index] is not VOID:
                return index
        return None

    def _locate_extreme(self, side: Extreme) -> Optional[int]:
        side = Extreme(side)
        white = self.white
        best = None
        for rank in self._active_ranks():
            index = self._segment_edge(rank, side)
            if index is None:
                continue
            if best is None:
                best = index
                continue
            self.counters.comparisons += 1
            if side is Extreme.MAX:
                if white[index] > white[best]:
                    best = index
            elif white[index] < white[best]:
                best = index
        return best

    def extreme(self, side: Extreme = Extreme.MIN) -> Optional[T]:
        index = self._locate_extreme(side)
        return None if index is None else self.white[index]

    def extract(self, side: Extreme = Extreme.MIN) -> Optional[T]:
        index = self._locate_extreme(side)
        if index is None:
            return None
        value = self.white[index]
        self._remove_at(index)
        return value

    def bound(self, value: T, side: Bound = Bound.LOWER) -> Optional[T]:
        """Smallest stored value > ``value`` (LOWER) or largest < ``value`` (UPPER)."""
        side = Bound(side)
        white = self.white
        best = None
        for rank in self._active_ranks():
            if side is Bound.LOWER:
                _, index = self._partition(rank, value, inclusive=True)
            else:
                index, _ = self._partition(rank, value, inclusive=False)
            if index is None:
                continue
            candidate = white[index]
            if best is None:
                best = candidate
                continue
            self.counters.comparisons += 1
            if (candidate < best) if side is Bound.LOWER else (candidate > best):
                best = candidate
        return best

    def _run(self, start: int, stop: int) -> List[T]:
        return [x for x in self.white[start:stop] if x is not VOID]

    def interval(self, lo: T, hi: T) -> List[T]:
        """Every stored value in ``[lo, hi]``, ascending, duplicates included."""
        if hi < lo:
            raise InvalidInterval(f"empty interval: {lo!r} > {hi!r}")
        runs = []
        for rank in self._active_ranks():
            _, first = self._partition(rank, lo, inclusive=False)
            if first is None:
                continue
            last, _ = self._partition(rank, hi, inclusive=True)
            if last is None or last < first:
                continue
            runs.append(self._run(first, last + 1))
        if len(runs) == 1:
            return runs[0]
        return list(heapq.merge(*runs))

    def iter_sorted(self) -> Iterator[T]:
        """Ascending iterator over every stored value, built from a k-way merge of the segments."""
        runs = [self._run(1 << rank, 2 << rank) for rank in self._active_ranks()]
        if len(runs) == 1:
            return iter(runs[0])
        return heapq.merge(*runs)

    def __iter__(self) -> Iterator[T]:
        return self.iter_sorted()

    def __len__(self) -> int:
        return sum(self.occupancy)

    def __bool__(self) -> bool:
        return self.total > 0

    def __repr__(self):
        return f"<BlackWhiteArray len={len(self)} total={self.total} cap=2**{self.cap_exp}>"

    # -- introspection ----------------------------------------------------

    def stats(self) -> Stats:
        return Stats(
            length=len(self),
            slot_count=self.total,
            occupancy={rank: self.occupancy[rank] / (1 << rank) for rank in self._active_ranks()},
            capacity=self.capacity,
        )

    def validate(self) -> List[str]:
        """Check every structural invariant; return the violations found (empty when sound)."""
        problems = []
        if len(self.white) != 1 << self.cap_exp:
            problems.append(f"white length {len(self.white)} != 2**{self.cap_exp}")
        if len(self.white) != 2 * len(self.black):
            problems.append(f"white length {len(self.white)} is not twice black length {len(self.black)}")
        if len(self.occupancy) != self.cap_exp:
            problems.append(f"occupancy vector has {len(self.occupancy)} entries, expected {self.cap_exp}")
            return problems
        if not 0 <= self.total <= self.capacity - 1:
            problems.append(f"total {self.total} outside 0..{self.capacity - 1}")

        recount = sum(1 << rank for rank, count in enumerate(self.occupancy) if count)
        if recount != self.total:
            problems.append(f"total {self.total} does not match occupied segments (sum {recount})")
        for rank in range(self.cap_exp):
            size = 1 << rank
            if not self.total & size:
                if self.occupancy[rank]:
                    problems.append(f"rank {rank} inactive but V[{rank}] = {self.occupancy[rank]}")
                continue
            run = self._run(size, size << 1)
            if len(run) != self.occupancy[rank]:
                problems.append(f"rank {rank} holds {len(run)} values but V[{rank}] = {self.occupancy[rank]}")
            if 2 * len(run) <= size:
                problems.append(f"rank {rank} occupancy {len(run)}/{size} is not above half")
            if any(b < a for a, b in zip(run, run[1:])):
                problems.append(f"rank {rank} is not sorted")
        if len(self) > self.total:
            problems.append(f"{len(self)} values exceed slot count {self.total}")
        return problems

    def dump(self) -> List[str]:
        """One ``rank=<r> [v,...]`` line per active segment, highest rank first; VOID shows as ``·``."""
        lines = []
        for rank in self._active_ranks():
            start = 1 << rank
            cells = ('·' if x is VOID else str(x) for x in self.white[start:start << 1])
            lines.append(f"rank={rank} [{','.join(cells)}]")
        return lines


def incremental_sort(values: Iterable[T], cap_exp: int = 10) -> List[T]:
    """Sort by feeding ``values`` one at a time into a black-white array."""
    bwa: BlackWhiteArray[T] = BlackWhiteArray(cap_exp, GrowthPolicy.GROW)
    bwa.extend(values)
    return list(bwa.iter_sorted())


def k_smallest(values: Iterable[T], k: int) -> List[T]:
    """The ``k`` smallest values ascending, by ``k`` successive extractions."""
    bwa = BlackWhiteArray.from_values(values)
    picked = []
    for _ in range(k):
        value = bwa.extract(Extreme.MIN)
        if value is None:
            break
        picked.append(value)
    return picked
