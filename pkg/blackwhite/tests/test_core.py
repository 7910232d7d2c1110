# File: blackwhite/tests/test_core.py
import random
from dataclasses import dataclass, field

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from sortedcontainers import SortedList

from blackwhite.core import (VOID, BlackWhiteArray, Bound, CapacityExceeded, Color, Extreme,
                             GrowthPolicy, InvalidCapacity, InvalidIndex, InvalidInterval,
                             InvalidRank, SegmentRef, incremental_sort, k_smallest, seg_bounds)

EIGHT_INSERTS = [83, 67, 59, 21, 76, 33, 45, 52]
HOLEY_INSERTS = [83, 6, 59, 8, 67, 52, 70, 50, 21, 91, 80, 77, 45, 82]
HOLES = [8, 50, 70, 80]


@dataclass(order=True)
class Tagged:
    key: int
    tag: str = field(compare=False)


def holey_state():
    bwa = BlackWhiteArray(4)
    bwa.extend(HOLEY_INSERTS)
    for value in HOLES:
        bwa.delete(value)
    return bwa


def merge_tree_post_order(height):
    if height == 0:
        return []
    below = merge_tree_post_order(height - 1)
    return below + below + [height - 1]


class LayoutTests(SimpleTestCase):

    def test_seg_bounds(self):
        self.assertEqual(seg_bounds(0), SegmentRef(0, 1, 1))
        self.assertEqual(seg_bounds(3), SegmentRef(3, 8, 15))
        self.assertEqual(seg_bounds(3).size, 8)

    def test_seg_bounds_checks_capacity(self):
        bwa = BlackWhiteArray(4)
        self.assertEqual(bwa.seg_bounds(3), SegmentRef(3, 8, 15))
        with self.assertRaises(InvalidRank):
            bwa.seg_bounds(4)
        with self.assertRaises(ValueError):
            bwa.is_active(-1)

    def test_new_structure_is_empty(self):
        bwa = BlackWhiteArray(4)
        self.assertEqual(len(bwa.white), 16)
        self.assertEqual(len(bwa.black), 8)
        self.assertEqual(bwa.total, 0)
        self.assertEqual(len(bwa), 0)
        self.assertFalse(bwa)
        self.assertEqual(bwa.dump(), [])
        self.assertEqual(bwa.validate(), [])

    def test_capacity_must_be_positive(self):
        with self.assertRaises(InvalidCapacity):
            BlackWhiteArray(0)

    def test_rank_of(self):
        bwa = BlackWhiteArray(4)
        self.assertEqual(bwa.rank_of(1), 0)
        self.assertEqual(bwa.rank_of(5), 2)
        self.assertEqual(bwa.rank_of(15), 3)
        for index in (0, 16):
            with self.assertRaises(InvalidIndex):
                bwa.rank_of(index)

    def test_white_is_twice_black_at_every_capacity(self):
        for cap_exp in range(1, 13):
            bwa = BlackWhiteArray(cap_exp)
            self.assertEqual(len(bwa.white), 2 * len(bwa.black))

    def test_white_stays_twice_black_after_growth(self):
        bwa = BlackWhiteArray(1)
        bwa.extend(range(100))
        self.assertEqual(len(bwa.white), 2 * len(bwa.black))
        self.assertEqual(bwa.cap_exp, 7)


class InsertTests(SimpleTestCase):

    def test_first_insert_goes_to_rank_zero(self):
        bwa = BlackWhiteArray(4)
        bwa.insert(5)
        self.assertEqual(bwa.total, 1)
        self.assertEqual(bwa.white[1], 5)
        self.assertEqual(bwa.counters.merges, 0)

    def test_second_insert_merges_into_rank_one(self):
        bwa = BlackWhiteArray(4)
        bwa.insert(5)
        bwa.insert(3)
        self.assertEqual(bwa.total, 2)
        self.assertEqual(bwa.white[2:4], [3, 5])
        self.assertFalse(bwa.is_active(0))
        self.assertEqual(bwa.counters.merges, 1)

    def test_walkthrough_of_eight_inserts(self):
        bwa = BlackWhiteArray(4, trace_merges=True)
        bwa.extend(EIGHT_INSERTS[:-1])
        self.assertEqual(bwa.total, 7)
        merges_before = bwa.counters.merges

        bwa.insert(EIGHT_INSERTS[-1])

        self.assertEqual(bwa.total, 8)
        self.assertEqual(bwa.white[8:16], [21, 33, 45, 52, 59, 67, 76, 83])
        self.assertEqual(bwa.white[8], min(EIGHT_INSERTS))
        self.assertEqual(bwa.white[15], max(EIGHT_INSERTS))
        self.assertEqual(bwa.counters.merges - merges_before, 3)
        self.assertEqual(bwa.merge_log[-3:], [(0, Color.BLACK), (1, Color.BLACK), (2, Color.WHITE)])
        self.assertEqual(bwa.dump(), ['rank=3 [21,33,45,52,59,67,76,83]'])

    def test_duplicates_are_kept(self):
        bwa = BlackWhiteArray(4)
        bwa.extend([4, 4, 2, 4])
        self.assertEqual(list(bwa), [2, 4, 4, 4])
        self.assertEqual(bwa.interval(4, 4), [4, 4, 4])

    def test_equal_keys_take_black_first(self):
        bwa = BlackWhiteArray(4)
        bwa.insert(Tagged(5, 'white'))
        bwa.insert(Tagged(5, 'black'))
        self.assertEqual([item.tag for item in bwa.white[2:4]], ['black', 'white'])

    def test_equal_keys_take_black_first_when_runs_interleave(self):
        bwa = BlackWhiteArray(4)
        bwa.extend([Tagged(1, 'w1'), Tagged(3, 'w3'), Tagged(1, 'b1'), Tagged(3, 'b3')])
        self.assertEqual([item.tag for item in bwa.white[4:8]], ['b1', 'w1', 'b3', 'w3'])
        self.assertEqual(bwa.validate(), [])

    def test_fixed_policy_refuses_overflow_without_mutating(self):
        bwa = BlackWhiteArray(2, GrowthPolicy.FIXED)
        bwa.extend([3, 1, 2])
        before = (list(bwa.white), list(bwa.black), bwa.total, list(bwa.occupancy))

        with self.assertRaises(CapacityExceeded):
            bwa.insert(0)

        self.assertEqual((list(bwa.white), list(bwa.black), bwa.total, list(bwa.occupancy)), before)

    def test_grow_policy_doubles_on_overflow(self):
        bwa = BlackWhiteArray(2)
        bwa.extend([3, 1, 2, 0])
        self.assertEqual(bwa.cap_exp, 3)
        self.assertEqual(bwa.counters.grows, 1)
        self.assertEqual(list(bwa), [0, 1, 2, 3])
        self.assertEqual(bwa.validate(), [])

    def test_merge_ranks_follow_post_order(self):
        for height in range(1, 7):
            bwa = BlackWhiteArray(height + 1, trace_merges=True)
            bwa.extend(range(1 << height, 0, -1))
            self.assertEqual([rank for rank, _ in bwa.merge_log], merge_tree_post_order(height))

    def test_insert_comparisons_grow_like_n_log_n(self):
        rng = random.Random(11)
        counts = {}
        for m in (10, 11):
            bwa = BlackWhiteArray(m + 1, GrowthPolicy.FIXED)
            bwa.extend(rng.randrange(1 << 30) for _ in range(1 << m))
            counts[m] = bwa.counters.comparisons
            self.assertLessEqual(counts[m], 2 * m * (1 << m))
        self.assertLessEqual(counts[11] / counts[10], 2.4)


class SearchTests(SimpleTestCase):

    def test_search_empty(self):
        self.assertIsNone(BlackWhiteArray(4).search(7))

    def test_search_returns_white_index(self):
        bwa = BlackWhiteArray(4)
        bwa.extend(EIGHT_INSERTS)
        self.assertEqual(bwa.search(21), 8)
        self.assertEqual(bwa.search(83), 15)
        self.assertIsNone(bwa.search(22))
        self.assertIn(52, bwa)
        self.assertNotIn(53, bwa)

    def test_search_steps_over_voids(self):
        bwa = holey_state()
        for value in (6, 52, 59, 67, 83, 21, 77, 91, 45, 82):
            index = bwa.search(value)
            self.assertIsNotNone(index, value)
            self.assertEqual(bwa.white[index], value)
        for value in HOLES:
            self.assertIsNone(bwa.search(value))

    def test_hit_in_perfect_configuration_costs_at_most_m_plus_2(self):
        m = 8
        values = random.Random(3).sample(range(1 << 20), 1 << m)
        bwa = BlackWhiteArray.from_values(values)
        self.assertEqual(len(bwa.segments()), 1)
        for value in values:
            bwa.counters.reset()
            self.assertIsNotNone(bwa.search(value))
            self.assertLessEqual(bwa.counters.comparisons, m + 2)

    def test_miss_costs_at_most_m_plus_2_squared(self):
        m = 8
        rng = random.Random(5)
        for _ in range(20):
            total = rng.randrange(1, 1 << m)
            bwa = BlackWhiteArray.from_values([2 * rng.randrange(1 << 20) for _ in range(total)])
            for _ in range(20):
                bwa.counters.reset()
                self.assertIsNone(bwa.search(2 * rng.randrange(1 << 20) + 1))
                self.assertLessEqual(bwa.counters.comparisons, (m + 2) ** 2)


class DeleteTests(SimpleTestCase):

    def test_delete_from_rank_zero(self):
        bwa = BlackWhiteArray(4)
        bwa.insert(5)
        self.assertEqual(bwa.delete(5), 1)
        self.assertEqual(bwa.total, 0)
        self.assertEqual(len(bwa), 0)
        self.assertEqual(bwa.dump(), [])

    def test_delete_missing_value_changes_nothing(self):
        bwa = BlackWhiteArray(4)
        bwa.extend(EIGHT_INSERTS)
        self.assertIsNone(bwa.delete(60))
        self.assertEqual(bwa.total, 8)
        self.assertEqual(len(bwa), 8)

    def test_delete_leaves_void_above_half(self):
        bwa = BlackWhiteArray(4)
        bwa.extend([1, 2, 3, 4])
        self.assertEqual(bwa.delete(1), 4)
        self.assertIs(bwa.white[4], VOID)
        self.assertEqual(bwa.total, 4)
        self.assertEqual(bwa.dump(), ['rank=2 [·,2,3,4]'])

    def test_demotion_into_inactive_rank(self):
        bwa = BlackWhiteArray(4)
        bwa.extend([1, 2, 3, 4])
        bwa.delete(1)
        bwa.delete(2)
        self.assertEqual(bwa.total, 2)
        self.assertEqual(bwa.dump(), ['rank=1 [3,4]'])
        self.assertEqual(bwa.counters.demotes, 1)
        self.assertEqual(bwa.validate(), [])

    def test_walkthrough_demotion_merges_back_up(self):
        bwa = holey_state()
        self.assertEqual(bwa.total, 14)
        self.assertEqual(bwa.white[8:16], [6, VOID, VOID, 52, 59, 67, VOID, 83])
        self.assertEqual(bwa.white[4:8], [21, 77, VOID, 91])
        self.assertEqual(bwa.white[2:4], [45, 82])
        counters = bwa.counters.snapshot()

        self.assertEqual(bwa.delete(59), 12)

        self.assertEqual(bwa.total, 10)
        self.assertEqual(bwa.white[8:16], [6, 21, 52, 67, 77, 83, 91, VOID])
        self.assertFalse(bwa.is_active(2))
        self.assertEqual(bwa.white[2:4], [45, 82])
        self.assertEqual(bwa.counters.demotes - counters['demotes'], 1)
        self.assertEqual(bwa.counters.merges - counters['merges'], 1)
        self.assertEqual(bwa.stats().occupancy[3], 7 / 8)
        self.assertEqual(bwa.validate(), [])

    def test_demotion_leaves_segment_three_quarters_full_or_full(self):
        rng = random.Random(17)
        bwa = DemoteRecorder(6)
        live = []
        for _ in range(3000):
            if live and rng.random() < 0.45:
                value = live.pop(rng.randrange(len(live)))
                demotes = bwa.counters.demotes
                bwa.delete(value)
                self.assertLessEqual(bwa.counters.demotes - demotes, 1)
                if bwa.demoted is not None:
                    rank = bwa.demoted
                    if bwa.is_active(rank):
                        self.assertGreater(bwa.occupancy[rank] / (1 << rank), 0.75)
                    else:
                        self.assertEqual(bwa.occupancy[rank - 1], 1 << (rank - 1))
                    bwa.demoted = None
            else:
                value = rng.randrange(1000)
                live.append(value)
                bwa.insert(value)
            self.assertEqual(bwa.validate(), [])
        self.assertGreater(bwa.counters.demotes, 0)


class DemoteRecorder(BlackWhiteArray):
    demoted = None

    def _demote(self, rank):
        super()._demote(rank)
        self.demoted = rank


class AugmentationTests(SimpleTestCase):

    def test_extremes(self):
        bwa = holey_state()
        self.assertEqual(bwa.extreme(Extreme.MIN), 6)
        self.assertEqual(bwa.extreme(Extreme.MAX), 91)
        self.assertIsNone(BlackWhiteArray(2).extreme())

    def test_extract_drains_in_order(self):
        values = [9, 4, 7, 1, 8, 1]
        bwa = BlackWhiteArray.from_values(values)
        drained = [bwa.extract(Extreme.MIN) for _ in values]
        self.assertEqual(drained, sorted(values))
        self.assertIsNone(bwa.extract())
        self.assertEqual(bwa.validate(), [])

    def test_extract_max(self):
        bwa = holey_state()
        self.assertEqual(bwa.extract(Extreme.MAX), 91)
        self.assertEqual(bwa.extract('max'), 83)
        self.assertNotIn(91, bwa)

    def test_bound(self):
        bwa = holey_state()
        self.assertEqual(bwa.bound(52, Bound.LOWER), 59)
        self.assertEqual(bwa.bound(53, Bound.LOWER), 59)
        self.assertEqual(bwa.bound(52, Bound.UPPER), 45)
        self.assertIsNone(bwa.bound(91, Bound.LOWER))
        self.assertIsNone(bwa.bound(6, Bound.UPPER))
        self.assertEqual(bwa.bound(0, 'lower'), 6)

    def test_interval(self):
        bwa = holey_state()
        self.assertEqual(bwa.interval(21, 67), [21, 45, 52, 59, 67])
        self.assertEqual(bwa.interval(92, 100), [])
        self.assertEqual(bwa.interval(50, 50), [])
        with self.assertRaises(InvalidInterval):
            bwa.interval(10, 5)

    def test_iter_sorted_merges_segments(self):
        bwa = holey_state()
        self.assertEqual(list(bwa.iter_sorted()), [6, 21, 45, 52, 59, 67, 77, 82, 83, 91])
        self.assertEqual(len(bwa), 10)

    def test_stats(self):
        bwa = holey_state()
        stats = bwa.stats()
        self.assertEqual(stats.length, 10)
        self.assertEqual(stats.slot_count, 14)
        self.assertEqual(stats.capacity, 16)
        self.assertEqual(stats.occupancy, {3: 5 / 8, 2: 3 / 4, 1: 1.0})

    def test_dump_marks_voids(self):
        self.assertEqual(holey_state().dump(), [
            'rank=3 [6,·,·,52,59,67,·,83]',
            'rank=2 [21,77,·,91]',
            'rank=1 [45,82]',
        ])

    def test_counters_reset(self):
        bwa = BlackWhiteArray(4)
        bwa.extend(EIGHT_INSERTS)
        self.assertGreater(bwa.counters.snapshot()['merges'], 0)
        bwa.counters.reset()
        self.assertEqual(bwa.counters.snapshot(),
                         {'comparisons': 0, 'moves': 0, 'merges': 0, 'demotes': 0, 'grows': 0})

    def test_incremental_sort_and_k_smallest(self):
        self.assertEqual(incremental_sort([3, 1, 2]), [1, 2, 3])
        self.assertEqual(incremental_sort([]), [])
        self.assertEqual(k_smallest([5, 3, 9, 1], 2), [1, 3])
        self.assertEqual(k_smallest([5, 3], 4), [3, 5])

    def test_any_ordered_type(self):
        bwa = BlackWhiteArray(3)
        bwa.extend(['pear', 'apple', 'fig'])
        self.assertEqual(list(bwa), ['apple', 'fig', 'pear'])
        self.assertIsNotNone(bwa.search('fig'))


class ValidateTests(SimpleTestCase):

    def test_detects_unsorted_segment(self):
        bwa = SwappingMerge(4)
        bwa.extend([1, 2])
        self.assertIn('rank 1 is not sorted', bwa.validate())

    def test_detects_total_mismatch(self):
        bwa = BlackWhiteArray(4)
        bwa.extend(EIGHT_INSERTS)
        bwa.total += 1
        problems = bwa.validate()
        self.assertTrue(any('does not match occupied segments' in p for p in problems), problems)

    def test_detects_occupancy_at_half(self):
        bwa = BlackWhiteArray(4)
        bwa.extend([1, 2, 3, 4])
        bwa.white[4] = bwa.white[5] = VOID
        bwa.occupancy[2] = 2
        self.assertIn('rank 2 occupancy 2/4 is not above half', bwa.validate())


class SwappingMerge(BlackWhiteArray):
    """Merges into white correctly, then swaps the first two values."""

    def _merge_segments(self, rank, dest):
        written = super()._merge_segments(rank, dest)
        if dest is Color.WHITE and written >= 2:
            start = 2 << rank
            self.white[start], self.white[start + 1] = self.white[start + 1], self.white[start]
        return written


class PropertyTests(SimpleTestCase):

    @settings(deadline=None)
    @given(st.lists(st.integers(-1000, 1000), max_size=200))
    def test_incremental_sort_matches_sorted(self, values):
        self.assertEqual(incremental_sort(values, cap_exp=1), sorted(values))

    @settings(deadline=None)
    @given(st.lists(st.integers(-50, 50), max_size=150))
    def test_from_values_matches_sequential_inserts(self, values):
        built = BlackWhiteArray.from_values(values)
        inserted = BlackWhiteArray(1)
        inserted.extend(values)
        self.assertEqual(built.total, inserted.total)
        self.assertEqual(built.occupancy, inserted.occupancy)
        self.assertEqual(built.dump(), inserted.dump())

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.booleans(), st.integers(0, 40)), max_size=300))
    def test_mixed_inserts_and_deletes_keep_invariants(self, steps):
        bwa = BlackWhiteArray(2)
        model = SortedList()
        for is_insert, value in steps:
            if is_insert:
                bwa.insert(value)
                model.add(value)
            else:
                found = bwa.delete(value) is not None
                self.assertEqual(found, value in model)
                if found:
                    model.remove(value)
            self.assertEqual(bwa.validate(), [])
        self.assertEqual(list(bwa), list(model))
