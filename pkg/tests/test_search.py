"""Search pipeline tests.

The oracle enumerates every jump set by nested loops, measures each with an
independent queue BFS, and sorts by (diameter, distance sum, -bisection).
"""

import itertools
from collections import deque

import pytest

from circnet.combinatorics import binomial
from circnet.metrics import bisection_exact
from circnet.search import (
    RankRange,
    SearchConfig,
    count_space,
    merge,
    partition_ranks,
    run_search,
    scan_range,
    search_optimal,
)
from circnet.topology import JumpSet, adam_multiply, circulant, jump_space


def bfs_profile_oracle(n, jumps):
    """(diameter, dist sum) by deque BFS on explicit adjacency, or None."""
    adj = [set() for _ in range(n)]
    for i in range(n):
        for s in jumps:
            adj[i].add((i + s) % n)
            adj[i].add((i - s) % n)
    dist = {0: 0}
    q = deque([0])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    if len(dist) != n:
        return None
    return max(dist.values()), sum(dist.values())


def all_jump_sets(n, k):
    """Every degree-k jump set on n vertices, by nested enumeration."""
    r = k // 2
    hi = (n - 1) // 2
    fixed = (n // 2,) if k % 2 else ()
    for combo in itertools.combinations(range(1, hi + 1), r):
        yield tuple(sorted(fixed + combo))


def enumeration_oracle(n, k, exact_limit=32):
    """Optimal jump sets by full enumeration: minimize (D, dist sum), then
    keep the maximum exact bisection width among the ties."""
    best = None
    ties = []
    for jumps in all_jump_sets(n, k):
        profile = bfs_profile_oracle(n, jumps)
        if profile is None:
            continue
        if best is None or profile < best:
            best = profile
            ties = [jumps]
        elif profile == best:
            ties.append(jumps)
    scored = [(bisection_exact(circulant(JumpSet(n, j)), exact_limit), j) for j in ties]
    top = max(bw for bw, _ in scored)
    return best, sorted(j for bw, j in scored if bw == top)


class TestCountSpace:
    def test_large_reduced(self):
        assert count_space(1024, 10, reduced=True) == 2_785_790_085

    def test_small_reduced(self):
        assert count_space(32, 4, reduced=True) == 14

    def test_small_unreduced(self):
        assert count_space(8, 4, reduced=False) == 3

    def test_consistent_with_plan(self):
        plan = jump_space(128, 7)
        assert count_space(128, 7) == binomial(plan.hi - plan.lo + 1, plan.r)


class TestPartitionRanks:
    def test_remainder_first(self):
        assert partition_ranks(10, 3) == [
            RankRange(0, 4), RankRange(4, 7), RankRange(7, 10),
        ]

    def test_unit_ranges(self):
        assert partition_ranks(6, 6) == [RankRange(i, i + 1) for i in range(6)]

    def test_more_workers_than_work(self):
        ranges = partition_ranks(5, 8)
        assert [r.size for r in ranges] == [1, 1, 1, 1, 1, 0, 0, 0]
        assert ranges[-1] == RankRange(5, 5)

    def test_tiles_the_space(self):
        for total, workers in [(0, 3), (17, 4), (100, 7), (3, 1)]:
            ranges = partition_ranks(total, workers)
            assert ranges[0].start == 0 and ranges[-1].end == total
            for a, b in zip(ranges, ranges[1:]):
                assert a.end == b.start

    def test_workers_positive(self):
        with pytest.raises(ValueError):
            partition_ranks(5, 0)


class TestScanRange:
    def test_full_scan_32_4(self):
        res = scan_range(32, 4, RankRange(0, count_space(32, 4)))
        assert (res.best_diameter, res.best_dist_sum) == (4, 84)
        assert any(js.jumps == (1, 7) for js in res.candidates)
        assert res.scanned == 14

    def test_small_space_brute(self):
        res = scan_range(8, 4, RankRange(0, 3), reduced=False)
        assert any(js.jumps == (1, 3) for js in res.candidates)
        assert res.best_diameter == 2

    def test_empty_range(self):
        res = scan_range(32, 4, RankRange(5, 5))
        assert res.scanned == 0 and res.candidates == () and res.best_diameter is None

    def test_disconnected_candidates_skipped_but_counted(self):
        # unreduced (8,4): {2,3} is counted, {1,2},{1,3},{2,3} all scanned
        res = scan_range(8, 4, RankRange(0, 3), reduced=False)
        assert res.scanned == 3

    def test_profiles_match_oracle(self):
        for jumps in all_jump_sets(20, 4):
            res = scan_range(20, 4, RankRange(0, count_space(20, 4, False)), reduced=False)
            break
        oracle_best = min(
            p for j in all_jump_sets(20, 4) if (p := bfs_profile_oracle(20, j))
        )
        assert (res.best_diameter, res.best_dist_sum) == oracle_best


class TestMerge:
    def test_partition_merge_equals_full_scan(self):
        total = count_space(64, 6)
        full = scan_range(64, 6, RankRange(0, total))
        for workers in (1, 2, 5, 16):
            parts = [scan_range(64, 6, r) for r in partition_ranks(total, workers)]
            merged = merge(parts)
            assert (merged.best_diameter, merged.best_dist_sum) == (
                full.best_diameter, full.best_dist_sum,
            )
            assert merged.candidates == full.candidates
            assert merged.scanned == total

    def test_identity(self):
        r = scan_range(32, 4, RankRange(0, 14))
        m = merge([r])
        assert (m.best_diameter, m.best_dist_sum, m.candidates) == (
            r.best_diameter, r.best_dist_sum, r.candidates,
        )

    def test_tie_union(self):
        a = scan_range(32, 4, RankRange(0, 7))
        b = scan_range(32, 4, RankRange(7, 14))
        m = merge([a, b])
        assert set(m.candidates) >= set(a.candidates) or set(m.candidates) >= set(
            b.candidates
        )

    def test_mixed_spaces_rejected(self):
        a = scan_range(32, 4, RankRange(0, 1))
        b = scan_range(64, 4, RankRange(0, 1))
        with pytest.raises(ValueError):
            merge([a, b])


class TestSearchOptimal:
    def test_32_4(self):
        recs = search_optimal(32, 4, SearchConfig(workers=1))
        jumps = [r.jumps.jumps for r in recs]
        assert (1, 7) in jumps
        m = recs[0].metrics
        assert m.diameter == 4 and round(float(m.mpl), 2) == 2.71 and m.bisection == 16

    def test_16_4(self):
        recs = search_optimal(16, 4, SearchConfig(workers=1))
        assert (1, 6) in [r.jumps.jumps for r in recs]

    def test_complete_graph_degree(self):
        recs = search_optimal(8, 7, SearchConfig(workers=1))
        assert [r.jumps.jumps for r in recs] == [(1, 2, 3, 4)]
        assert recs[0].metrics.diameter == 1

    def test_oracle_equivalence_small(self):
        for n, k in [(10, 4), (12, 4), (12, 5), (14, 4), (16, 5)]:
            recs = search_optimal(n, k, SearchConfig(workers=1, reduced=False))
            (want_d, want_s), want_jumps = enumeration_oracle(n, k)
            assert [r.jumps.jumps for r in recs] == want_jumps, (n, k)
            assert recs[0].metrics.diameter == want_d
            assert recs[0].metrics.dist_sum == want_s

    def test_reduction_soundness(self):
        for n, k in [(16, 4), (16, 5), (32, 4), (32, 5), (64, 4), (64, 5)]:
            total_r = count_space(n, k, True)
            total_f = count_space(n, k, False)
            red = merge([scan_range(n, k, r) for r in partition_ranks(total_r, 3)])
            full = merge(
                [scan_range(n, k, r, reduced=False) for r in partition_ranks(total_f, 3)]
            )
            assert (red.best_diameter, red.best_dist_sum) == (
                full.best_diameter, full.best_dist_sum,
            )
            reduced_set = {js.jumps for js in red.candidates}
            for js in full.candidates:
                odd = [s for s in js.jumps if s % 2 == 1]
                images = {
                    adam_multiply(js, pow(s, -1, n)).jumps for s in odd
                }
                assert images & reduced_set, (n, k, js.jumps)

    def test_progress_accounting(self):
        _, merged = run_search(64, 6, SearchConfig(workers=5, restarts=4))
        assert merged.scanned == count_space(64, 6)

    def test_infeasible_degree_propagates(self):
        with pytest.raises(Exception):
            search_optimal(9, 5)
