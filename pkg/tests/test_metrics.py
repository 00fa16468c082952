"""Metrics tests.

Oracles: Floyd-Warshall for distances, pure-python bipartition enumeration
for small bisections, and the analytic hypercube/complete/torus cut values.
"""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from circnet.metrics import (
    BisectionInfeasibleError,
    DisconnectedError,
    ExactLimitError,
    MetricsRecord,
    PartitionFileError,
    balanced_partition_cut,
    bfs_distances,
    bisection_exact,
    bisection_heuristic,
    circulant_distance_profile,
    compute_metrics,
    cut_size,
    diameter_mpl,
    parse_partition,
)
from circnet.topology import (
    JumpSet,
    circulant,
    complete,
    from_edges,
    hypercube,
    is_connected_circulant,
    ring,
    torus,
)


def floyd_warshall(adjacency):
    n = len(adjacency)
    inf = float("inf")
    dist = [[inf] * n for _ in range(n)]
    for u in range(n):
        dist[u][u] = 0
        for w in adjacency[u]:
            dist[u][w] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def brute_bisection(t):
    best = None
    for rest in itertools.combinations(range(1, t.n), t.n // 2 - 1):
        cut = cut_size(t, set((0,) + rest))
        if best is None or cut < best:
            best = cut
    return best


def random_graph(rnd, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < p]
    return from_edges(n, edges)


st_graph = st.tuples(
    st.integers(2, 16), st.floats(0.25, 0.9), st.integers(0, 10_000)
)


class TestBfsDistances:
    def test_ring8(self):
        assert bfs_distances(ring(8), 0) == [0, 1, 2, 3, 4, 3, 2, 1]

    def test_hypercube_hamming(self):
        t = hypercube(5)
        dist = bfs_distances(t, 0)
        assert dist == [v.bit_count() for v in range(32)]

    def test_reference_circulant_diameter(self):
        assert max(bfs_distances(circulant(JumpSet(32, (1, 7))), 0)) == 4

    def test_disconnected_marks_unreached(self):
        t = circulant(JumpSet(8, (2,)))
        dist = bfs_distances(t, 0)
        assert dist.count(-1) == 4 and dist[2] == 1

    @given(st_graph)
    def test_matches_floyd_warshall(self, params):
        n, p, seed = params
        t = random_graph(random.Random(seed), n, p)
        fw = floyd_warshall(t.adjacency)
        for s in range(n):
            got = bfs_distances(t, s)
            want = [-1 if d == float("inf") else d for d in fw[s]]
            assert got == want


class TestCirculantProfile:
    @given(st.integers(2, 64), st.lists(st.integers(0, 500), min_size=1, max_size=4))
    def test_matches_bfs(self, n, picks):
        jumps = tuple(sorted({1 + (p % (n // 2)) for p in picks}))
        js = JumpSet(n, jumps)
        profile = circulant_distance_profile(n, jumps)
        dist = bfs_distances(circulant(js), 0)
        if -1 in dist:
            assert profile is None
        else:
            assert profile == (max(dist), sum(dist))

    def test_disconnected_is_none(self):
        assert circulant_distance_profile(8, (2, 4)) is None


class TestDiameterMpl:
    def test_hypercube5(self):
        d, s, mpl = diameter_mpl(hypercube(5))
        assert (d, s) == (5, 80) and mpl == Fraction(80, 31)

    def test_torus_8x4(self):
        d, s, mpl = diameter_mpl(torus([8, 4]))
        assert (d, s) == (6, 96) and round(float(mpl), 2) == 3.10

    def test_reference_512_circulant(self):
        d, _, mpl = diameter_mpl(circulant(JumpSet(512, (1, 15, 56, 149))))
        assert d == 6 and round(float(mpl), 2) == 4.04

    def test_disconnected_raises(self):
        with pytest.raises(DisconnectedError):
            diameter_mpl(circulant(JumpSet(8, (2,))))

    @given(st.integers(2, 64), st.lists(st.integers(0, 500), min_size=1, max_size=4))
    def test_symmetric_fast_path_equals_general(self, n, picks):
        jumps = tuple(sorted({1 + (p % (n // 2)) for p in picks}))
        js = JumpSet(n, jumps)
        assume(is_connected_circulant(js))
        t = circulant(js)
        plain = from_edges(t.n, t.edges())  # same graph, no symmetry tag
        assert not plain.vertex_symmetric
        assert diameter_mpl(t) == diameter_mpl(plain)

    @given(st_graph)
    def test_dist_sum_never_grows_under_edge_addition(self, params):
        n, p, seed = params
        rnd = random.Random(seed)
        t = random_graph(rnd, n, p)
        non_edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if v not in t.adjacency[u]
        ]
        assume(non_edges)
        try:
            _, s0, _ = diameter_mpl(t)
        except DisconnectedError:
            assume(False)
        extra = rnd.choice(non_edges)
        _, s1, _ = diameter_mpl(from_edges(n, t.edges() + [extra]))
        assert s1 <= s0


class TestBisectionExact:
    def test_complete4(self):
        assert bisection_exact(complete(4)) == 4

    def test_ring8(self):
        assert bisection_exact(ring(8)) == 2

    def test_reference_32(self):
        assert bisection_exact(circulant(JumpSet(32, (1, 7)))) == 16

    def test_odd_n_rejected(self):
        with pytest.raises(BisectionInfeasibleError):
            bisection_exact(ring(7))

    def test_over_limit_refused(self):
        with pytest.raises(ExactLimitError):
            bisection_exact(circulant(JumpSet(64, (1, 2))), limit=32)

    @given(st_graph)
    @settings(max_examples=40)
    def test_matches_brute_enumeration(self, params):
        n, p, seed = params
        assume(n % 2 == 0)
        t = random_graph(random.Random(seed), n, p)
        assert bisection_exact(t, limit=16) == brute_bisection(t)


class TestBisectionHeuristic:
    def test_never_below_exact(self):
        rnd = random.Random(7)
        for _ in range(10):
            t = random_graph(rnd, 12, 0.4)
            assert bisection_heuristic(t, restarts=4, seed=1) >= bisection_exact(t)

    def test_equals_exact_on_32vertex_reference_rows(self):
        rows = [
            circulant(JumpSet(32, (1, 7))),
            circulant(JumpSet(32, (1, 6, 16))),
            torus([8, 4]),
            hypercube(5),
        ]
        for t in rows:
            assert bisection_heuristic(t, restarts=16, seed=0) == bisection_exact(t)

    def test_hypercube_analytic(self):
        for d in range(2, 7):
            assert bisection_heuristic(hypercube(d), restarts=16, seed=0) == 2 ** (d - 1)

    def test_complete_analytic(self):
        for m in (4, 6, 8):
            assert bisection_heuristic(complete(m), restarts=8, seed=0) == (m // 2) ** 2

    def test_deterministic_given_seed(self):
        t = circulant(JumpSet(48, (1, 9, 17)))
        a = bisection_heuristic(t, restarts=8, seed=3)
        b = bisection_heuristic(t, restarts=8, seed=3)
        assert a == b

    def test_odd_n_rejected(self):
        with pytest.raises(BisectionInfeasibleError):
            bisection_heuristic(ring(9))


class TestPartitionImport:
    def test_cut_recomputed(self):
        t = ring(8)
        cut = balanced_partition_cut(t, ((0, 1, 2, 3), (4, 5, 6, 7)))
        assert cut == 2

    def test_parse_two_lines(self):
        a, b = parse_partition("0 1 2 3\n4 5 6 7\n")
        assert a == (0, 1, 2, 3) and b == (4, 5, 6, 7)

    def test_unbalanced_rejected(self):
        with pytest.raises(PartitionFileError):
            balanced_partition_cut(ring(8), ((0, 1, 2), (3, 4, 5, 6, 7)))

    def test_overlap_rejected(self):
        with pytest.raises(PartitionFileError):
            balanced_partition_cut(ring(8), ((0, 1, 2, 3), (3, 4, 5, 6)))

    def test_incomplete_cover_rejected(self):
        with pytest.raises(PartitionFileError):
            balanced_partition_cut(ring(8), ((0, 1, 2, 3), (4, 5, 6, 6)))

    def test_bad_text(self):
        with pytest.raises(PartitionFileError):
            parse_partition("0 1\n2 x\n")
        with pytest.raises(PartitionFileError):
            parse_partition("0 1 2 3\n")


class TestMetricsRecord:
    def test_mpl_exact_rational(self):
        m = compute_metrics(circulant(JumpSet(32, (1, 7))))
        assert m.dist_sum == 84 and m.mpl == Fraction(84, 31)
        assert m.mpl * (m.n - 1) == m.dist_sum
        assert m.bisection == 16 and m.bisection_exact

    def test_heuristic_flagged_above_limit(self):
        m = compute_metrics(circulant(JumpSet(64, (1, 14))), restarts=8)
        assert not m.bisection_exact

    def test_odd_n_has_no_bisection(self):
        m = compute_metrics(ring(9))
        assert m.bisection is None

    def test_partition_supplied(self):
        m = compute_metrics(ring(8), partition=((0, 1, 2, 3), (4, 5, 6, 7)))
        assert m.bisection == 2 and not m.bisection_exact

    def test_inconsistent_record_rejected(self):
        with pytest.raises(ValueError):
            MetricsRecord(
                n=8, degree=2, diameter=1, dist_sum=Fraction(16),
                bisection=2, bisection_exact=True,
            )
