"""Rank-partitioned exhaustive search for optimal circulant graphs.

The free-jump combinations of a (n, k) space are totally ordered co-lex;
each worker unranks its start rank and walks successors to its end rank,
keeping the running (diameter, distance-sum) minimum and every jump set that
attains it. Merging partial results is associative and commutative, so the
outcome is identical for any worker count, chunking, or checkpoint/resume
boundary. Survivors are then ranked by bisection width (exact below the
configured limit, Kernighan-Lin above) and only the maximum-width ones are
returned.

Checkpoints are JSON lines, one per worker range, carrying the cursor rank
and the running best; a resumed run continues each range from its cursor.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

from .combinatorics import successor_inplace, unrank_elements
from .metrics import (
    DEFAULT_EXACT_LIMIT,
    DEFAULT_RESTARTS,
    MetricsRecord,
    bisection_exact,
    bisection_heuristic,
)
from .topology import JumpSet, JumpSpacePlan, adam_canonical, circulant, jump_space


class CheckpointError(RuntimeError):
    """Checkpoint file is unreadable or inconsistent with the request."""


@dataclass(frozen=True)
class RankRange:
    """Half-open interval of combination ranks assigned to one worker."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError(f"invalid rank range [{self.start}, {self.end})")

    @property
    def size(self) -> int:
        return self.end - self.start


@dataclass
class SearchResult:
    """Running optimum of one scanned region (or a merge of regions)."""

    n: int
    k: int
    best_diameter: int | None
    best_dist_sum: int | None
    candidates: tuple[JumpSet, ...]
    scanned: int
    elapsed: float


@dataclass(frozen=True)
class OptimalRecord:
    """One optimal circulant with its full metrics."""

    n: int
    k: int
    jumps: JumpSet
    metrics: MetricsRecord


@dataclass
class SearchConfig:
    workers: int | None = None  # None: one per available core
    reduced: bool = True
    exact_bisection_limit: int = DEFAULT_EXACT_LIMIT
    restarts: int = DEFAULT_RESTARTS
    seed: int = 0
    checkpoint_path: str | Path | None = None
    checkpoint_every: int = 500_000

    def resolved_workers(self) -> int:
        w = self.workers if self.workers is not None else (os.cpu_count() or 1)
        if w < 1:
            raise ValueError("workers must be >= 1")
        return w


def count_space(n: int, k: int, reduced: bool = True) -> int:
    """Size of the free-choice combination space for (n, k)."""
    plan = jump_space(n, k, reduced)
    return plan.size


def partition_ranks(total: int, workers: int) -> list[RankRange]:
    """Split [0, total) into `workers` contiguous ranges, sizes within 1.

    The first `total % workers` ranges take the extra element; with more
    workers than ranks the tail ranges are empty.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    base, rem = divmod(total, workers)
    ranges = []
    start = 0
    for i in range(workers):
        size = base + (1 if i < rem else 0)
        ranges.append(RankRange(start, start + size))
        start += size
    return ranges


def _scan_chunk(
    n: int,
    fixed: tuple[int, ...],
    lo: int,
    hi: int,
    r: int,
    start: int,
    end: int,
    best_d: int | None,
    best_s: int | None,
    cands: tuple[tuple[int, ...], ...],
) -> tuple[int | None, int | None, list[tuple[int, ...]], int, float]:
    """Scan co-lex ranks [start, end), folding into a running best.

    Hot path: the BFS frontier is one n-bit integer expanded by rotating by
    each jump, and the jump set is only materialized as a sorted tuple when
    it ties or beats the running optimum.
    """
    t0 = time.perf_counter()
    out = list(cands)
    if end <= start:
        return best_d, best_s, out, 0, 0.0
    elems = unrank_elements(start, lo, hi, r)
    full = (1 << n) - 1
    need_gcd = 1 not in fixed
    idx = start
    while True:
        jumps = fixed + tuple(elems)
        if need_gcd:
            g = n
            for s in jumps:
                g = gcd(g, s)
            connected = g == 1
        else:
            connected = True
        if connected:
            visited = 1
            frontier = 1
            d = 0
            total = 0
            while True:
                nxt = 0
                for s in jumps:
                    c = n - s
                    nxt |= (
                        (frontier << s)
                        | (frontier >> c)
                        | (frontier >> s)
                        | (frontier << c)
                    )
                new = nxt & full & ~visited
                if not new:
                    break
                d += 1
                total += d * new.bit_count()
                visited |= new
                frontier = new
            if visited == full:
                if best_d is None or d < best_d or (d == best_d and total < best_s):
                    best_d, best_s = d, total
                    out = [tuple(sorted(jumps))]
                elif d == best_d and total == best_s:
                    out.append(tuple(sorted(jumps)))
        idx += 1
        if idx >= end:
            break
        if not successor_inplace(elems, lo, hi):
            raise AssertionError("combination space exhausted before end rank")
    return best_d, best_s, out, end - start, time.perf_counter() - t0


def scan_range(
    n: int, k: int, rank_range: RankRange, reduced: bool = True
) -> SearchResult:
    """Scan one rank range of the (n, k) space from a fresh running best."""
    plan = jump_space(n, k, reduced)
    if rank_range.end > plan.size:
        raise ValueError(f"range {rank_range} exceeds space of size {plan.size}")
    best_d, best_s, cands, scanned, elapsed = _scan_chunk(
        n, plan.fixed, plan.lo, plan.hi, plan.r,
        rank_range.start, rank_range.end, None, None, (),
    )
    return SearchResult(
        n=n,
        k=k,
        best_diameter=best_d,
        best_dist_sum=best_s,
        candidates=tuple(JumpSet(n, c) for c in sorted(set(cands))),
        scanned=scanned,
        elapsed=elapsed,
    )


def merge(results: list[SearchResult]) -> SearchResult:
    """Fold partial results into the global optimum.

    Keeps the lexicographic minimum of (diameter, distance sum); candidate
    lists of ties are concatenated, deduplicated, and sorted by jump set, so
    the merge is associative and independent of input order.
    """
    if not results:
        raise ValueError("nothing to merge")
    nk = {(r.n, r.k) for r in results}
    if len(nk) != 1:
        raise ValueError(f"cannot merge results for mixed spaces: {sorted(nk)}")
    n, k = nk.pop()
    best_d: int | None = None
    best_s: int | None = None
    cands: set[tuple[int, ...]] = set()
    scanned = 0
    elapsed = 0.0
    for r in results:
        scanned += r.scanned
        elapsed += r.elapsed
        if r.best_diameter is None:
            continue
        key = (r.best_diameter, r.best_dist_sum)
        if best_d is None or key < (best_d, best_s):
            best_d, best_s = key
            cands = {js.jumps for js in r.candidates}
        elif key == (best_d, best_s):
            cands.update(js.jumps for js in r.candidates)
    return SearchResult(
        n=n,
        k=k,
        best_diameter=best_d,
        best_dist_sum=best_s,
        candidates=tuple(JumpSet(n, c) for c in sorted(cands)),
        scanned=scanned,
        elapsed=elapsed,
    )


@dataclass
class _RangeState:
    rank_range: RankRange
    cursor: int
    best_d: int | None = None
    best_s: int | None = None
    candidates: list[tuple[int, ...]] = field(default_factory=list)
    elapsed: float = 0.0

    def as_result(self, n: int, k: int) -> SearchResult:
        return SearchResult(
            n=n,
            k=k,
            best_diameter=self.best_d,
            best_dist_sum=self.best_s,
            candidates=tuple(JumpSet(n, c) for c in sorted(set(self.candidates))),
            scanned=self.cursor - self.rank_range.start,
            elapsed=self.elapsed,
        )


def save_checkpoint(
    path: str | Path, n: int, k: int, reduced: bool, total: int,
    states: list[_RangeState],
) -> None:
    """Atomically write the per-range cursors and running bests."""
    lines = []
    for st in states:
        lines.append(
            json.dumps(
                {
                    "n": n,
                    "k": k,
                    "reduced": reduced,
                    "total": total,
                    "range": {"start": st.rank_range.start, "end": st.rank_range.end},
                    "cursor_rank": st.cursor,
                    "best_diameter": st.best_d,
                    "best_dist_sum": st.best_s,
                    "candidates": [list(c) for c in st.candidates],
                    "elapsed": st.elapsed,
                },
                sort_keys=True,
            )
        )
    tmp = Path(str(path) + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_checkpoint(
    path: str | Path, n: int, k: int, reduced: bool, total: int
) -> list[_RangeState]:
    """Parse and validate a checkpoint for the given search; raises
    CheckpointError on any corruption or mismatch."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    states = []
    try:
        for line in text.splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            if (rec["n"], rec["k"], rec["reduced"], rec["total"]) != (n, k, reduced, total):
                raise CheckpointError(
                    f"checkpoint is for (n={rec['n']}, k={rec['k']}, "
                    f"reduced={rec['reduced']}, total={rec['total']}), "
                    f"not (n={n}, k={k}, reduced={reduced}, total={total})"
                )
            rng = RankRange(rec["range"]["start"], rec["range"]["end"])
            cursor = rec["cursor_rank"]
            if not rng.start <= cursor <= rng.end:
                raise CheckpointError(f"cursor {cursor} outside range {rng}")
            states.append(
                _RangeState(
                    rank_range=rng,
                    cursor=cursor,
                    best_d=rec["best_diameter"],
                    best_s=rec["best_dist_sum"],
                    candidates=[tuple(c) for c in rec["candidates"]],
                    elapsed=float(rec.get("elapsed", 0.0)),
                )
            )
    except CheckpointError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"corrupt checkpoint {path}: {exc}") from exc
    if not states:
        raise CheckpointError(f"checkpoint {path} holds no ranges")
    states.sort(key=lambda st: st.rank_range.start)
    pos = 0
    for st in states:
        if st.rank_range.start != pos:
            raise CheckpointError("checkpoint ranges do not tile [0, total)")
        pos = st.rank_range.end
    if pos != total:
        raise CheckpointError("checkpoint ranges do not cover the space")
    return states


def _integrate(st: _RangeState, chunk_end: int, payload) -> None:
    best_d, best_s, cands, _scanned, elapsed = payload
    st.best_d, st.best_s = best_d, best_s
    st.candidates = list(dict.fromkeys(cands))
    st.cursor = chunk_end
    st.elapsed += elapsed


def _run_states(
    n: int, k: int, plan: JumpSpacePlan, states: list[_RangeState], config: SearchConfig
) -> None:
    """Drive every range to completion, chunk by chunk, optionally parallel."""
    chunk = max(1, config.checkpoint_every)
    total = plan.size

    def checkpoint() -> None:
        if config.checkpoint_path is not None:
            save_checkpoint(
                config.checkpoint_path, n, k, config.reduced, total, states
            )

    def chunk_args(st: _RangeState) -> tuple:
        end = min(st.cursor + chunk, st.rank_range.end)
        return (
            n, plan.fixed, plan.lo, plan.hi, plan.r,
            st.cursor, end, st.best_d, st.best_s, tuple(st.candidates),
        ), end

    workers = config.resolved_workers()
    pending = [i for i, st in enumerate(states) if st.cursor < st.rank_range.end]
    if workers == 1 or len(pending) <= 1:
        for i in pending:
            st = states[i]
            while st.cursor < st.rank_range.end:
                args, end = chunk_args(st)
                _integrate(st, end, _scan_chunk(*args))
                checkpoint()
        return

    with ProcessPoolExecutor(max_workers=workers) as pool:
        running = {}
        for i in pending:
            args, end = chunk_args(states[i])
            running[pool.submit(_scan_chunk, *args)] = (i, end)
        while running:
            done, _ = wait(running, return_when=FIRST_COMPLETED)
            for fut in done:
                i, end = running.pop(fut)
                st = states[i]
                _integrate(st, end, fut.result())
                checkpoint()
                if st.cursor < st.rank_range.end:
                    args, nxt = chunk_args(st)
                    running[pool.submit(_scan_chunk, *args)] = (i, nxt)


def run_search(
    n: int, k: int, config: SearchConfig | None = None
) -> tuple[list[OptimalRecord], SearchResult]:
    """Full pipeline: count, partition, scan, merge, bisection filter.

    Returns the optimal records plus the merged scan result (for progress
    accounting and rate reporting). Results are identical for any worker
    count and for any checkpoint/resume boundary.
    """
    config = config or SearchConfig()
    plan = jump_space(n, k, config.reduced)
    total = plan.size

    states: list[_RangeState] | None = None
    if config.checkpoint_path is not None and Path(config.checkpoint_path).exists():
        states = load_checkpoint(config.checkpoint_path, n, k, config.reduced, total)
    if states is None:
        ranges = partition_ranks(total, config.resolved_workers())
        states = [_RangeState(rank_range=r, cursor=r.start) for r in ranges]

    _run_states(n, k, plan, states, config)
    merged = merge([st.as_result(n, k) for st in states])
    if merged.scanned != total:
        raise AssertionError(f"scanned {merged.scanned} of {total} combinations")

    records: list[OptimalRecord] = []
    if merged.best_diameter is not None:
        exact = n % 2 == 0 and n <= config.exact_bisection_limit
        # Bisection is an isomorphism invariant, so it is measured once per
        # unit-multiplication class on the canonical representative; ties
        # that are the same graph under relabeling then always share one
        # value and survive (or fall) together.
        estimates: dict[tuple[int, ...], int | None] = {}
        scored: list[tuple[int | None, JumpSet]] = []
        for js in merged.candidates:
            rep = adam_canonical(js)
            if rep.jumps not in estimates:
                if n % 2 == 1:
                    bw = None
                elif exact:
                    bw = bisection_exact(circulant(rep), config.exact_bisection_limit)
                else:
                    bw = bisection_heuristic(circulant(rep), config.restarts, config.seed)
                estimates[rep.jumps] = bw
            scored.append((estimates[rep.jumps], js))
        best_bw = max((bw for bw, _ in scored if bw is not None), default=None)
        for bw, js in scored:
            if bw != best_bw:
                continue
            records.append(
                OptimalRecord(
                    n=n,
                    k=k,
                    jumps=js,
                    metrics=MetricsRecord(
                        n=n,
                        degree=js.degree,
                        diameter=merged.best_diameter,
                        dist_sum=Fraction(merged.best_dist_sum),
                        bisection=bw,
                        bisection_exact=exact if bw is not None else False,
                    ),
                )
            )
        records.sort(key=lambda rec: rec.jumps.jumps)
    return records, merged


def search_optimal(
    n: int, k: int, config: SearchConfig | None = None
) -> list[OptimalRecord]:
    """Optimal circulants for (n, k): minimal diameter, then minimal distance
    sum, then maximal bisection width; all ties at the final stage returned."""
    return run_search(n, k, config)[0]


def record_to_dict(rec: OptimalRecord) -> dict:
    """JSON-able form of one OptimalRecord, as written to results files."""
    m = rec.metrics
    dist_sum = m.dist_sum
    return {
        "n": rec.n,
        "k": rec.k,
        "jumps": list(rec.jumps.jumps),
        "diameter": m.diameter,
        "dist_sum": int(dist_sum) if dist_sum.denominator == 1 else float(dist_sum),
        "mpl": float(m.mpl),
        "bisection": m.bisection,
        "bisection_exact": m.bisection_exact,
    }


def write_results(path: str | Path, records: list[OptimalRecord]) -> None:
    """One OptimalRecord per line, JSON, sorted keys."""
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(record_to_dict(rec), sort_keys=True) + "\n")
