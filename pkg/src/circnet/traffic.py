"""Flow-level traffic evaluation.

Patterns are lists of (source, destination, demand) flows; evaluation pushes
each flow's demand along its single routed path and aggregates per directed
link. Max link load is the static congestion figure, and aggregate demand
divided by max load serves as an effective-bandwidth style comparison number
(in units of one link's bandwidth). Everything is exact integer/rational
arithmetic, so conservation and the all-to-all mean-hops == MPL identity hold
to full precision.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .routing import RoutingTable, path
from .topology import Topology


@dataclass(frozen=True)
class TrafficPattern:
    kind: str
    flows: tuple[tuple[int, int, int], ...]  # (source, destination, demand)

    def __post_init__(self) -> None:
        for s, d, dem in self.flows:
            if s == d:
                raise ValueError(f"flow with equal endpoints: {s}")
            if dem <= 0:
                raise ValueError(f"non-positive demand on flow {s}->{d}")

    @property
    def total_demand(self) -> int:
        return sum(dem for _, _, dem in self.flows)


def pattern_all_to_all(n: int) -> TrafficPattern:
    """One unit-demand flow per ordered pair."""
    if n < 2:
        raise ValueError("all-to-all needs at least 2 vertices")
    flows = tuple((s, d, 1) for s in range(n) for d in range(n) if s != d)
    return TrafficPattern(kind="all-to-all", flows=flows)


def pattern_random_pairs(n: int, pairs: int, seed: int = 0) -> TrafficPattern:
    """`pairs` unit-demand flows with uniformly random distinct endpoints."""
    if pairs < 1:
        raise ValueError("need at least one pair")
    if n < 2:
        raise ValueError("random pairs need at least 2 vertices")
    rng = random.Random(seed)
    flows = []
    for _ in range(pairs):
        s = rng.randrange(n)
        d = rng.randrange(n - 1)
        if d >= s:
            d += 1
        flows.append((s, d, 1))
    return TrafficPattern(kind="random-pairs", flows=tuple(flows))


def pattern_ring_shift(n: int, shift: int) -> TrafficPattern:
    """One unit-demand flow i -> (i + shift) mod n for every vertex."""
    if not 1 <= shift < n:
        raise ValueError(f"shift must be in [1, {n - 1}], got {shift}")
    flows = tuple((i, (i + shift) % n, 1) for i in range(n))
    return TrafficPattern(kind="ring-shift", flows=flows)


@dataclass(frozen=True)
class LoadReport:
    """Per-directed-link loads and their summary statistics."""

    loads: dict[tuple[int, int], int]
    max_load: int
    mean_load: Fraction
    mean_hops: Fraction
    eb_proxy: Fraction
    total_demand: int
    weighted_hops: int  # sum over flows of demand * path length == sum of loads

    def to_dict(self) -> dict:
        return {
            "max_load": self.max_load,
            "mean_load": float(self.mean_load),
            "mean_hops": float(self.mean_hops),
            "eb_proxy": float(self.eb_proxy),
            "total_demand": self.total_demand,
            "weighted_hops": self.weighted_hops,
            "num_loaded_links": len(self.loads),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def links_csv(self) -> str:
        lines = ["src,dst,load"]
        for (u, v), load in sorted(self.loads.items()):
            lines.append(f"{u},{v},{load}")
        return "\n".join(lines) + "\n"


def evaluate(t: Topology, table: RoutingTable, pattern: TrafficPattern) -> LoadReport:
    """Route every flow and accumulate demand on each directed link."""
    if table.n != t.n:
        raise ValueError(f"table is for n={table.n}, topology has n={t.n}")
    loads: dict[tuple[int, int], int] = {}
    weighted_hops = 0
    total_demand = 0
    for s, d, dem in pattern.flows:
        if not (0 <= s < t.n and 0 <= d < t.n):
            raise ValueError(f"flow endpoint out of range: {s}->{d}")
        seq = path(table, s, d)
        weighted_hops += dem * (len(seq) - 1)
        total_demand += dem
        for u, v in zip(seq, seq[1:]):
            loads[(u, v)] = loads.get((u, v), 0) + dem
    directed_links = sum(len(nbrs) for nbrs in t.adjacency)
    max_load = max(loads.values(), default=0)
    return LoadReport(
        loads=loads,
        max_load=max_load,
        mean_load=Fraction(sum(loads.values()), directed_links),
        mean_hops=Fraction(weighted_hops, total_demand),
        eb_proxy=Fraction(total_demand, max_load) if max_load else Fraction(0),
        total_demand=total_demand,
        weighted_hops=weighted_hops,
    )
