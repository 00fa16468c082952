"""Topology constructors: circulants, rings, complete graphs, hypercubes, tori,
and Cartesian products.

Every topology is an immutable undirected graph held as sorted per-vertex
neighbor lists, tagged with enough structure (jump set, product factors,
vertex symmetry) for the metrics, routing, and search layers to pick their
fast paths. Product vertices are indexed row-major: (u, v) -> u * n_b + v,
so iterated products flatten to mixed-radix coordinates with the leftmost
factor most significant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any, Iterable

from .combinatorics import binomial


class InfeasibleDegreeError(ValueError):
    """No circulant of the requested degree exists on n vertices."""


@dataclass(frozen=True)
class JumpSet:
    """A circulant generator set: n vertices, jumps within [1, n//2].

    A jump s < n/2 contributes two edges per vertex (i +- s), the jump n/2
    (only meaningful for even n) contributes one, so the implied degree is
    2*|jumps| minus one if n/2 is present.
    """

    n: int
    jumps: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        jumps = tuple(sorted(self.jumps))
        if len(set(jumps)) != len(jumps):
            raise ValueError(f"duplicate jumps in {self.jumps}")
        for s in jumps:
            if not 1 <= s <= self.n // 2:
                raise ValueError(f"jump {s} outside [1, {self.n // 2}] for n={self.n}")
        object.__setattr__(self, "jumps", jumps)

    @property
    def degree(self) -> int:
        half = 1 if (self.n % 2 == 0 and self.n // 2 in self.jumps) else 0
        return 2 * (len(self.jumps) - half) + half


@dataclass(frozen=True, eq=False)
class Topology:
    """Immutable undirected graph with structural tags.

    kind/params form a JSON-able descriptor that round-trips through the CLI
    spec grammar; `jumps` is set for circulant-structured graphs (rings and
    complete graphs included), `factors` holds the flattened leaf factors of
    Cartesian products in index-significance order.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    kind: str = "custom"
    params: dict[str, Any] = field(default_factory=dict)
    jumps: JumpSet | None = None
    factors: tuple["Topology", ...] | None = None
    vertex_symmetric: bool = False

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("empty topology")
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        for u, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"duplicate edges at vertex {u}")
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise ValueError(f"neighbor {w} out of range at vertex {u}")
                if w == u:
                    raise ValueError(f"self-loop at vertex {u}")
                if u not in self.adjacency[w]:
                    raise ValueError(f"edge {u}->{w} missing its reverse")

    @property
    def degree(self) -> int:
        """Maximum vertex degree (all built-in constructions are regular)."""
        return max(len(nbrs) for nbrs in self.adjacency)

    @property
    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def is_regular(self) -> bool:
        degs = {len(nbrs) for nbrs in self.adjacency}
        return len(degs) == 1

    def edges(self) -> list[tuple[int, int]]:
        """Sorted undirected edge list with u < v."""
        return sorted(
            (u, w) for u, nbrs in enumerate(self.adjacency) for w in nbrs if u < w
        )

    def edge_list_text(self) -> str:
        """One `u v` pair per line, zero-based, u < v, sorted."""
        return "\n".join(f"{u} {v}" for u, v in self.edges()) + "\n"

    def descriptor(self) -> dict[str, Any]:
        """JSON descriptor {n, kind, params} for reports and external tools."""
        return {"n": self.n, "kind": self.kind, "params": dict(self.params)}


def from_edges(n: int, edges: Iterable[tuple[int, int]], kind: str = "custom") -> Topology:
    """Build a topology from an undirected edge list."""
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    return Topology(n=n, adjacency=adjacency, kind=kind, params={"n": n})


@dataclass(frozen=True)
class JumpSpacePlan:
    """Shape of a degree-k search space: fixed-in jumps plus a free choice.

    The free jumps are the r-combinations of [lo, hi]; the full jump set of
    a candidate is `fixed` union the combination.
    """

    fixed: tuple[int, ...]
    lo: int
    hi: int
    r: int

    @property
    def size(self) -> int:
        return binomial(self.hi - self.lo + 1, self.r)


def jump_space(n: int, k: int, reduced: bool = True) -> JumpSpacePlan:
    """Search-space shape for degree-k circulants on n vertices.

    Odd k pins jump n/2 (and requires even n). When n is a power of two,
    connectivity forces an odd jump, and multiplying by its modular inverse
    yields an isomorphic jump set containing 1; `reduced` exploits that by
    pinning jump 1 and drawing the rest from [2, (n-1)//2]. For other n the
    flag is ignored and the full range [1, (n-1)//2] is searched.
    """
    if k < 3 or k >= n:
        raise InfeasibleDegreeError(f"need 3 <= k < n, got (n={n}, k={k})")
    if k % 2 == 1 and n % 2 == 1:
        raise InfeasibleDegreeError(f"odd degree {k} impossible on odd n={n}")
    fixed: list[int] = []
    r = k // 2
    if k % 2 == 1:
        fixed.append(n // 2)
    lo = 1
    if reduced and n & (n - 1) == 0:
        fixed.append(1)
        r -= 1
        lo = 2
    return JumpSpacePlan(fixed=tuple(sorted(fixed)), lo=lo, hi=(n - 1) // 2, r=r)


def is_connected_circulant(js: JumpSet) -> bool:
    """Connectivity test: gcd of n and all jumps equals 1."""
    return math.gcd(js.n, *js.jumps) == 1 if js.jumps else js.n == 1


def adam_multiply(js: JumpSet, u: int) -> JumpSet:
    """Map each jump s to the class of u*s mod n; u must be a unit mod n.

    The result generates a graph isomorphic to the original (relabel vertex
    i as u*i mod n), which is how an odd jump gets normalized to 1 when n is
    a power of two.
    """
    n = js.n
    if math.gcd(u, n) != 1:
        raise ValueError(f"{u} is not a unit modulo {n}")
    mapped = []
    for s in js.jumps:
        t = (u * s) % n
        mapped.append(min(t, n - t))
    if len(set(mapped)) != len(mapped):
        raise AssertionError("unit multiplication collapsed jump classes")
    return JumpSet(n, tuple(sorted(mapped)))


def adam_canonical(js: JumpSet) -> JumpSet:
    """Lexicographically smallest unit-multiple image of a jump set.

    All images generate isomorphic graphs, so this is a canonical
    representative of the isomorphism class a jump set belongs to (the
    class generated by unit multiplication; distinct classes can still be
    isomorphic in rare degenerate ways, which is fine for its use as a
    grouping key).
    """
    best = js.jumps
    for u in range(2, js.n):
        if math.gcd(u, js.n) != 1:
            continue
        image = adam_multiply(js, u).jumps
        if image < best:
            best = image
    return JumpSet(js.n, best)


def circulant(js: JumpSet) -> Topology:
    """Circulant graph: vertex i adjacent to (i +- s) mod n for each jump s."""
    n = js.n
    adjacency = []
    for i in range(n):
        nbrs = set()
        for s in js.jumps:
            nbrs.add((i + s) % n)
            nbrs.add((i - s) % n)
        nbrs.discard(i)
        adjacency.append(tuple(sorted(nbrs)))
    t = Topology(
        n=n,
        adjacency=tuple(adjacency),
        kind="circulant",
        params={"n": n, "jumps": list(js.jumps)},
        jumps=js,
        vertex_symmetric=True,
    )
    if n > 1 and not all(len(a) == js.degree for a in t.adjacency):
        raise AssertionError("circulant adjacency is not regular of the implied degree")
    return t


def ring(m: int) -> Topology:
    if m < 3:
        raise ValueError(f"ring needs at least 3 vertices, got {m}")
    return replace(circulant(JumpSet(m, (1,))), kind="ring", params={"n": m})


def complete(m: int) -> Topology:
    if m < 2:
        raise ValueError(f"complete graph needs at least 2 vertices, got {m}")
    return replace(
        circulant(JumpSet(m, tuple(range(1, m // 2 + 1)))),
        kind="complete",
        params={"n": m},
    )


def cartesian_product(a: Topology, b: Topology) -> Topology:
    """Cartesian product with vertex (u, v) indexed as u * b.n + v."""
    nb = b.n
    adjacency = []
    for u in range(a.n):
        for v in range(nb):
            row = [w * nb + v for w in a.adjacency[u]]
            row += [u * nb + w for w in b.adjacency[v]]
            adjacency.append(tuple(sorted(row)))
    factors = (a.factors or (a,)) + (b.factors or (b,))
    return Topology(
        n=a.n * nb,
        adjacency=tuple(adjacency),
        kind="product",
        params={"factors": [a.descriptor(), b.descriptor()]},
        factors=factors,
        vertex_symmetric=a.vertex_symmetric and b.vertex_symmetric,
    )


def torus(dims: Iterable[int]) -> Topology:
    """Iterated Cartesian product of rings, largest-first order preserved."""
    dims = list(dims)
    if not dims:
        raise ValueError("torus needs at least one dimension")
    for d in dims:
        if d < 3:
            raise ValueError(f"torus dimensions must be >= 3, got {d}")
    t = ring(dims[0])
    for d in dims[1:]:
        t = cartesian_product(t, ring(d))
    return replace(
        t,
        kind="torus",
        params={"dims": dims},
        factors=t.factors or (t,),
    )


def hypercube(d: int) -> Topology:
    """d-fold Cartesian product of single edges; 2**d vertices of degree d."""
    if d < 1:
        raise ValueError(f"hypercube dimension must be >= 1, got {d}")
    t = complete(2)
    for _ in range(d - 1):
        t = cartesian_product(t, complete(2))
    return replace(
        t,
        kind="hypercube",
        params={"d": d},
        factors=t.factors or (t,),
    )
