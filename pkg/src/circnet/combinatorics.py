"""Co-lexicographic r-combinations: counting, succession, ranking, unranking.

A combination is a strictly increasing tuple of r elements drawn from an
integer ground range [lo, hi]. Co-lex order compares largest elements first,
so the successor of a combination touches only a prefix and never consults
the range bound until the top element saturates; ranks decompose into
independent binomial terms. Ranks are zero-based so that worker ranges can
stay half-open.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


class RankRangeError(ValueError):
    """Requested rank lies outside [0, binomial(space))."""


def binomial(n: int, r: int) -> int:
    """Exact C(n, r); 0 when r > n. Both arguments must be non-negative.

    Python integers are arbitrary precision, so counts well beyond 64 bits
    (the largest search spaces here reach ~2e15) are exact and cannot wrap.
    """
    if n < 0 or r < 0:
        raise ValueError(f"binomial arguments must be non-negative, got ({n}, {r})")
    return comb(n, r)


@dataclass(frozen=True)
class Combination:
    """An r-combination of the ground range [lo, hi]."""

    elements: tuple[int, ...]
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty ground range [{self.lo}, {self.hi}]")
        prev = self.lo - 1
        for x in self.elements:
            if x <= prev or x > self.hi:
                raise ValueError(
                    f"elements must be strictly increasing within [{self.lo}, {self.hi}]: "
                    f"{self.elements}"
                )
            prev = x

    @property
    def r(self) -> int:
        return len(self.elements)


def space_size(lo: int, hi: int, r: int) -> int:
    """Number of r-combinations of [lo, hi]."""
    return binomial(hi - lo + 1, r)


def colex_first(lo: int, hi: int, r: int) -> Combination:
    """The rank-0 combination (lo, lo+1, ..., lo+r-1)."""
    if r > hi - lo + 1:
        raise ValueError(f"no {r}-combinations of [{lo}, {hi}]")
    return Combination(tuple(range(lo, lo + r)), lo, hi)


def successor_inplace(elems: list[int], lo: int, hi: int) -> bool:
    """Advance a sorted element list to its co-lex successor.

    Returns False (list untouched) when the input is the final combination.
    This is the minimal-change kernel: find the lowest element that can step
    up without colliding with its right neighbor, then reset the prefix.
    """
    r = len(elems)
    for j in range(r):
        nxt = elems[j] + 1
        limit = elems[j + 1] if j + 1 < r else hi + 1
        if nxt < limit:
            elems[j] = nxt
            for i in range(j):
                elems[i] = lo + i
            return True
    return False


def colex_next(c: Combination) -> Combination | None:
    """Successor of c in co-lex order, or None at end of sequence.

    Pure function of c: no iterator state, so succession may start anywhere.
    """
    elems = list(c.elements)
    if not successor_inplace(elems, c.lo, c.hi):
        return None
    return Combination(tuple(elems), c.lo, c.hi)


def rank(c: Combination) -> int:
    """Zero-based ordinal of c in co-lex order over its space."""
    return sum(comb(x - c.lo, i) for i, x in enumerate(c.elements, start=1))


def unrank_elements(idx: int, lo: int, hi: int, r: int) -> list[int]:
    """List-form combinadic unranking; shared with the search hot path."""
    m = hi - lo + 1
    if not 0 <= idx < comb(m, r):
        raise RankRangeError(f"rank {idx} outside space of size {comb(m, r)}")
    out: list[int] = []
    rem = idx
    v = m - 1
    for i in range(r, 0, -1):
        # largest v with C(v, i) <= rem identifies the i-th largest element
        while comb(v, i) > rem:
            v -= 1
        out.append(lo + v)
        rem -= comb(v, i)
        v -= 1
    out.reverse()
    return out


def unrank(idx: int, lo: int, hi: int, r: int) -> Combination:
    """The unique combination with rank(result) == idx."""
    return Combination(tuple(unrank_elements(idx, lo, hi, r)), lo, hi)
