"""Deterministic maximum bipartite matching (Hopcroft-Karp).

Left vertices are window indices, right vertices primes, but the algorithm
is generic.  No sets or hash-order iteration anywhere: identical instances
produce identical matchings, which the byte-stable reports rely on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

_INF = -1


@dataclass
class MatchingInstance:
    """Bipartite graph: edges[l] lists the right vertices adjacent to l."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        lset, rset = set(self.left), set(self.right)
        for l, adj in self.edges.items():
            if l not in lset:
                raise ValueError(f"edge from unknown left vertex {l}")
            for r in adj:
                if r not in rset:
                    raise ValueError(f"edge to unknown right vertex {r}")


def max_matching(inst: MatchingInstance) -> list[tuple[int, int]]:
    """A maximum-cardinality matching as (left, right) pairs in left order."""
    left = list(inst.left)
    adj = {l: list(inst.edges.get(l, ())) for l in left}
    pair_l: dict[int, int] = {}
    pair_r: dict[int, int] = {}
    dist: dict[int, int] = {}

    def bfs() -> bool:
        queue = deque()
        for l in left:
            if l not in pair_l:
                dist[l] = 0
                queue.append(l)
            else:
                dist[l] = _INF
        reachable = False
        while queue:
            l = queue.popleft()
            for r in adj[l]:
                if r not in pair_r:
                    reachable = True
                else:
                    nxt = pair_r[r]
                    if dist[nxt] == _INF:
                        dist[nxt] = dist[l] + 1
                        queue.append(nxt)
        return reachable

    def dfs(l: int) -> bool:
        for r in adj[l]:
            nxt = pair_r.get(r)
            if nxt is None or (dist[nxt] == dist[l] + 1 and dfs(nxt)):
                pair_l[l] = r
                pair_r[r] = l
                return True
        dist[l] = _INF
        return False

    while bfs():
        for l in left:
            if l not in pair_l:
                dfs(l)
    return [(l, pair_l[l]) for l in left if l in pair_l]


def augment(
    adj: dict[int, list[int]], pair_r: dict[int, int], start: int
) -> bool:
    """One augmenting-path step for incremental matching growth.

    pair_r maps right vertex -> matched left vertex and is updated in
    place when an augmenting path from `start` is found.
    """

    def walk(l: int, seen: set[int]) -> bool:
        for r in adj[l]:
            if r in seen:
                continue
            seen.add(r)
            other = pair_r.get(r)
            if other is None or walk(other, seen):
                pair_r[r] = l
                return True
        return False

    return walk(start, set())
