"""Leaf-removal process: per-node ranks, core detection, core extraction.

A leaf is a pendant point (degree 1) together with its unique neighbour, the
petiole. Removing all current leaves can create new leaves; iterating until
nothing is removable leaves the core. Pendants removed in round t get the odd
rank 2t-1 and petioles the even rank 2t. Nodes that are isolated when their
round comes count as pendants without a petiole. Core nodes get ranks above
everything removed, assigned in breadth-first layers from the ranked boundary
(ascending id within a layer); core components with no ranked boundary at all
are ranked by ascending id.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph


@dataclass(frozen=True)
class RankAssignment:
    rank: tuple[int, ...]
    in_core: tuple[bool, ...]
    max_rank: int

    @property
    def core_empty(self) -> bool:
        return not any(self.in_core)


def leaf_removal_ranks(g: Graph) -> RankAssignment:
    n = g.n
    alive = [True] * n
    deg = [g.degree(i) for i in range(n)]
    rank = [0] * n

    t = 0
    while True:
        t += 1
        pend_rank = 2 * t - 1
        pet_rank = 2 * t
        removed: list[int] = []
        for u in range(n):
            if not alive[u] or rank[u]:
                continue
            if deg[u] == 0:
                rank[u] = pend_rank
                removed.append(u)
            elif deg[u] == 1:
                v = next(w for w in g.adjacency[u] if alive[w])
                if deg[v] == 1:
                    # Isolated edge: both endpoints are degree 1; the lower id
                    # plays the pendant, the other the petiole.
                    lo, hi = (u, v) if u < v else (v, u)
                    rank[lo] = pend_rank
                    rank[hi] = pet_rank
                    removed.extend((lo, hi))
                else:
                    rank[u] = pend_rank
                    removed.append(u)
                    if rank[v] != pet_rank:
                        rank[v] = pet_rank
                        removed.append(v)
        if not removed:
            break
        for x in removed:
            alive[x] = False
        for x in removed:
            for y in g.adjacency[x]:
                if alive[y]:
                    deg[y] -= 1

    next_rank = max((r for r in rank if r), default=0) + 1

    # Rank the surviving core: BFS from core nodes touching ranked territory.
    seeds = sorted(
        u
        for u in range(n)
        if alive[u] and any(not alive[w] for w in g.adjacency[u])
    )
    seen = set(seeds)
    layer = seeds
    while layer:
        for u in layer:
            rank[u] = next_rank
            next_rank += 1
        nxt = set()
        for u in layer:
            for w in g.adjacency[u]:
                if alive[w] and w not in seen:
                    nxt.add(w)
        seen |= nxt
        layer = sorted(nxt)
    for u in range(n):
        if alive[u] and not rank[u]:
            rank[u] = next_rank
            next_rank += 1

    return RankAssignment(
        rank=tuple(rank),
        in_core=tuple(alive),
        max_rank=max(rank, default=0),
    )


def core_subgraph(g: Graph, r: RankAssignment) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on core nodes plus the old-id table (new index -> old id)."""
    old_ids = tuple(u for u in range(g.n) if r.in_core[u])
    new_of = {old: new for new, old in enumerate(old_ids)}
    edges = [
        (new_of[u], new_of[v])
        for u, v in g.edges
        if r.in_core[u] and r.in_core[v]
    ]
    return Graph(len(old_ids), edges), old_ids
