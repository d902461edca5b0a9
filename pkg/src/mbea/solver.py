"""Main evolution loop: add nodes in leaf-removal rank order, dispatch cases A-E.

Each new node i activates with its edges into the current subgraph and is
classified by its frozen neighbourhood (num = count of positively frozen
neighbours, plus a simultaneity check on its unfrozen neighbours):

  num == 1, unfrozen neighbours can all be covered together ->
      case A: i and the uncovered neighbour form a mutual-determination;
      the cascade that froze that neighbour is released.
  num >= 2, all uncovered neighbours share one cascade mark, unfrozen
      neighbours compatible -> case E: like A against the cascade root,
      releasing every uncovered neighbour's cascade.
  num >= 2 otherwise -> case B: i must be covered (negatively frozen).
  num == 0, unfrozen neighbours compatible -> case C: i stays uncovered
      (positively frozen) and its freezing influence cascades.
  incompatible unfrozen neighbours -> case D: i is covered.

Cases A and E finish with the rechecking sweep and odd-cycle breaking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .leaf_removal import RankAssignment, leaf_removal_ranks
from .rsg import (
    NEG_FROZEN,
    POS_FROZEN,
    UNFROZEN,
    ReducedSolutionGraph,
    RsgInvariantError,
)
from .space import Assignment

CASES = ("A", "B", "C", "D", "E")


@dataclass(frozen=True)
class TraceEntry:
    node: int
    case: str
    affected: tuple[int, ...]


@dataclass
class MbeaResult:
    rsg: ReducedSolutionGraph
    cover_size: int
    case_counts: dict[str, int]
    trace: list[TraceEntry] | None = None


def _dispatch(rsg: ReducedSolutionGraph, i: int) -> str:
    state, mark, active = rsg.state, rsg.mark, rsg.active
    rank = rsg.ranks.rank
    nbrs = [w for w in rsg.graph.adjacency[i] if active[w]]
    pos_nbrs = [w for w in nbrs if state[w] == POS_FROZEN]
    unfrozen_nbrs = [w for w in nbrs if state[w] == UNFROZEN]
    num = len(pos_nbrs)

    if num == 1:
        pos = pos_nbrs[0]
        if rsg.compatible_minus_one(unfrozen_nbrs) and not rsg.would_refreeze(
            i, (pos,), mark[pos]
        ):
            rsg.set_double(i, pos)
            rsg.releasing(pos, mark[pos])
            rsg.rechecking()
            rsg.break_odd_cycles(set(rsg.step_touched))
            return "A"
        rsg.freeze_neg(i, i)
        rsg.break_odd_cycles(set(rsg.step_touched), additions=False)
        return "D"

    if num >= 2:
        shared = {mark[p] for p in pos_nbrs}
        feasible = len(shared) == 1
        if feasible:
            m = next(iter(shared))
            # A covered neighbour frozen by the same cascade would flip
            # uncovered when the cascade releases, uncovering edge (i, q);
            # unless a foreign uncovered neighbour pins it in place.
            for q in nbrs:
                if (
                    state[q] == NEG_FROZEN
                    and mark[q] == m
                    and not rsg.has_foreign_pos_neighbour(q, m)
                ):
                    feasible = False
                    break
        if (
            feasible
            and rsg.compatible_minus_one(unfrozen_nbrs)
            and not rsg.would_refreeze(i, tuple(pos_nbrs), m)
        ):
            pos = max(pos_nbrs, key=lambda p: (rank[p], p))
            rsg.set_double(i, pos)
            for j in sorted(pos_nbrs):
                if state[j] != UNFROZEN:
                    rsg.releasing(j, mark[j])
            rsg.rechecking()
            rsg.break_odd_cycles(set(rsg.step_touched))
            return "E"
        rsg.freeze_neg(i, i)
        rsg.break_odd_cycles(set(rsg.step_touched), additions=False)
        return "B"

    if rsg.compatible_minus_one(unfrozen_nbrs):
        rsg.freeze_pos(i, i)
        rsg.freezing(i)
        rsg.break_odd_cycles(set(rsg.step_touched), additions=False)
        return "C"
    rsg.freeze_neg(i, i)
    rsg.break_odd_cycles(set(rsg.step_touched), additions=False)
    return "D"


def run_mbea(
    g: Graph,
    ranks: RankAssignment | None = None,
    trace: bool = False,
    validate: bool = False,
) -> MbeaResult:
    """Build the reduced solution graph of g and its represented cover size.

    Nodes enter in ascending (rank, id) order. With validate=True the
    structural invariants are checked after every node addition (slow,
    for tests). Deterministic for a fixed graph.
    """
    if ranks is None:
        ranks = leaf_removal_ranks(g)
    if len(ranks.rank) != g.n or len(ranks.in_core) != g.n:
        raise ValueError("rank assignment does not match graph")
    rsg = ReducedSolutionGraph(g, ranks)
    order = sorted(range(g.n), key=lambda u: (ranks.rank[u], u))
    trace_list: list[TraceEntry] | None = [] if trace else None
    case_counts = {c: 0 for c in CASES}
    for i in order:
        rsg.begin_step()
        rsg.activate(i)
        label = _dispatch(rsg, i)
        case_counts[label] += 1
        if trace_list is not None:
            trace_list.append(TraceEntry(i, label, tuple(sorted(rsg.step_touched))))
        if validate:
            rsg.validate(deep=True)
    cover_size = rsg.neg_count()
    for comp in rsg.unfrozen_components():
        sol = rsg.min_component_assignment(comp)
        if sol is None:
            raise RsgInvariantError(f"component {comp} has no valid assignment")
        cover_size += sum(1 for v in sol.values() if v == -1)
    return MbeaResult(
        rsg=rsg, cover_size=cover_size, case_counts=case_counts, trace=trace_list
    )


def cover_from_rsg(res: MbeaResult) -> Assignment:
    """Materialise one minimum-level represented cover, deterministic with
    +1 preferred per unfrozen component. Always a valid vertex cover of g."""
    rsg = res.rsg
    g = rsg.graph
    spins = [1] * g.n
    for u in range(g.n):
        if rsg.active[u] and rsg.state[u] == NEG_FROZEN:
            spins[u] = -1
    for comp in rsg.unfrozen_components():
        sol = rsg.min_component_assignment(comp)
        if sol is None:
            raise RsgInvariantError(f"component {comp} has no valid assignment")
        for u, v in sol.items():
            spins[u] = v
    for u, v in g.edges:
        if rsg.active[u] and rsg.active[v] and spins[u] == 1 and spins[v] == 1:
            raise RsgInvariantError(f"extracted assignment leaves edge ({u},{v}) uncovered")
    cover = sum(1 for u in range(g.n) if rsg.active[u] and spins[u] == -1)
    return Assignment(spin=tuple(spins), cover_size=cover)
