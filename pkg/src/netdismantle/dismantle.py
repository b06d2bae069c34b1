"""Dismantling outer loop and greedy reinsertion.

One run repeatedly takes the current largest component, bisects it with
the node-weighted spectral partition, deletes a pruned 2-approximate
vertex cover of the cut, and stops once every component has at most C
nodes.  Reinsertion then walks the removed set and puts back any node
whose return keeps all components within C, cheapest damage first, which
repairs most of the overshoot the cover step pays for disconnecting
groups completely.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .costs import CostMode, CostVector
from .errors import InternalInvariantError
from .graph import Graph, components, full_mask
from .cover import cut_edges, prune_redundant, weighted_vertex_cover
from .rng import PRNG_NAME, mix_seed
from .spectral import (
    Partition,
    approx_fiedler,
    build_operator,
    fine_tune_partition,
    iteration_budget,
    sign_partition,
)


@dataclass(frozen=True)
class DismantlingTarget:
    """Stop once the largest component has at most c nodes."""

    c: int
    fraction: float | None = None

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("target component size must be at least 1")

    @classmethod
    def from_fraction(cls, n: int, fraction: float = 0.01) -> "DismantlingTarget":
        if not 0.0 < fraction <= 1.0:
            raise ValueError("fraction must be in (0, 1]")
        return cls(c=max(1, math.ceil(fraction * n)), fraction=fraction)

    @classmethod
    def absolute(cls, c: int) -> "DismantlingTarget":
        return cls(c=c, fraction=None)


@dataclass
class SolutionMetadata:
    seed: int
    iter_multiplier: int
    fine_tuning: bool
    reinserted: bool
    cost_mode: str
    target_c: int
    prng: str = PRNG_NAME
    initial_gcc: int = 0
    bisections: int = 0
    power_iterations: int = 0
    phase_seconds: dict = field(default_factory=dict)


@dataclass
class DismantlingSolution:
    """Outcome of one run.

    removal_order lists (node, cost, gcc_after) in deletion order, where
    gcc_after is the largest-component size once that node and all
    earlier ones are gone.  trajectory pairs cumulative cost with gcc
    size, starting from (0, initial gcc) before any removal.
    """

    removal_order: list[tuple[int, float, int]]
    removed: frozenset[int]
    total_cost: float
    trajectory: list[tuple[float, int]]
    metadata: SolutionMetadata

    @property
    def final_gcc(self) -> int:
        return self.trajectory[-1][1]


class _UnionFind:
    """Array union-find with path halving, sized for replay loops."""

    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)
        self.size = np.ones(n, dtype=np.int64)

    def find(self, v: int) -> int:
        parent = self.parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return int(v)

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return ra

    @classmethod
    def over_components(cls, graph: Graph, mask) -> tuple["_UnionFind", int]:
        """Seed a union-find with the masked graph's components as flat
        stars, skipping the per-edge union loop.  Returns (forest, gcc)."""
        uf = cls(graph.n)
        decomposition = components(graph, mask)
        act = np.asarray(mask, dtype=bool)
        uf.parent[act] = decomposition.component_id[act]
        for comp_id, size in decomposition.sizes.items():
            uf.size[comp_id] = size
        return uf, decomposition.gcc_size


def replay_gcc_sizes(graph: Graph, order: np.ndarray, base_mask=None) -> tuple[np.ndarray, int]:
    """Largest-component size after each removal prefix of order.

    Removing nodes one by one and recomputing components is quadratic, so
    the replay runs backward instead: start from everything removed,
    re-activate in reverse order, and union edges as they come back.
    Returns (gcc size after each prefix, gcc size before any removal).
    """
    base = full_mask(graph.n) if base_mask is None else np.asarray(base_mask, bool).copy()
    order = np.asarray(order, dtype=np.int64)
    mask = base.copy()
    mask[order] = False
    uf, current = _UnionFind.over_components(graph, mask)
    after = np.empty(len(order), dtype=np.int64)
    for i in range(len(order) - 1, -1, -1):
        after[i] = current
        v = int(order[i])
        mask[v] = True
        current = max(current, 1)
        for u in graph.neighbors(v):
            u = int(u)
            if mask[u]:
                root = uf.union(v, u)
                current = max(current, int(uf.size[root]))
    return after, current


def _build_solution(
    graph: Graph,
    costs: CostVector,
    order: np.ndarray,
    metadata: SolutionMetadata,
) -> DismantlingSolution:
    after, initial = replay_gcc_sizes(graph, order)
    if initial != metadata.initial_gcc:
        raise InternalInvariantError("replayed initial gcc disagrees with direct computation")
    node_costs = costs.w[order] if len(order) else np.empty(0)
    removal_order = [
        (int(v), float(c), int(g)) for v, c, g in zip(order, node_costs, after)
    ]
    trajectory = [(0.0, int(initial))]
    running = 0.0
    for v, c, g in removal_order:
        running += c
        trajectory.append((running, g))
    return DismantlingSolution(
        removal_order=removal_order,
        removed=frozenset(int(v) for v in order),
        total_cost=float(node_costs.sum()),
        trajectory=trajectory,
        metadata=metadata,
    )


def dismantle(
    graph: Graph,
    costs: CostVector,
    target: DismantlingTarget,
    seed: int = 0,
    iter_multiplier: int = 1,
    fine_tuning: bool = True,
) -> DismantlingSolution:
    """One full dismantling run, deterministic in all arguments.

    Bisection b of the run draws its start vector from a seed derived as
    mix_seed(seed, b), so runs differ only through the base seed.  A
    two-node component defeats the shifted power iteration (its zero-mean
    subspace is annihilated exactly), so it is split trivially instead.
    """
    costs.validate(graph)
    mask = full_mask(graph.n)
    metadata = SolutionMetadata(
        seed=seed,
        iter_multiplier=iter_multiplier,
        fine_tuning=fine_tuning,
        reinserted=False,
        cost_mode=costs.mode.value,
        target_c=target.c,
    )
    phase = {"components": 0.0, "spectral": 0.0, "cover": 0.0, "replay": 0.0}
    t0 = time.perf_counter()
    decomposition = components(graph, mask)
    phase["components"] += time.perf_counter() - t0
    metadata.initial_gcc = decomposition.gcc_size
    batches: list[np.ndarray] = []
    while decomposition.gcc_size > target.c:
        comp = decomposition.members(decomposition.gcc_id)
        t0 = time.perf_counter()
        if len(comp) == 2:
            partition = Partition(nodes=comp, in_m=np.array([True, False]))
        else:
            operator = build_operator(graph, mask, costs, comp)
            iterations = iteration_budget(len(comp), iter_multiplier)
            vector = approx_fiedler(operator, mix_seed(seed, metadata.bisections), iterations)
            metadata.power_iterations += iterations
            partition = sign_partition(vector)
            if fine_tuning:
                partition = fine_tune_partition(graph, mask, comp, partition)
        phase["spectral"] += time.perf_counter() - t0
        t0 = time.perf_counter()
        cut = cut_edges(graph, mask, partition)
        result = prune_redundant(weighted_vertex_cover(cut, costs), cut, costs)
        phase["cover"] += time.perf_counter() - t0
        if len(result.cover) == 0:
            raise InternalInvariantError(
                "empty cover while the largest component still exceeds the target"
            )
        mask[result.cover] = False
        batches.append(result.cover)
        metadata.bisections += 1
        t0 = time.perf_counter()
        decomposition = components(graph, mask)
        phase["components"] += time.perf_counter() - t0
    order = np.concatenate(batches) if batches else np.empty(0, dtype=np.int64)
    t0 = time.perf_counter()
    solution = _build_solution(graph, costs, order, metadata)
    phase["replay"] += time.perf_counter() - t0
    metadata.phase_seconds = phase
    if solution.final_gcc > target.c:
        raise InternalInvariantError("run ended above the target component size")
    return solution


def reinsert(
    graph: Graph,
    costs: CostVector,
    target: DismantlingTarget,
    solution: DismantlingSolution,
) -> DismantlingSolution:
    """Put back removed nodes that the final state does not need.

    A node is feasible when the component formed by its return (itself
    plus all distinct components around it) stays within the target.  The
    cheapest damage goes first: smallest merged size, ties broken toward
    the larger removal cost, then the smaller id.  Merging only ever
    grows the components around a waiting node, so each node's merged
    size can only grow; a lazy heap over stale sizes therefore finds the
    true minimum by re-evaluating only the popped candidate, and a node
    seen infeasible once is infeasible forever.
    """
    t0 = time.perf_counter()
    mask = full_mask(graph.n)
    removed = sorted(solution.removed)
    mask[removed] = False
    uf, _ = _UnionFind.over_components(graph, mask)
    w = costs.w

    def merged_size(v: int) -> int:
        roots = {uf.find(int(u)) for u in graph.neighbors(v) if mask[u]}
        return 1 + int(sum(uf.size[r] for r in roots))

    heap = []
    for v in removed:
        s = merged_size(v)
        if s <= target.c:
            heap.append((s, -float(w[v]), v))
    heapq.heapify(heap)
    still_removed = set(removed)
    while heap:
        s, neg_w, v = heapq.heappop(heap)
        s_now = merged_size(v)
        if s_now > target.c:
            continue
        if s_now > s:
            heapq.heappush(heap, (s_now, neg_w, v))
            continue
        mask[v] = True
        still_removed.discard(v)
        for u in graph.neighbors(v):
            if mask[u]:
                uf.union(v, int(u))
    reinsert_seconds = time.perf_counter() - t0

    order = np.array(
        [v for v, _, _ in solution.removal_order if v in still_removed], dtype=np.int64
    )
    metadata = SolutionMetadata(
        seed=solution.metadata.seed,
        iter_multiplier=solution.metadata.iter_multiplier,
        fine_tuning=solution.metadata.fine_tuning,
        reinserted=True,
        cost_mode=solution.metadata.cost_mode,
        target_c=solution.metadata.target_c,
        prng=solution.metadata.prng,
        initial_gcc=solution.metadata.initial_gcc,
        bisections=solution.metadata.bisections,
        power_iterations=solution.metadata.power_iterations,
        phase_seconds={**solution.metadata.phase_seconds, "reinsert": reinsert_seconds},
    )
    result = _build_solution(graph, costs, order, metadata)
    if result.total_cost > solution.total_cost + 1e-9:
        raise InternalInvariantError("reinsertion increased total cost")
    if result.final_gcc > target.c:
        raise InternalInvariantError("reinsertion broke the target constraint")
    return result


def cost_of(solution: DismantlingSolution, costs: CostVector, graph: Graph) -> int | float:
    """Reported cost of a solution: node count under unit costs, removed
    degree mass as a fraction of total degree mass under degree costs."""
    if costs.mode is CostMode.UNIT:
        return len(solution.removed)
    total = costs.total()
    if total == 0.0:
        return 0.0
    removed = np.fromiter(solution.removed, dtype=np.int64, count=len(solution.removed))
    return float(costs.w[removed].sum() / total) if len(removed) else 0.0
