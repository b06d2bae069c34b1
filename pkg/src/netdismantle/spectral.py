"""Node-weighted spectral bisection of one connected component.

Edge uv is weighted b_uv = w_u + w_v, the price paid if either endpoint
of a cut edge is deleted, and L = D - B is the Laplacian of those
weights.  Minimizing the weighted cut over balanced signs relaxes to the
eigenvector of the second-smallest eigenvalue of L.  That vector is
approximated matrix-free: with the Gershgorin shift c = 2 max_u d_u the
operator cI - L is positive semidefinite and its dominant eigenvector is
the constant vector, so subtracting the mean every step deflates it and
plain power iteration converges to the eigenvector we want.

A fixed iteration budget stands in for a convergence test on purpose:
runs are then deterministic functions of (graph, costs, seed, budget),
and the budget knob trades time for cut quality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .costs import CostVector
from .errors import ComponentTooSmallError, DegenerateSpectrumError, InvalidCostError
from .graph import Graph, NodeMask
from .rng import initial_vector, retry_seed

# norms below this are treated as a collapse to zero
_UNDERFLOW = 1e-200


class _UnderflowCollapse(Exception):
    pass


@dataclass(frozen=True)
class WeightedLaplacianOperator:
    """Matrix-free cI - L over one component, in local coordinates.

    nodes holds the sorted global ids; position i of any vector refers to
    nodes[i].  apply() costs one sparse matvec, O(edges in component).
    """

    nodes: np.ndarray
    b: sp.csr_matrix
    weighted_degree: np.ndarray
    shift: float
    scale: np.ndarray  # shift - weighted_degree, precomputed

    @property
    def size(self) -> int:
        return len(self.nodes)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.scale * x + self.b.dot(x)

    def laplacian_matvec(self, x: np.ndarray) -> np.ndarray:
        return self.weighted_degree * x - self.b.dot(x)


def build_operator(
    graph: Graph,
    mask: NodeMask,
    costs: CostVector,
    component: np.ndarray,
) -> WeightedLaplacianOperator:
    """Assemble the shifted weighted Laplacian of one masked component."""
    nodes = np.asarray(component, dtype=np.int64)
    nodes = np.sort(nodes)
    k = len(nodes)
    if k < 2:
        raise ComponentTooSmallError("component too small to bisect (need >= 2 nodes)")
    active = np.asarray(mask, dtype=bool)
    if not active[nodes].all():
        raise ValueError("component contains masked-out nodes")
    w = costs.w
    if (w[nodes] < 0).any():
        raise InvalidCostError("negative cost inside component")
    if not (w[nodes] > 0).any():
        raise InvalidCostError("component has all-zero costs, edge weights vanish")
    local = np.full(graph.n, -1, dtype=np.int64)
    local[nodes] = np.arange(k)
    e = graph.edges
    keep = (local[e[:, 0]] >= 0) & (local[e[:, 1]] >= 0)
    eu = local[e[keep, 0]]
    ev = local[e[keep, 1]]
    bvals = w[e[keep, 0]] + w[e[keep, 1]]
    b = sp.csr_matrix(
        (
            np.concatenate([bvals, bvals]),
            (np.concatenate([eu, ev]), np.concatenate([ev, eu])),
        ),
        shape=(k, k),
    )
    weighted_degree = np.asarray(b.sum(axis=1)).ravel()
    shift = 2.0 * float(weighted_degree.max())
    return WeightedLaplacianOperator(
        nodes=nodes,
        b=b,
        weighted_degree=weighted_degree,
        shift=shift,
        scale=shift - weighted_degree,
    )


def iteration_budget(n: int, multiplier: int = 1) -> int:
    """Power-iteration count for a component of n nodes.

    The base budget grows as 30 ln(n) sqrt(ln(n)), rounded up; multiplier
    scales it for higher-precision runs.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if multiplier < 1:
        raise ValueError("multiplier must be at least 1")
    ln = math.log(n)
    base = math.ceil(30.0 * ln * math.sqrt(ln))
    return max(1, multiplier * base)


@dataclass(frozen=True)
class SpectralVector:
    """Approximate second eigenvector, unit norm and zero mean."""

    values: np.ndarray
    nodes: np.ndarray
    seed: int
    iterations: int


def _power_iterate(op: WeightedLaplacianOperator, x: np.ndarray, iterations: int) -> np.ndarray:
    for _ in range(iterations):
        x = x - x.mean()
        norm = float(np.linalg.norm(x))
        if norm < _UNDERFLOW:
            raise _UnderflowCollapse
        x = op.apply(x)
        norm = float(np.linalg.norm(x))
        if norm < _UNDERFLOW:
            raise _UnderflowCollapse
        x = x / norm
    # one final deflation so the result is exactly zero mean, unit norm
    x = x - x.mean()
    norm = float(np.linalg.norm(x))
    if norm < _UNDERFLOW:
        raise _UnderflowCollapse
    return x / norm


def approx_fiedler(op: WeightedLaplacianOperator, seed: int, iterations: int) -> SpectralVector:
    """Power iteration with mean deflation from a seeded start vector.

    If the iterate collapses below machine range the run is retried once
    from a reseeded start; a second collapse means the shifted operator
    genuinely annihilates the zero-mean subspace and is an error.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    x0 = initial_vector(seed, op.size)
    try:
        values = _power_iterate(op, x0, iterations)
    except _UnderflowCollapse:
        x1 = initial_vector(retry_seed(seed), op.size)
        try:
            values = _power_iterate(op, x1, iterations)
        except _UnderflowCollapse:
            raise DegenerateSpectrumError(
                f"degenerate spectrum: power iteration collapsed twice on a "
                f"{op.size}-node component"
            ) from None
    return SpectralVector(values=values, nodes=op.nodes, seed=seed, iterations=iterations)


@dataclass(frozen=True)
class Partition:
    """Two-way split of one component; in_m[i] tells whether nodes[i] is
    in group M, the side slated to lose its cut endpoints."""

    nodes: np.ndarray
    in_m: np.ndarray

    @property
    def size_m(self) -> int:
        return int(self.in_m.sum())

    @property
    def size_mbar(self) -> int:
        return len(self.nodes) - self.size_m

    def group_m(self) -> np.ndarray:
        return self.nodes[self.in_m]

    def group_mbar(self) -> np.ndarray:
        return self.nodes[~self.in_m]


def sign_partition(vec: SpectralVector) -> Partition:
    """Split by eigenvector sign, with fallbacks that keep both sides
    nonempty: negative entries form M; if that is trivial, entries below
    the median form M; if still trivial, M is just the first node."""
    values = vec.values
    in_m = values < 0.0
    if in_m.any() and not in_m.all():
        return Partition(nodes=vec.nodes, in_m=in_m)
    median = float(np.median(values))
    in_m = values < median
    if in_m.any() and not in_m.all():
        return Partition(nodes=vec.nodes, in_m=in_m)
    in_m = np.zeros(len(values), dtype=bool)
    in_m[0] = True
    return Partition(nodes=vec.nodes, in_m=in_m)


def _adjacency_flat(graph: Graph, nodes: np.ndarray):
    """Flattened CSR rows for a sorted id subset: (row index per entry,
    neighbor per entry)."""
    starts = graph.indptr[nodes]
    counts = graph.indptr[nodes + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
    idx = np.repeat(starts - offsets, counts) + np.arange(total)
    flat_rows = np.repeat(np.arange(len(nodes)), counts)
    return flat_rows, graph.indices[idx]


def fine_tune_partition(
    graph: Graph,
    mask: NodeMask,
    component: np.ndarray,
    partition: Partition,
    flip_log: list[int] | None = None,
) -> Partition:
    """Greedy sign flips that strictly shrink the cut.

    A node moves to the other group when every one of its active
    neighbors sits in the other group (so it has at least one) and its
    own group would not be emptied.  Nodes are scanned in ascending id
    against the updated labels until a full scan flips nothing.  Each
    flip turns all of the node's cut edges into internal ones and creates
    none, so the cut shrinks monotonically and the loop terminates.

    flip_log, when given, receives the flipped node ids in flip order.
    """
    nodes = partition.nodes
    active = np.asarray(mask, dtype=bool)
    labels = np.full(graph.n, -1, dtype=np.int8)
    labels[nodes] = partition.in_m.astype(np.int8)
    size = [int(partition.size_mbar), int(partition.size_m)]  # size[lab]

    # a flip only ever gives neighbors a same-labeled partner, so nodes
    # with a same-labeled active neighbor now are out for good and the
    # candidate set can be computed once
    flat_rows, flat_nbrs = _adjacency_flat(graph, nodes)
    valid = active[flat_nbrs]
    same = valid & (labels[flat_nbrs] == labels[nodes][flat_rows])
    active_deg = np.bincount(flat_rows[valid], minlength=len(nodes))
    same_count = np.bincount(flat_rows[same], minlength=len(nodes))
    pending = [int(v) for v in nodes[(active_deg >= 1) & (same_count == 0)]]

    changed = True
    while changed and pending:
        changed = False
        still_pending: list[int] = []
        for v in pending:
            nbrs = graph.neighbors(v)
            nbrs = nbrs[active[nbrs]]
            lab = labels[v]
            if len(nbrs) and (labels[nbrs] != lab).all():
                if size[lab] > 1:
                    labels[v] = 1 - lab
                    size[lab] -= 1
                    size[1 - lab] += 1
                    changed = True
                    if flip_log is not None:
                        flip_log.append(v)
                else:
                    # group-size guard, may free up on a later scan
                    still_pending.append(v)
            # a same-labeled neighbor appeared: disqualified permanently
        pending = still_pending
    return Partition(nodes=nodes, in_m=labels[nodes] == 1)


def partition_debug_csv(vec: SpectralVector, partition: Partition) -> str:
    """CSV dump of one bisection: node_id,group,eigenvector_value."""
    if not np.array_equal(vec.nodes, partition.nodes):
        raise ValueError("vector and partition cover different nodes")
    lines = ["node_id,group,eigenvector_value"]
    for node, flag, value in zip(partition.nodes, partition.in_m, vec.values):
        group = "M" if flag else "Mbar"
        lines.append(f"{int(node)},{group},{format(float(value), '.17g')}")
    return "\n".join(lines) + "\n"
