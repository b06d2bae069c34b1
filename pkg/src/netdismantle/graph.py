"""Immutable undirected graphs, edge-list parsing, connected components.

A parsed graph never changes; dismantling state lives in a boolean node
mask next to it.  Components of the masked graph are computed on demand
and identified by their smallest member id, which keeps every downstream
tie-break deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _sp_components

from .errors import ParseError

# boolean vector over node ids; True means the node is still present
NodeMask = np.ndarray


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with 0-based contiguous node ids.

    edges holds each undirected edge once as (u, v) with u < v, sorted
    lexicographically.  indptr/indices form a CSR adjacency over both
    directions.  labels maps id back to the token the node had in the
    input file; graphs built directly from integer edges get string
    digits as labels.
    """

    n: int
    edges: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...]
    id_map: dict[str, int] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def stats(self) -> dict:
        deg = self.degree
        return {
            "n": int(self.n),
            "m": int(self.m),
            "degree_min": int(deg.min()) if self.n else 0,
            "degree_max": int(deg.max()) if self.n else 0,
        }

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        n: int | None = None,
        labels: Iterable[str] | None = None,
    ) -> "Graph":
        """Build from integer pairs; drops self-loops and duplicates."""
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if len(arr) and arr.min() < 0:
            raise ValueError("node ids must be nonnegative")
        if len(arr):
            lo = arr.min(axis=1)
            hi = arr.max(axis=1)
            keep = lo != hi
            arr = np.unique(np.stack([lo[keep], hi[keep]], axis=1), axis=0)
        n_seen = int(arr.max()) + 1 if len(arr) else 0
        if n is None:
            n = n_seen
        elif n < n_seen:
            raise ValueError(f"n={n} too small for edge ids up to {n_seen - 1}")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels length must equal n")
        src = np.concatenate([arr[:, 0], arr[:, 1]]) if len(arr) else np.empty(0, np.int64)
        dst = np.concatenate([arr[:, 1], arr[:, 0]]) if len(arr) else np.empty(0, np.int64)
        order = np.lexsort((dst, src))
        indices = dst[order]
        counts = np.bincount(src, minlength=n) if len(arr) else np.zeros(n, np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        id_map = {lab: i for i, lab in enumerate(labels)}
        return cls(n=n, edges=arr, indptr=indptr, indices=indices, labels=labels, id_map=id_map)


def full_mask(n: int) -> NodeMask:
    return np.ones(n, dtype=bool)


def parse_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse whitespace-separated edge pairs into a Graph.

    Lines starting with '%' or '#' are comments.  Tokens may be arbitrary
    strings; they are assigned 0-based ids in order of first appearance.
    Self-loops and repeated edges are dropped silently.  A line with fewer
    than two tokens, or an input with no surviving edges, is an error.
    Extra tokens after the first two (weights, timestamps) are ignored.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    id_map: dict[str, int] = {}
    labels: list[str] = []
    edge_set: set[tuple[int, int]] = set()

    def intern(token: str) -> int:
        i = id_map.get(token)
        if i is None:
            i = len(labels)
            id_map[token] = i
            labels.append(token)
        return i

    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("%") or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError("expected at least two tokens", line_number=line_number)
        u = intern(tokens[0])
        v = intern(tokens[1])
        if u == v:
            continue
        edge_set.add((u, v) if u < v else (v, u))
    if not edge_set:
        raise ParseError("no edges in input")
    edges = np.array(sorted(edge_set), dtype=np.int64)
    return Graph.from_edges(edges, n=len(labels), labels=labels)


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components of the masked graph.

    component_id[v] is the smallest node id inside v's component, or -1
    for masked-out nodes.  sizes maps component id to member count.
    gcc_id is the id of the largest component, ties broken by smaller id;
    it is -1 (with gcc_size 0) when no node is active.
    """

    component_id: np.ndarray
    sizes: dict[int, int]
    gcc_id: int
    gcc_size: int

    @property
    def count(self) -> int:
        return len(self.sizes)

    def members(self, comp_id: int) -> np.ndarray:
        return np.flatnonzero(self.component_id == comp_id)


def components(graph: Graph, mask: NodeMask) -> ComponentDecomposition:
    """Decompose the masked graph into connected components."""
    active = np.asarray(mask, dtype=bool)
    if active.shape != (graph.n,):
        raise ValueError("mask length must equal graph.n")
    act_idx = np.flatnonzero(active)
    if len(act_idx) == 0:
        return ComponentDecomposition(
            component_id=np.full(graph.n, -1, dtype=np.int64),
            sizes={},
            gcc_id=-1,
            gcc_size=0,
        )
    e = graph.edges
    if len(e):
        keep = active[e[:, 0]] & active[e[:, 1]]
        ek = e[keep]
    else:
        ek = e
    if len(ek):
        data = np.ones(2 * len(ek), dtype=np.int8)
        rows = np.concatenate([ek[:, 0], ek[:, 1]])
        cols = np.concatenate([ek[:, 1], ek[:, 0]])
        adj = sp.csr_matrix((data, (rows, cols)), shape=(graph.n, graph.n))
        _, raw = _sp_components(adj, directed=False)
    else:
        raw = np.arange(graph.n)
    raw_act = raw[act_idx]
    # act_idx ascends, so the first occurrence of each raw label is its
    # smallest member, which becomes the canonical component id
    uniq, first, inverse, counts = np.unique(
        raw_act, return_index=True, return_inverse=True, return_counts=True
    )
    canon = act_idx[first]
    component_id = np.full(graph.n, -1, dtype=np.int64)
    component_id[act_idx] = canon[inverse]
    sizes = {int(c): int(s) for c, s in zip(canon, counts)}
    top = counts.max()
    gcc_id = int(canon[counts == top].min())
    return ComponentDecomposition(
        component_id=component_id,
        sizes=sizes,
        gcc_id=gcc_id,
        gcc_size=int(top),
    )


def gcc_size(graph: Graph, mask: NodeMask) -> int:
    """Size of the largest connected component of the masked graph."""
    return components(graph, mask).gcc_size
