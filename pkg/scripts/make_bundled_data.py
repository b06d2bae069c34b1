#!/usr/bin/env python3
"""Regenerate the bundled datasets under data/.

Three small classics come from networkx's embedded data (no download
involved); the synthetic graphs come from the seeded generators below,
which depend only on numpy so regeneration is stable across library
versions.  Committed outputs are the source of truth; rerun this only to
rebuild them from scratch.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def er_edges(seed: int, n: int, p: float) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return list(zip(iu[keep].tolist(), ju[keep].tolist()))


def ba_edges(seed: int, n: int, m: int) -> list[tuple[int, int]]:
    """Preferential attachment: each new node attaches to m distinct
    targets drawn proportionally to current degree."""
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    # start from a star on the first m+1 nodes
    repeated: list[int] = []
    for v in range(1, m + 1):
        edges.append((0, v))
        repeated += [0, v]
    for v in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(int(repeated[rng.integers(len(repeated))]))
        for t in sorted(targets):
            edges.append((t, v))
            repeated += [t, v]
    return edges


def sbm_edges(seed: int, sizes: tuple[int, int], p_in: float, p_out: float) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    n = sum(sizes)
    block = np.array([0] * sizes[0] + [1] * sizes[1])
    iu, ju = np.triu_indices(n, k=1)
    prob = np.where(block[iu] == block[ju], p_in, p_out)
    keep = rng.random(len(iu)) < prob
    return list(zip(iu[keep].tolist(), ju[keep].tolist()))


def write_edge_list(name: str, description: str, lines: list[str]) -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    path = DATA_DIR / name
    header = [f"% {description}"]
    path.write_text("\n".join(header + lines) + "\n")
    print(f"wrote {path} ({len(lines)} edges)")


def int_lines(edges: list[tuple[int, int]]) -> list[str]:
    return [f"{u} {v}" for u, v in sorted(set((min(u, v), max(u, v)) for u, v in edges))]


def main() -> int:
    import networkx as nx

    karate = nx.karate_club_graph()
    write_edge_list(
        "karate.txt",
        "Zachary karate club, 34 nodes / 78 edges (networkx embedded data)",
        int_lines(list(karate.edges())),
    )

    lesmis = nx.les_miserables_graph()
    lines = sorted(f"{min(u, v)} {max(u, v)}" for u, v in lesmis.edges())
    write_edge_list(
        "lesmis.txt",
        "Les Miserables character co-appearance, 77 nodes / 254 edges (networkx embedded data)",
        lines,
    )

    florentine = nx.florentine_families_graph()
    lines = sorted(f"{min(u, v)} {max(u, v)}" for u, v in florentine.edges())
    write_edge_list(
        "florentine.txt",
        "Florentine families marriage network, 15 nodes / 20 edges (networkx embedded data)",
        lines,
    )

    write_edge_list(
        "er_300.txt",
        "Erdos-Renyi G(300, 0.02), numpy PCG64 seed 1303",
        int_lines(er_edges(1303, 300, 0.02)),
    )

    write_edge_list(
        "ba_300.txt",
        "preferential attachment, 300 nodes, 3 links per new node, numpy PCG64 seed 1302",
        int_lines(ba_edges(1302, 300, 3)),
    )

    write_edge_list(
        "sbm_600.txt",
        "two planted blocks of 300, p_in 0.025 / p_out 0.002, numpy PCG64 seed 1301",
        int_lines(sbm_edges(1301, (300, 300), 0.025, 0.002)),
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
