#!/usr/bin/env python3
"""Regenerate the DIMACS clique benchmark instances under benchmarks/.

These four families have exact combinatorial definitions, so the instances
can be rebuilt from scratch (vertex numbering may differ from other copies
in circulation, but the graphs are isomorphic and clique sizes match):

* johnson{n}-{w}-{d}: vertices are the weight-w binary vectors of length n,
  adjacent when their Hamming distance is at least d.
* hamming{n}-{d}: vertices are all binary vectors of length n, adjacent when
  their Hamming distance is at least d.
* MANN_a9: the clique form of the order-9 Steiner triple covering problem.
  Take the 12 lines of AG(2,3).  Vertices are the 36 (line, point) incidence
  pairs plus the 9 points; two vertices conflict when they are incidence
  pairs of the same line or an incidence pair and its own point.  The graph
  is the complement of that conflict graph: 45 vertices, 918 edges, and a
  maximum clique of 12 + 9 - (minimum cover = 5) = 16.
"""

from __future__ import annotations

import sys
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from satkit.clique import Graph, write_dimacs_graph  # noqa: E402


def johnson(n: int, w: int, d: int) -> Graph:
    verts = list(combinations(range(n), w))
    edges = set()
    for a, b in combinations(range(len(verts)), 2):
        dist = len(set(verts[a]) ^ set(verts[b]))
        if dist >= d:
            edges.add((a + 1, b + 1))
    return Graph(len(verts), frozenset(edges))


def hamming(n: int, d: int) -> Graph:
    size = 1 << n
    edges = set()
    for a in range(size):
        for b in range(a + 1, size):
            if bin(a ^ b).count("1") >= d:
                edges.add((a + 1, b + 1))
    return Graph(size, frozenset(edges))


def mann_a9() -> Graph:
    # lines of AG(2,3): points are (r, c) in Z3 x Z3, numbered 3r + c
    points = [(r, c) for r in range(3) for c in range(3)]
    lines = []
    for trio in combinations(range(9), 3):
        (r1, c1), (r2, c2), (r3, c3) = (points[i] for i in trio)
        if (r1 + r2 + r3) % 3 == 0 and (c1 + c2 + c3) % 3 == 0:
            # collinear in AG(2,3) iff coordinate sums vanish mod 3
            lines.append(trio)
    assert len(lines) == 12

    incidence = [(li, p) for li, line in enumerate(lines) for p in line]
    vertices = incidence + [("pt", p) for p in range(9)]
    index = {v: i + 1 for i, v in enumerate(vertices)}

    conflicts = set()
    for li, line in enumerate(lines):
        for p, q in combinations(line, 2):
            conflicts.add(frozenset((index[(li, p)], index[(li, q)])))
        for p in line:
            conflicts.add(frozenset((index[(li, p)], index[("pt", p)])))

    n = len(vertices)
    edges = set()
    for a, b in combinations(range(1, n + 1), 2):
        if frozenset((a, b)) not in conflicts:
            edges.add((a, b))
    return Graph(n, frozenset(edges))


def main() -> None:
    out_dir = Path(__file__).resolve().parents[1] / "benchmarks"
    out_dir.mkdir(exist_ok=True)
    instances = {
        "johnson8-2-4": johnson(8, 2, 4),
        "johnson8-4-4": johnson(8, 4, 4),
        "hamming6-4": hamming(6, 4),
        "MANN_a9": mann_a9(),
    }
    for name, g in instances.items():
        path = out_dir / f"{name}.clq"
        path.write_text(write_dimacs_graph(g))
        print(f"{name}: {g.n} vertices, {g.num_edges} edges -> {path}")


if __name__ == "__main__":
    main()
