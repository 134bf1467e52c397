#!/usr/bin/env python3
"""Classify well-known subcubic graphs into the 19 instance subspaces and
show each subspace's anchoring root configuration."""

from vcgen.configs import format_config
from vcgen.graphs import Graph, complete_graph, cycle_graph, petersen_graph
from vcgen.subspaces import classify, root_config, subspace_name

print("=== classification of named graphs")
heawood = Graph(range(14), [(i, (i + 1) % 14) for i in range(14)]
                + [(0, 5), (2, 7), (4, 9), (6, 11), (8, 13), (10, 1), (12, 3)])
examples = [
    ("K4", complete_graph(4)),
    ("C5", cycle_graph(5)),
    ("C8", cycle_graph(8)),
    ("Petersen", petersen_graph()),
    ("Heawood", heawood),
    ("3-cube", Graph(range(8), [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6),
                                (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)])),
]
for name, g in examples:
    print(f"{name:>10}: {subspace_name(classify(g))}")

print("\n=== root configurations (structure + incomplete-edge counts)")
for sid in (2, 3, 7, 9, 16, 19):
    print(f"--- {subspace_name(sid)}")
    print(format_config(root_config(sid)))
