#!/usr/bin/env python3
"""Write every connected simple graph on 1..N vertices (up to isomorphism) as graph6.

Graphs on up to 7 vertices come from the networkx atlas. Larger orders are
built by attaching a new vertex to every nonempty subset of each connected
graph one size smaller (every connected graph has a non-cut vertex), then
deduplicated with WL-hash buckets and exact isomorphism tests.
"""
import argparse
import itertools

import networkx as nx

EXPECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def atlas_connected(n):
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


def grow(graphs, n):
    buckets = {}
    found = []
    for g in graphs:
        for size in range(1, n):
            for subset in itertools.combinations(range(n - 1), size):
                h = nx.Graph(g)
                h.add_node(n - 1)
                h.add_edges_from((n - 1, v) for v in subset)
                key = (h.number_of_edges(), tuple(sorted(d for _, d in h.degree())),
                       nx.weisfeiler_lehman_graph_hash(h, iterations=3))
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(h, other) for other in bucket):
                    continue
                bucket.append(h)
                found.append(h)
    return found


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-order", type=int, default=8)
    parser.add_argument("out")
    args = parser.parse_args()

    levels = {}
    for n in range(1, min(args.max_order, 7) + 1):
        levels[n] = [nx.convert_node_labels_to_integers(g) for g in atlas_connected(n)]
    for n in range(8, args.max_order + 1):
        levels[n] = grow(levels[n - 1], n)

    with open(args.out, "w") as out:
        for n in sorted(levels):
            if n in EXPECTED and len(levels[n]) != EXPECTED[n]:
                raise SystemExit(f"order {n}: {len(levels[n])} graphs, expected {EXPECTED[n]}")
            for g in levels[n]:
                out.write(nx.to_graph6_bytes(g, header=False).decode())
    print({n: len(gs) for n, gs in levels.items()})


if __name__ == "__main__":
    main()
