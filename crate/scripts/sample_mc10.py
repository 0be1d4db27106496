"""Write a seeded random sample of matching covered graphs on 10 vertices
in graph6 format, one per isomorphism class.

    python3 scripts/sample_mc10.py > crates/core/tests/data/mc10_sample.g6
"""
import argparse
import random
import sys

import networkx as nx


def has_perfect_matching(g):
    m = nx.max_weight_matching(g, maxcardinality=True)
    return 2 * len(m) == g.number_of_nodes()


def matching_covered(g):
    if not nx.is_connected(g) or not has_perfect_matching(g):
        return False
    for u, v in g.edges():
        h = g.copy()
        h.remove_nodes_from([u, v])
        if not has_perfect_matching(h):
            return False
    return True


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--order", type=int, default=10)
    ap.add_argument("--min-edges", type=int, default=11)
    ap.add_argument("--max-edges", type=int, default=22)
    ap.add_argument("--seed", type=int, default=20240521)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    buckets = {}
    out = []
    while len(out) < args.count:
        m = rng.randint(args.min_edges, args.max_edges)
        g = nx.gnm_random_graph(args.order, m, seed=rng.randrange(2**32))
        if not matching_covered(g):
            continue
        key = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
        same = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(g, h) for h in same):
            continue
        same.append(g)
        out.append(g)
    for g in out:
        sys.stdout.write(nx.to_graph6_bytes(g, header=False).decode())


if __name__ == "__main__":
    main()
