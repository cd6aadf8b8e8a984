"""
Exact solvers and structural validators used by tests and acceptance runs.
"""
from collections import Counter
from itertools import permutations
from typing import List, Sequence, Tuple

import networkx as nx
import numpy as np

from config import BRUTE_FORCE_MAX_N, HELD_KARP_MAX_N
from es_crossover import IntermediateSolution, MergedGraph, MRing
from tour import Tour, edge_key
from tsp_instance import Instance, NeighborLists


def brute_force_optimum(inst: Instance) -> Tuple[int, Tour]:
    """
    Exact optimum by enumerating the (n-1)!/2 distinct tours.

    Args:
        inst: Instance with n <= BRUTE_FORCE_MAX_N

    Returns:
        Tuple[int, Tour]: Optimal length and one optimal tour
    """
    if inst.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force supports n <= {BRUTE_FORCE_MAX_N}, got {inst.n}")
    w = inst.weight
    best_len, best_order = None, None
    for perm in permutations(range(1, inst.n)):
        if perm[0] > perm[-1]:
            continue
        order = (0,) + perm
        length = sum(w(order[i - 1], order[i]) for i in range(inst.n))
        if best_len is None or length < best_len:
            best_len, best_order = length, order
    return best_len, Tour(best_order)


def held_karp(inst: Instance) -> int:
    """
    Exact optimal length by dynamic programming over subsets.

    City 0 is the fixed start; dp[mask, j] is the shortest path from city 0
    through the cities in `mask` ending at city j + 1. Subsets are filled in
    order of size, vectorised over all masks of one size.

    Args:
        inst: Instance with n <= HELD_KARP_MAX_N

    Returns:
        int: Optimal tour length
    """
    if inst.n > HELD_KARP_MAX_N:
        raise ValueError(f"Held-Karp supports n <= {HELD_KARP_MAX_N}, got {inst.n}")
    full = np.array([inst.weight_row(i) for i in range(inst.n)], dtype=np.int64)
    m = inst.n - 1
    d = full[1:, 1:]
    inf = np.int64(1) << 40

    dp = np.full((1 << m, m), inf, dtype=np.int64)
    for j in range(m):
        dp[1 << j, j] = full[0, j + 1]

    masks = np.arange(1 << m)
    popcount = np.zeros(1 << m, dtype=np.int64)
    for j in range(m):
        popcount += (masks >> j) & 1

    for size in range(2, m + 1):
        layer = masks[popcount == size]
        for j in range(m):
            sel = layer[((layer >> j) & 1) == 1]
            prev = sel ^ (1 << j)
            dp[sel, j] = (dp[prev, :] + d[:, j]).min(axis=1)

    return int((dp[(1 << m) - 1, :] + full[1:, 0]).min())


def check_partition(g: MergedGraph, rings: Sequence[MRing]) -> Tuple[bool, str]:
    """
    Verify that rings are closed alternating walks covering M_AB's labelled edges exactly.

    Args:
        g: The merged graph
        rings: Claimed partition

    Returns:
        Tuple[bool, str]: (True, "ok") or (False, first violation found)
    """
    for idx, ring in enumerate(rings):
        edges = ring.edges
        if len(edges) < 2 or len(edges) % 2:
            return False, f"ring {idx}: odd or too few edges ({len(edges)})"
        for k, (u, v, label) in enumerate(edges):
            nu, _, nlabel = edges[(k + 1) % len(edges)]
            if v != nu:
                return False, f"ring {idx}: edge {k} ends at {v} but edge {k + 1} starts at {nu}"
            if label == nlabel:
                return False, f"ring {idx}: alternation broken at edge {k} ({label.value}, {nlabel.value})"

    covered = Counter((edge_key(u, v), label) for ring in rings for u, v, label in ring.edges)
    expected = g.edge_multiset()
    missing = expected - covered
    if missing:
        (edge, label), _ = next(iter(missing.items()))
        return False, f"coverage: {label.value}-edge {edge} not in any ring"
    extra = covered - expected
    if extra:
        (edge, label), _ = next(iter(extra.items()))
        return False, f"coverage: {label.value}-edge {edge} used more often than it exists"
    return True, "ok"


def check_intermediate(im: IntermediateSolution, n: int) -> Tuple[bool, str]:
    """
    Verify degree 2 everywhere and that the loops partition the cities into the
    connected components of E_C.

    Args:
        im: Intermediate solution
        n: City count

    Returns:
        Tuple[bool, str]: (True, "ok") or (False, first violation found)
    """
    if len(im.adj) != n:
        return False, f"adjacency covers {len(im.adj)} cities, expected {n}"
    for city, nbrs in enumerate(im.adj):
        if len(nbrs) != 2 or nbrs[0] == nbrs[1]:
            return False, f"city {city} has neighbours {nbrs}, expected two distinct"

    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(im.edges)
    if graph.number_of_edges() != n:
        return False, f"E_C has {graph.number_of_edges()} edges, expected {n}"
    components = sorted(sorted(c) for c in nx.connected_components(graph))
    loops = sorted(sorted(loop) for loop in im.loops)
    if components != loops:
        return False, f"loops {len(loops)} do not match {len(components)} connected components"
    return True, "ok"


def is_hamiltonian_cycle(t: Tour, n: int) -> bool:
    """True if the tour's edges form one cycle through all n cities."""
    graph = nx.Graph(list(t.edges))
    return (graph.number_of_nodes() == n and graph.number_of_edges() == n
            and all(deg == 2 for _, deg in graph.degree()) and nx.is_connected(graph))


def improving_two_opt_moves(inst: Instance, nbrs: NeighborLists, t: Tour) -> List[Tuple[int, int, int, int]]:
    """
    Every candidate-list 2-opt move with positive gain, in both tour orientations.

    Args:
        inst: The instance
        nbrs: Candidate lists
        t: Tour to inspect

    Returns:
        List of (a, b, c, d): removing (a,b),(c,d) and adding (a,c),(b,d) shortens t
    """
    w = inst.weight
    moves = []
    for a in range(inst.n):
        for step in (t.succ, t.pred):
            b = step(a)
            for c in nbrs[a]:
                d = step(c)
                if c == b or d == a:
                    continue
                if w(a, b) + w(c, d) - w(a, c) - w(b, d) > 0:
                    moves.append((a, b, c, d))
    return moves


def optimal_length(inst: Instance) -> int:
    """Best available exact length: brute force for tiny n, Held-Karp otherwise."""
    if inst.n <= 8:
        return brute_force_optimum(inst)[0]
    return held_karp(inst)
